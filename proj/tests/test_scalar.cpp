#include <cmath>
#include <random>
#include <vector>

#include "cantordiff/errors.hpp"
#include "cantordiff/scalar.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

Scalar golden_g() { return parse_field_generator("g^2=g+1"); }

Rational rand_q(std::mt19937_64& rng, int span, int den_max) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("golden powers reduce as in the hand table") {
  Scalar g = golden_g();
  auto f = g.field();
  CHECK(g * g * g == Scalar(1, 2, f));          // g^3 = 2g+1
  CHECK(g * (g * g) == Scalar(1, 2, f));
  CHECK(g.pow(6) == Scalar(5, 8, f));           // g^6 = 8g+5
  CHECK((Scalar(1) / (g * g)) == Scalar(2, -1, f));  // 1/g^2 = 2-g
  CHECK(g.pow(-3) == Scalar(-3, 2, f));
  CHECK(g.pow(-4) == Scalar(5, -3, f));
  CHECK(g.pow(-6) == Scalar(13, -8, f));
  Scalar x = Scalar(Rational(3, 7), Rational(-2, 5), f);
  CHECK(x * Scalar(1) == x);
}

TEST_CASE("powers of the golden generator follow Fibonacci") {
  Scalar g = golden_g();
  mpz_class fprev = 0, fcur = 1;  // F0, F1
  for (int n = 1; n <= 30; ++n) {
    CHECK(g.pow(n) == Scalar(Rational(fprev), Rational(fcur), g.field()));
    mpz_class next = fprev + fcur;
    fprev = fcur;
    fcur = next;
  }
}

TEST_CASE("exact comparisons") {
  Scalar g = golden_g();
  CHECK(8 * g + 8 > 8 * g + 6);
  CHECK(2 * g - 3 > 0);
  CHECK(3 * g - 4 < 1);
  // 3/2 < g < 5/3 from g^2 = g + 1 evaluated at the rationals.
  CHECK(Rational(9, 4) < Rational(3, 2) + 1);
  CHECK(Rational(25, 9) > Rational(5, 3) + 1);
  CHECK(g > Scalar(Rational(3, 2)));
  CHECK(g < Scalar(Rational(5, 3)));
  CHECK((g - g).sign() == 0);
  CHECK(compare(Scalar(1), g) == std::strong_ordering::less);
}

TEST_CASE("sign agrees with a high-precision float oracle") {
  Scalar g = golden_g();
  std::mt19937_64 rng(7);
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    Rational u = rand_q(rng, 200, 50), v = rand_q(rng, 200, 50);
    Scalar x = Scalar(u, v, g.field());
    long double approx = u.get_d() + v.get_d() * phi;
    Enclosure e = x.enclose(200);
    if (!e.contains_zero()) {
      CHECK((x.sign() > 0) == e.certainly_positive());
    }
    if (std::fabs(approx) > 1e-9L) {
      CHECK(x.sign() == (approx > 0 ? 1 : -1));
      ++checked;
    }
  }
  CHECK(checked > 1900);
  // Near-cancellation: Fibonacci convergents of g.
  for (int n = 5; n < 40; ++n) {
    Scalar p = g.pow(n);
    Scalar near = p - g.pow(n).u() - g.pow(n).v() * g;
    CHECK(near.is_zero());
    Scalar conj = g.pow(-n);  // tiny: (-1)^n (F_{n+1} - F_n g)
    CHECK(conj.sign() == 1);
  }
}

TEST_CASE("field axioms on random inputs") {
  Scalar g = golden_g();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Scalar x(rand_q(rng, 30, 9), rand_q(rng, 30, 9), g.field());
    Scalar y(rand_q(rng, 30, 9), rand_q(rng, 30, 9), g.field());
    Scalar z(rand_q(rng, 30, 9), rand_q(rng, 30, 9), g.field());
    CHECK((x * y) * z == x * (y * z));
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    if (!x.is_zero()) CHECK(x * x.inverse() == Scalar(1));
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("other quadratic fields") {
  Scalar s = parse_field_generator("g^2=2");  // sqrt 2
  CHECK(s * s == Scalar(2));
  CHECK(s > Scalar(Rational(141, 100)));
  CHECK(s < Scalar(Rational(142, 100)));
  Scalar t = parse_field_generator("g^2 = 3g - 1");  // (3+sqrt5)/2 = g_golden^2
  CHECK(t * t == 3 * t - 1);
  CHECK(std::fabs(t.to_double() - 2.618033988749895) < 1e-12);
  Scalar q = parse_field_generator("g^2=4g");
  CHECK(q.is_rational());
  CHECK(q == Scalar(4));
  CHECK_THROWS_AS(parse_field_generator("g^2=-1"), ParseError);
  CHECK_THROWS_AS(parse_field_generator("g^2=g*g"), ParseError);
  CHECK_THROWS_AS(parse_field_generator("g^2=1/4"), ParseError);  // rational root 1/2 < 1
  CHECK_THROWS_AS(s * golden_g(), MixedFieldError);
}

TEST_CASE("common denominators") {
  Scalar g = golden_g();
  std::vector<Scalar> a{Scalar(Rational(1, 2)), Scalar(Rational(3, 4))};
  CHECK(common_denominator(a) == 4);
  std::vector<Scalar> b{-(8 * g + 8) / g.pow(6), -(8 * g + 6) / g.pow(6)};
  // 1/g^6 = 13 - 8g, so both offsets already lie in Z[g].
  CHECK(g.pow(-6) == 13 - 8 * g);
  CHECK(common_denominator(b) == 1);
  std::vector<Scalar> c{g};
  CHECK(common_denominator(c) == 1);
  std::vector<Scalar> d{g / 3, Scalar(Rational(1, 2))};
  CHECK(common_denominator(d) == 6);
}

TEST_CASE("float enclosures") {
  Scalar g = golden_g();
  Enclosure e = to_float(g, 100);
  CHECK(std::fabs(e.midpoint() - 1.6180339887498949) < 1e-15);
  CHECK(e.contains(Rational(161803398874989, 100000000000000)) == false);
  CHECK(e.lower() <= 1.6180339887498950);
  CHECK(e.upper() >= 1.6180339887498947);
  CHECK(e.width() <= std::ldexp(1.0, -99) * 1.62);
  Enclosure z = to_float(Scalar(0), 64);
  CHECK(z.lower() == 0.0);
  CHECK(z.upper() == 0.0);
  Enclosure two_over_g = to_float(2 / g, 80);
  CHECK(std::fabs(two_over_g.midpoint() - 1.2360679774997898) < 1e-15);
  CHECK(2 / g == 2 * g - 2);
  // Heavy cancellation still meets the relative width bound.
  Scalar tiny = g.pow(-30);
  Enclosure et = to_float(tiny, 64);
  CHECK(et.certainly_positive());
  CHECK(et.width() <= std::ldexp(1.0, -63) * et.upper());
}

TEST_CASE("text round trip") {
  Scalar g = golden_g();
  CHECK(parse_scalar("3/7") == Scalar(Rational(3, 7)));
  CHECK(parse_scalar("2+3g", g) == 2 + 3 * g);
  CHECK(parse_scalar("2-2g+2g", g) == Scalar(2));
  CHECK(parse_scalar("2/g", g) == 2 * g - 2);
  CHECK(parse_scalar("g^-6", g) == 13 - 8 * g);
  CHECK(parse_scalar("-(8g+8)/g^6", g) == -(8 * g + 8) * (13 - 8 * g));
  CHECK(parse_scalar("0.7") == Scalar(Rational(7, 10)));
  CHECK(parse_scalar("-1.25") == Scalar(Rational(-5, 4)));
  CHECK(parse_scalar("2(1+g)", g) == 2 + 2 * g);
  CHECK(parse_scalar("-g^2", g) == -1 - g);
  CHECK((-4 + 3 * g).to_string() == "-4+3*g");
  CHECK((Scalar(Rational(1, 2)) - Scalar(Rational(3, 4)) * g).to_string() == "1/2-3/4*g");
  CHECK(Scalar(Rational(2, 3)).to_string() == "2/3");
  CHECK(g.to_string() == "g");
  CHECK((-g).to_string() == "-g");
  CHECK((1 - g).to_string() == "1-g");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Scalar x(rand_q(rng, 1000, 97), rand_q(rng, 1000, 97), g.field());
    CHECK(parse_scalar(x.to_string(), g) == x);
  }
  CHECK_THROWS_AS(parse_scalar("g"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("2^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse_scalar("3 +"), ParseError);
  CHECK_THROWS_AS(parse_scalar("pi"), ParseError);
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
}

TEST_CASE("division by zero and mixed fields") {
  Scalar g = golden_g();
  CHECK_THROWS_AS(g / Scalar(0), DivisionByZero);
  CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
  CHECK(field_to_string(g.field()) == "g^2=g+1");
  CHECK(field_arith(g, g, ArithOp::mul) == g + 1);
  CHECK(field_arith(g, g, ArithOp::sub).is_zero());
}
