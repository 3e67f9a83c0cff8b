#include "cantordiff/scalar.hpp"

#include <cctype>
#include <functional>

#include "cantordiff/errors.hpp"

namespace cantordiff {

// ---------------------------------------------------------------- fields

bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

namespace {

Rational rational_sqrt(const Rational& q) {
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

Field make_field(const Rational& a, const Rational& b) {
  Rational disc = a * a + 4 * b;
  if (disc <= 0) throw PreconditionError("field discriminant must be positive");
  if (is_rational_square(disc)) {
    throw PreconditionError("field discriminant is a rational square; the generator is rational");
  }
  // Larger root (a + sqrt(disc))/2 > 1  <=>  sqrt(disc) > 2 - a.
  Rational t = 2 - a;
  bool above_one = t < 0 || disc > t * t;
  if (!above_one) throw PreconditionError("field generator must exceed 1");
  return std::make_shared<const FieldSpec>(FieldSpec{a, b});
}

bool same_field(const Field& x, const Field& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  return x->a == y->a && x->b == y->b;
}

namespace {

std::string coeff_text(const Rational& q) { return q.get_str(); }

}  // namespace

std::string field_to_string(const Field& f) {
  if (!f) return "";
  std::string s = "g^2=";
  bool any = false;
  if (f->a != 0) {
    if (f->a == 1) {
      s += "g";
    } else if (f->a == -1) {
      s += "-g";
    } else {
      s += coeff_text(f->a) + "*g";
    }
    any = true;
  }
  if (f->b != 0 || !any) {
    if (any && f->b > 0) s += "+";
    s += coeff_text(f->b);
  }
  return s;
}

Field common_field(const Scalar& x, const Scalar& y) {
  const Field& fx = x.field();
  const Field& fy = y.field();
  if (!fx) return fy;
  if (!fy) return fx;
  if (!same_field(fx, fy)) throw MixedFieldError("scalars from different fields");
  return fx;
}

// ---------------------------------------------------------------- scalar

Scalar::Scalar(Rational u, Rational v, Field field)
    : u_(std::move(u)), v_(std::move(v)), field_(std::move(field)) {
  u_.canonicalize();
  v_.canonicalize();
  if (!field_ && v_ != 0) throw PreconditionError("gamma-part without a field");
}

Scalar Scalar::generator(const Field& field) {
  if (!field) throw PreconditionError("generator of a null field");
  return Scalar(0, 1, field);
}

const Rational& Scalar::rational() const {
  if (v_ != 0) throw PreconditionError("scalar " + to_string() + " is not rational");
  return u_;
}

Scalar Scalar::in_field(const Field& f) const {
  if (field_ && f && !same_field(field_, f)) throw MixedFieldError("scalars from different fields");
  return Scalar(u_, v_, f ? f : field_);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  return Scalar(x.u_ + y.u_, x.v_ + y.v_, common_field(x, y));
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  return Scalar(x.u_ - y.u_, x.v_ - y.v_, common_field(x, y));
}

Scalar operator-(const Scalar& x) { return Scalar(-x.u_, -x.v_, x.field_); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  Field f = common_field(x, y);
  if (x.v_ == 0) return Scalar(x.u_ * y.u_, x.u_ * y.v_, f);
  if (y.v_ == 0) return Scalar(x.u_ * y.u_, x.v_ * y.u_, f);
  Rational vv = x.v_ * y.v_;
  return Scalar(x.u_ * y.u_ + f->b * vv, x.u_ * y.v_ + x.v_ * y.u_ + f->a * vv, f);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) throw DivisionByZero("division by zero");
  common_field(x, y);
  if (y.v_ == 0) return Scalar(x.u_ / y.u_, x.v_ / y.u_, x.field_ ? x.field_ : y.field_);
  return x * y.inverse();
}

Rational Scalar::norm() const {
  if (v_ == 0) return u_ * u_;
  return u_ * u_ + field_->a * u_ * v_ - field_->b * v_ * v_;
}

Scalar Scalar::conjugate() const {
  if (v_ == 0) return *this;
  return Scalar(u_ + field_->a * v_, -v_, field_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (v_ == 0) return Scalar(1 / u_, 0, field_);
  Rational n = norm();
  return Scalar((u_ + field_->a * v_) / n, -v_ / n, field_);
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar result = Scalar(1).in_field(field_);
  Scalar base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// sign(u + v*g) with g = (a + sqrt(D))/2:  2(u + v*g) = X + v*sqrt(D),
// X = 2u + a*v, and X^2 - v^2*D = 4*norm.
int Scalar::sign() const {
  if (v_ == 0) return sgn(u_);
  Rational x = 2 * u_ + field_->a * v_;
  int sx = sgn(x);
  int sv = sgn(v_);
  if (sx == 0) return sv;
  if (sx == sv) return sx;
  int sn = sgn(norm());
  return sx > 0 ? sn : -sn;
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.v_ != 0 || y.v_ != 0) common_field(x, y);
  return x.u_ == y.u_ && x.v_ == y.v_;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  if (x.v_ == y.v_) {
    if (x.v_ != 0) common_field(x, y);
    int c = cmp(x.u_, y.u_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering compare(const Scalar& x, const Scalar& y) { return x <=> y; }

const Scalar& min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
const Scalar& max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

Scalar field_arith(const Scalar& x, const Scalar& y, ArithOp op) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
  }
  throw InvariantViolation("unknown arithmetic op");
}

Integer common_denominator(std::span<const Scalar> xs) {
  Integer k = 1;
  for (const auto& x : xs) {
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.u().get_den_mpz_t());
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.v().get_den_mpz_t());
  }
  return k;
}

std::string Scalar::to_string() const {
  if (v_ == 0) return u_.get_str();
  std::string s;
  if (u_ != 0) s = u_.get_str();
  if (v_ > 0 && !s.empty()) s += "+";
  if (v_ == 1) {
    s += "g";
  } else if (v_ == -1) {
    s += "-g";
  } else {
    s += v_.get_str() + "*g";
  }
  return s;
}

namespace {

Enclosure enclose_at(const Scalar& x, mpfr_prec_t bits) {
  Enclosure u = Enclosure::point(x.u(), bits);
  if (x.v() == 0) return u;
  const Field& f = x.field();
  Enclosure disc = Enclosure::point(Rational(f->a * f->a + 4 * f->b), bits);
  Enclosure g = (Enclosure::point(f->a, bits) + sqrt(disc)) / Enclosure::point(Rational(2), bits);
  return u + Enclosure::point(x.v(), bits) * g;
}

}  // namespace

Enclosure Scalar::enclose(mpfr_prec_t bits) const {
  if (is_zero()) return Enclosure(bits);
  if (v_ == 0) return enclose_at(*this, bits);
  // Cancellation can widen the result; raise working precision until the
  // relative width bound is met.
  for (mpfr_prec_t work = bits + 16;; work *= 2) {
    Enclosure e = enclose_at(*this, work);
    if (!e.contains_zero()) {
      mpfr_t w, m, bound;
      mpfr_inits2(work, w, m, bound, static_cast<mpfr_ptr>(nullptr));
      mpfr_sub(w, e.hi_ptr(), e.lo_ptr(), MPFR_RNDU);
      mpfr_abs(m, sign() > 0 ? e.lo_ptr() : e.hi_ptr(), MPFR_RNDD);
      mpfr_mul_2si(bound, m, 1 - static_cast<long>(bits), MPFR_RNDD);
      bool ok = mpfr_cmp(w, bound) <= 0;
      mpfr_clears(w, m, bound, static_cast<mpfr_ptr>(nullptr));
      if (ok) return e;
    }
    if (work > 1 << 16) throw InvariantViolation("enclosure refinement did not converge");
  }
}

Enclosure to_float(const Scalar& x, mpfr_prec_t bits) {
  if (bits <= 0) throw PreconditionError("precision must be positive");
  return x.enclose(bits);
}

double Scalar::to_double() const { return enclose(64).midpoint(); }

namespace {

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
  if (mpz_size(z) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) + 0x7f4a7c15 + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(mpz_sgn(z) + 1);
  return h;
}

}  // namespace

std::size_t Scalar::hash() const {
  std::size_t h = hash_mpz(u_.get_num_mpz_t());
  auto mix = [&h](std::size_t k) { h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(hash_mpz(u_.get_den_mpz_t()));
  mix(hash_mpz(v_.get_num_mpz_t()));
  mix(hash_mpz(v_.get_den_mpz_t()));
  return h;
}

// ---------------------------------------------------------------- parsing

namespace {

// a + b*g treated formally, for the right-hand side of field declarations.
struct Linear {
  Rational c{0};
  Rational g{0};
};

struct LinearOps {
  using Value = Linear;
  Value from_rational(const Rational& q) const { return {q, 0}; }
  Value gen() const { return {0, 1}; }
  Value add(const Value& x, const Value& y) const { return {x.c + y.c, x.g + y.g}; }
  Value sub(const Value& x, const Value& y) const { return {x.c - y.c, x.g - y.g}; }
  Value neg(const Value& x) const { return {-x.c, -x.g}; }
  Value mul(const Value& x, const Value& y) const {
    if (x.g != 0 && y.g != 0) throw ParseError("field declaration must be linear in g");
    return {x.c * y.c, x.c * y.g + x.g * y.c};
  }
  Value div(const Value& x, const Value& y) const {
    if (y.g != 0) throw ParseError("division by g in field declaration");
    if (y.c == 0) throw ParseError("division by zero");
    return {x.c / y.c, x.g / y.c};
  }
  std::optional<long> as_integer(const Value& x) const {
    if (x.g != 0 || x.c.get_den() != 1 || !x.c.get_num().fits_slong_p()) return std::nullopt;
    return x.c.get_num().get_si();
  }
  Value pow(const Value& x, long n) const {
    if (n == 0) return {1, 0};
    if (n == 1) return x;
    if (x.g != 0) throw ParseError("field declaration must be linear in g");
    Rational r = 1;
    Rational b = n < 0 ? Rational(1 / x.c) : x.c;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) r *= b;
    return {r, 0};
  }
};

struct ScalarOps {
  using Value = Scalar;
  const std::optional<Scalar>& generator;
  Value from_rational(const Rational& q) const { return Scalar(q); }
  Value gen() const {
    if (!generator) throw ParseError("symbol 'g' used without a field declaration");
    return *generator;
  }
  Value add(const Value& x, const Value& y) const { return x + y; }
  Value sub(const Value& x, const Value& y) const { return x - y; }
  Value neg(const Value& x) const { return -x; }
  Value mul(const Value& x, const Value& y) const { return x * y; }
  Value div(const Value& x, const Value& y) const {
    if (y.is_zero()) throw ParseError("division by zero");
    return x / y;
  }
  std::optional<long> as_integer(const Value& x) const {
    if (!x.is_rational() || x.u().get_den() != 1 || !x.u().get_num().fits_slong_p()) return std::nullopt;
    return x.u().get_num().get_si();
  }
  Value pow(const Value& x, long n) const {
    if (n < 0 && x.is_zero()) throw ParseError("division by zero");
    return x.pow(n);
  }
};

template <class Ops>
class Parser {
 public:
  using Value = typename Ops::Value;
  Parser(std::string_view text, Ops ops) : s_(text), ops_(std::move(ops)) {}

  Value parse_all() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'g' || c == '(';
  }

  Value expr() {
    Value v = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        v = ops_.add(v, term());
      } else if (c == '-') {
        ++pos_;
        v = ops_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v = ops_.mul(v, unary());
      } else if (c == '/') {
        ++pos_;
        v = ops_.div(v, unary());
      } else if (starts_primary(c)) {
        v = ops_.mul(v, power());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return ops_.neg(unary());
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = primary();
    if (peek() == '^') {
      ++pos_;
      Value e = unary();
      auto n = ops_.as_integer(e);
      if (!n) fail("exponent must be an integer");
      return ops_.pow(base, *n);
    }
    return base;
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'g') {
      ++pos_;
      return ops_.gen();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ops_.from_rational(number());
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  // Decimal literals are read exactly: "0.7" is 7/10.
  Rational number() {
    std::size_t start = pos_;
    mpz_class digits = 0;
    long frac = 0;
    bool dot = false;
    bool any = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = digits * 10 + (c - '0');
        if (dot) ++frac;
        any = true;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!any) {
      pos_ = start;
      fail("malformed number");
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
    Rational q(digits, den);
    q.canonicalize();
    return q;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Ops ops_;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const std::optional<Scalar>& generator) {
  return Parser<ScalarOps>(text, ScalarOps{generator}).parse_all();
}

Rational parse_rational(std::string_view text) {
  Scalar s = parse_scalar(text);
  return s.rational();
}

Scalar parse_field_generator(std::string_view decl) {
  auto eq = decl.find('=');
  if (eq == std::string_view::npos) throw ParseError("field declaration needs '=': \"" + std::string(decl) + "\"");
  std::string lhs;
  for (char c : decl.substr(0, eq)) {
    if (!std::isspace(static_cast<unsigned char>(c))) lhs += c;
  }
  if (lhs != "g^2" && lhs != "g*g" && lhs != "gg") {
    throw ParseError("field declaration must start with g^2: \"" + std::string(decl) + "\"");
  }
  Linear rhs = Parser<LinearOps>(decl.substr(eq + 1), LinearOps{}).parse_all();
  const Rational& a = rhs.g;
  const Rational& b = rhs.c;
  Rational disc = a * a + 4 * b;
  if (disc <= 0) throw ParseError("field declaration has no real root greater than 1");
  if (is_rational_square(disc)) {
    Rational root = (a + rational_sqrt(disc)) / 2;
    if (root <= 1) throw ParseError("field generator must exceed 1");
    return Scalar(root);
  }
  try {
    return Scalar::generator(make_field(a, b));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace cantordiff
