#include <random>

#include "cantordiff/interval_set.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

Interval iv(long a, long b) { return Interval{Scalar(a), Scalar(b)}; }
Interval ivq(Rational a, Rational b) { return Interval{Scalar(a), Scalar(b)}; }

}  // namespace

TEST_CASE("construction merges overlapping and touching parts") {
  IntervalSet s({iv(5, 6), iv(0, 1), iv(1, 2), iv(4, 5), iv(3, 3)});
  REQUIRE(s.size() == 3);
  CHECK(s.parts()[0] == iv(0, 2));
  CHECK(s.parts()[1] == iv(3, 3));
  CHECK(s.parts()[2] == iv(4, 6));
  CHECK(s.total_length() == Scalar(4));
  CHECK(s.hull() == iv(0, 6));
}

TEST_CASE("point queries and coverage") {
  IntervalSet s({iv(0, 1), iv(2, 4)});
  CHECK(s.contains(Scalar(0)));
  CHECK(s.contains(Scalar(1)));
  CHECK_FALSE(s.contains(Scalar(Rational(3, 2))));
  CHECK(s.contains(Scalar(4)));
  CHECK_FALSE(s.contains(Scalar(5)));
  CHECK(s.covers(iv(2, 3)));
  CHECK_FALSE(s.covers(iv(0, 3)));
}

TEST_CASE("gaps are open and exclude the covered part") {
  IntervalSet s({iv(0, 1), iv(2, 4)});
  auto g = s.gaps_in(iv(-1, 5));
  REQUIRE(g.size() == 3);
  CHECK(g[0] == iv(-1, 0));
  CHECK(g[1] == iv(1, 2));
  CHECK(g[2] == iv(4, 5));
  CHECK(s.gaps_in(iv(2, 4)).empty());
}

TEST_CASE("affine maps reverse order for negative slope") {
  IntervalSet s({iv(0, 1), iv(2, 4)});
  IntervalSet r = s.affine(Scalar(-1), Scalar(0));
  REQUIRE(r.size() == 2);
  CHECK(r.parts()[0] == iv(-4, -2));
  CHECK(r.parts()[1] == iv(-1, 0));
  CHECK(s.translated(Scalar(1)).hull() == iv(1, 5));
}

TEST_CASE("unite and intersect agree with a point-sampling oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Interval> a, b;
    for (int k = 0; k < 4; ++k) {
      int x = d(rng), y = d(rng);
      a.push_back(iv(std::min(x, y), std::max(x, y)));
      x = d(rng), y = d(rng);
      b.push_back(iv(std::min(x, y), std::max(x, y)));
    }
    IntervalSet A(a), B(b);
    IntervalSet U = A.unite(B);
    Interval w = iv(-5, 7);
    IntervalSet I = A.intersect(w);
    for (int n = -45; n <= 45; ++n) {
      Scalar x(Rational(n, 2));
      bool in_a = false, in_b = false;
      for (const auto& e : a) in_a = in_a || e.contains(x);
      for (const auto& e : b) in_b = in_b || e.contains(x);
      CHECK(U.contains(x) == (in_a || in_b));
      CHECK(I.contains(x) == (in_a && w.contains(x)));
    }
  }
}

TEST_CASE("rational endpoints survive normalization exactly") {
  IntervalSet s({ivq(Rational(1, 3), Rational(2, 3)), ivq(Rational(2, 3), Rational(5, 7))});
  REQUIRE(s.size() == 1);
  CHECK(s.parts()[0] == ivq(Rational(1, 3), Rational(5, 7)));
}
