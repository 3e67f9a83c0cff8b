#include <random>

#include "cantordiff/errors.hpp"
#include "cantordiff/ifs.hpp"
#include "cantordiff/renorm.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

Scalar g() { return parse_field_generator("g^2=g+1"); }

CantorPair middle_pair(Rational a, Rational b) {
  return CantorPair{CantorSet::middle(Scalar(a)), CantorSet::middle(Scalar(b))};
}

CantorPair golden_pair() { return CantorPair{CantorSet::middle(g().pow(-3)), CantorSet::middle(g().pow(-2))}; }

Scalar lin(long v, long u) { return Scalar(u, v, g().field()); }

bool gap_inside_some(const Interval& gap, const std::vector<Interval>& gaps) {
  for (const auto& h : gaps) {
    if (h.lo <= gap.lo && gap.hi <= h.hi) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("golden system has the 21 listed expanding offsets") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  CHECK(ifs.raw_count == 32);
  CHECK(ifs.m0 == 2);
  CHECK(ifs.n0 == 3);
  CHECK(ifs.ratio == g().pow(-6));
  CHECK(ifs.hull == Interval{-2 / g(), Scalar(1)});
  std::vector<Scalar> want{lin(8, 8),  lin(8, 6),   lin(6, 8),   lin(6, 6),   lin(6, 4),   lin(4, 6),  lin(4, 4),
                           lin(2, 4),  lin(2, 2),   lin(0, 4),   lin(0, 2),   lin(0, 0),   lin(-2, 2), lin(-2, 0),
                           lin(-4, 0), lin(-4, -2), lin(-6, 0),  lin(-6, -2), lin(-6, -4), lin(-8, -2), lin(-8, -4)};
  CHECK(expanding_offsets(ifs) == want);
}

TEST_CASE("middle-third systems") {
  LineIFS one = generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1));
  CHECK(one.raw_count == 4);
  std::vector<Scalar> b{Scalar(Rational(-2, 3)), Scalar(0), Scalar(Rational(2, 3))};
  CHECK(one.offsets == b);
  CHECK(one.ratio == Scalar(Rational(1, 3)));
  for (int n = 1; n <= 6; ++n) CHECK(coverage_at_depth(one, n).covered);

  LineIFS four = generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(4));
  CoverageReport r = coverage_at_depth(four, 1);
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0] == Interval{Scalar(Rational(-5, 3)), Scalar(Rational(-4, 3))});
  CHECK_FALSE(r.covered);
}

TEST_CASE("quarter pair at lambda = 1/2 tiles the hull with four maps") {
  LineIFS ifs = generate_ifs(middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(1, 2)));
  REQUIRE(ifs.size() == 4);
  CHECK(ifs.ratio == Scalar(Rational(1, 4)));
  Scalar total(0);
  for (std::size_t i = 0; i < ifs.size(); ++i) total += ifs.map(i).image(ifs.hull).length();
  CHECK(total == ifs.hull.length());
  CHECK(coverage_at_depth(ifs, 5).covered);
}

TEST_CASE("golden depth-1 gaps are H1 and H2") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  CoverageReport r = coverage_at_depth(ifs, 1, 1 << 20, true);
  Scalar g6 = g().pow(6);
  REQUIRE(r.gaps.size() == 2);
  CHECK(r.gaps[0] == Interval{lin(-4, -3) / g6, lin(-4, -2) / g6});
  CHECK(r.gaps[1] == Interval{lin(2, 1) / g6, lin(2, 2) / g6});
  REQUIRE(r.class_count);
  CHECK(*r.class_count == 21);
}

TEST_CASE("homogeneous pairs") {
  Interval unit{Scalar(0), Scalar(1)};
  CantorSet third = CantorSet::middle(Scalar(Rational(1, 3)));
  CantorSet third_h = CantorSet::homogeneous(Scalar(3), {Scalar(0), Scalar(-2)}, unit);
  LineIFS a = generate_ifs(CantorPair{third, third}, Scalar(1));
  LineIFS b = generate_ifs_homogeneous(third_h, third_h, Scalar(1));
  CHECK(a.offsets == b.offsets);
  CHECK(a.hull == b.hull);

  CantorSet nine = CantorSet::homogeneous(Scalar(9), {Scalar(0), Scalar(-4), Scalar(-8)}, unit);
  LineIFS c = generate_ifs_homogeneous(nine, third, Scalar(1));
  CHECK(c.ratio == Scalar(Rational(1, 9)));
  CHECK(c.m0 == 1);
  CHECK(c.n0 == 2);
  CHECK(c.raw_count == 12);
  // Brute-force oracle: offsets {0, 4/9, 8/9} - {0, 2/9, 6/9, 8/9}.
  std::vector<Scalar> want;
  for (long e : {0, 4, 8}) {
    for (long f : {0, 2, 6, 8}) want.push_back(Scalar(Rational(e - f, 9)));
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  CHECK(c.offsets == want);
  CHECK_THROWS_AS(generate_ifs_homogeneous(nine, third, Scalar(0)), PreconditionError);
  CHECK_THROWS_AS(generate_ifs(middle_pair(Rational(1, 3), Rational(1, 4)), Scalar(1)), PreconditionError);
}

TEST_CASE("depth-n unions are self-similar and gaps only grow") {
  std::vector<LineIFS> systems{generate_ifs(golden_pair(), 2 / g()),
                               generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(4)),
                               generate_ifs(middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(7, 10)))};
  std::vector<int> max_depth{3, 5, 5};
  for (std::size_t k = 0; k < systems.size(); ++k) {
    const LineIFS& ifs = systems[k];
    IntervalSet u = union_at_depth(ifs, 1);
    std::vector<Interval> gaps = u.gaps_in(ifs.hull);
    for (int n = 1; n < max_depth[k]; ++n) {
      IntervalSet next = union_at_depth(ifs, n + 1);
      CHECK(apply_maps(ifs, u) == next);
      std::vector<Interval> next_gaps = next.gaps_in(ifs.hull);
      for (const auto& h : gaps) CHECK(gap_inside_some(h, next_gaps));
      u = next;
      gaps = next_gaps;
    }
  }
}

TEST_CASE("hull endpoints belong to the attractor") {
  for (auto [a, b, l] : {std::tuple{Rational(1, 3), Rational(1, 3), Rational(4)},
                         {Rational(1, 4), Rational(1, 4), Rational(7, 10)},
                         {Rational(1, 4), Rational(1, 16), Rational(3, 5)}}) {
    LineIFS ifs = generate_ifs(middle_pair(a, b), Scalar(l));
    CHECK(attractor_membership(ifs, ifs.hull.lo, 1000).verdict == Verdict::In);
    CHECK(attractor_membership(ifs, ifs.hull.hi, 1000).verdict == Verdict::In);
  }
  LineIFS gold = generate_ifs(golden_pair(), 2 / g());
  CHECK(attractor_membership(gold, Scalar(1), 1000).verdict == Verdict::In);
  CHECK(attractor_membership(gold, -2 / g(), 1000).verdict == Verdict::In);
}

TEST_CASE("attractor membership examples") {
  LineIFS gold = generate_ifs(golden_pair(), 2 / g());
  Scalar g6 = g().pow(6);
  Scalar mid_h1 = (lin(-4, -3) + lin(-4, -2)) / (2 * g6);
  auto r = attractor_membership(gold, mid_h1, 1000);
  CHECK(r.verdict == Verdict::Out);
  CHECK(r.escape_depth == 1);
  LineIFS four = generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(4));
  CHECK(attractor_membership(four, Scalar(Rational(-3, 2)), 1000).verdict == Verdict::Out);
  CHECK(attractor_membership(four, Scalar(5), 1000).verdict == Verdict::Out);
  CHECK(attractor_membership(four, Scalar(5), 1000).escape_depth == 0);
}

TEST_CASE("attractor membership agrees with the plane-orbit membership") {
  std::mt19937_64 rng(2024);
  struct Case {
    CantorPair pair;
    Scalar lambda;
  };
  std::vector<Case> cases{{middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1)},
                          {middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(4)},
                          {middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(1, 2))},
                          {golden_pair(), 2 / g()}};
  for (const auto& c : cases) {
    LineIFS ifs = generate_ifs(c.pair, c.lambda);
    int decided = 0;
    for (int k = 0; k < 40; ++k) {
      long den = 1 + static_cast<long>(rng() % 30);
      double lo = ifs.hull.lo.to_double() - 0.2, hi = ifs.hull.hi.to_double() + 0.2;
      long num = static_cast<long>(std::floor(lo * den)) + static_cast<long>(rng() % static_cast<unsigned long>((hi - lo) * den + 1));
      Scalar t(Rational(num, den));
      auto a = attractor_membership(ifs, t, 4000);
      auto b = membership(t, c.lambda, c.pair, 4000);
      if (a.verdict != Verdict::Unknown && b.verdict != Verdict::Unknown) {
        ++decided;
        CHECK(a.verdict == b.verdict);
      }
    }
    CHECK(decided > 20);
  }
}

TEST_CASE("measure zero by counting") {
  MeasureZeroReport r = measure_zero_by_count(middle_pair(Rational(1, 8), Rational(1, 64)));
  CHECK(r.lambda == Scalar(Rational(8, 9)));
  CHECK(r.verdict == MeasureVerdict::MeasureZero);
  CHECK(r.classes <= 6);
  CHECK(r.threshold == Scalar(64));
  MeasureZeroReport gold = measure_zero_by_count(golden_pair());
  CHECK(gold.lambda == 2 / g());
  CHECK(gold.classes == 21);
  CHECK(gold.verdict == MeasureVerdict::Inconclusive);
  // p = q: lambda = 1 and the point (1, 1 - 1/q) projects onto 1/p.
  MeasureZeroReport same = measure_zero_by_count(middle_pair(Rational(1, 5), Rational(1, 5)));
  CHECK(same.lambda == Scalar(1));
  CHECK(Scalar(1) - same.lambda * Scalar(Rational(4, 5)) == Scalar(Rational(1, 5)) - same.lambda * Scalar(0));
}

TEST_CASE("lambda scaling by p^i / q^j") {
  auto [a, b] = scaled_lambda_pair(golden_pair(), 2 / g(), 0, 0);
  CHECK(a.offsets == b.offsets);
  auto [c, d] = scaled_lambda_pair(golden_pair(), 2 / g(), 1, 1);
  CHECK(d.lambda == Scalar(2));
  for (int n = 1; n <= 3; ++n) CHECK(class_count(c, n) == class_count(d, n));
  auto [e, f] = scaled_lambda_pair(middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(1, 2)), 1, 0);
  CHECK(f.lambda == Scalar(2));
  CHECK(coverage_at_depth(e, 4).covered);
  CHECK(coverage_at_depth(f, 4).covered);
}

TEST_CASE("sum identity is an exact translation") {
  LineIFS s = sum_as_difference(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1));
  CHECK(s.hull == Interval{Scalar(0), Scalar(2)});
  CHECK(coverage_at_depth(s, 3).covered);
  for (auto [pair, l] : {std::pair{golden_pair(), 2 / g()}, {middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(4)}}) {
    LineIFS d = generate_ifs(pair, l);
    LineIFS sum = sum_as_difference(pair, l);
    for (int n = 1; n <= 4; ++n) CHECK(union_at_depth(sum, n) == union_at_depth(d, n).translated(l));
  }
  LineIFS gs = sum_as_difference(golden_pair(), Scalar(1));
  CHECK(gs.hull == Interval{Scalar(0), Scalar(2)});
  CHECK(coverage_at_depth(gs, 2).covered);
}

TEST_CASE("duality under swapping the pair") {
  for (auto [pair, l] : {std::pair{golden_pair(), 2 / g()}, {middle_pair(Rational(1, 3), Rational(1, 4)), Scalar(1)},
                         {middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(7, 10))}}) {
    if (!log_ratio(pair)) continue;
    LineIFS d = generate_ifs(pair, l);
    LineIFS dual = dual_ifs(pair, l);
    for (int n = 1; n <= 3; ++n) CHECK(union_at_depth(dual, n).affine(-l, Scalar(0)) == union_at_depth(d, n));
  }
}

TEST_CASE("budget errors") {
  LineIFS gold = generate_ifs(golden_pair(), 2 / g());
  CHECK_THROWS_AS(class_count(gold, 3, 100), BudgetExceeded);
  CHECK_THROWS_AS(union_at_depth(gold, 10, 50), BudgetExceeded);
}
