#include "cantordiff/errors.hpp"
#include "cantordiff/full_interval.hpp"
#include "cantordiff/ifs.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

Scalar g() { return parse_field_generator("g^2=g+1"); }

CantorPair middle_pair(const Scalar& a, const Scalar& b) {
  return CantorPair{CantorSet::middle(a), CantorSet::middle(b)};
}

CantorPair golden_pair() { return middle_pair(g().pow(-3), g().pow(-2)); }

// First depth <= max_depth with a gap, or 0 when every depth is covered.
int first_gap_depth(const CantorPair& pair, const Scalar& lambda, int max_depth) {
  LineIFS ifs = generate_ifs(pair, lambda);
  IntervalSet u = IntervalSet::single(ifs.hull.lo, ifs.hull.hi);
  for (int n = 1; n <= max_depth; ++n) {
    u = apply_maps(ifs, u);
    if (!u.gaps_in(ifs.hull).empty()) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("golden analysis") {
  FullIntervalAnalysis a = analyze(golden_pair());
  REQUIRE(a.gamma);
  CHECK(*a.gamma == g());
  CHECK(a.n0 == 3);
  CHECK(a.m0 == 2);
  CHECK(a.s1 == Scalar(7) - 4 * g());
  CHECK(a.s0 == g().pow(3));
  REQUIRE(a.j);
  CHECK(*a.j == Interval{3 * g() - 4, Scalar(1)});
  CHECK(a.lambda_set.hull() == Interval{a.s1, a.s0});
  // Endpoint identity: J = [q(p-2)/(g p), q/(p(q-2))].
  CHECK(a.j->lo == a.q * (a.p - 2) / (g() * a.p));
  CHECK(a.j->hi == a.q / (a.p * (a.q - 2)));
  // (p-2)(q-2) = 3 - g and the thickness product is its inverse.
  CHECK((a.p - 2) * (a.q - 2) == Scalar(3) - g());
  CHECK(a.thickness_product == (Scalar(3) - g()).inverse());
}

TEST_CASE("declared ratios are verified") {
  CHECK_NOTHROW(analyze(golden_pair(), DeclaredRatio::rational(3, 2, g())));
  CHECK_THROWS_AS(analyze(golden_pair(), DeclaredRatio::rational(2, 3, g())), PreconditionError);
  FullIntervalAnalysis irr = analyze(middle_pair(Scalar(Rational(1, 3)), Scalar(Rational(1, 4))), DeclaredRatio::irrational());
  CHECK(irr.irrational);
  CHECK(irr.lambda_set.empty());
  CHECK_THROWS_AS(analyze(middle_pair(Scalar(Rational(1, 3)), Scalar(Rational(1, 4)))), PreconditionError);
  CHECK_THROWS_AS(analyze(middle_pair(Scalar(Rational(1, 3)), Scalar(Rational(1, 3)))), PreconditionError);
}

TEST_CASE("quarter pair: Lambda = {1/2, 2} and T swaps them") {
  CantorPair quarter = middle_pair(Scalar(Rational(1, 4)), Scalar(Rational(1, 4)));
  FullIntervalAnalysis a = analyze(quarter);
  CHECK(*a.gamma == Scalar(4));
  REQUIRE(a.j);
  CHECK(*a.j == Interval{Scalar(Rational(1, 2)), Scalar(Rational(1, 2))});
  REQUIRE(a.lambda_set.size() == 2);
  CHECK(a.lambda_set.contains(Scalar(Rational(1, 2))));
  CHECK(a.lambda_set.contains(Scalar(2)));
  CHECK(t_map(a, Scalar(Rational(1, 2))) == std::vector<Scalar>{Scalar(2)});
  CHECK(t_map(a, Scalar(2)) == std::vector<Scalar>{Scalar(Rational(1, 2))});
  CHECK_THROWS_AS(t_map(a, Scalar(1)), PreconditionError);
  CHECK(is_full(quarter, Scalar(Rational(1, 2))).verdict == FullVerdict::Full);
  CHECK(is_full(quarter, Scalar(2)).verdict == FullVerdict::Full);
  CHECK(is_full(quarter, Scalar(-2)).verdict == FullVerdict::Full);
  CHECK(is_full(quarter, Scalar(1)).verdict == FullVerdict::NotFull);
  CHECK(first_gap_depth(quarter, Scalar(Rational(1, 2)), 8) == 0);
  CHECK(first_gap_depth(quarter, Scalar(2), 8) == 0);
  int d = first_gap_depth(quarter, Scalar(Rational(7, 10)), 8);
  CHECK(d >= 1);
  CHECK(sum_full(quarter) == false);
}

TEST_CASE("empty Lambda when 1/g exceeds the thickness product") {
  CantorPair fifth = middle_pair(Scalar(Rational(1, 5)), Scalar(Rational(1, 5)));
  FullIntervalAnalysis a = analyze(fifth);
  CHECK_FALSE(a.j);
  CHECK(a.lambda_set.empty());
  CHECK(is_full(fifth, Scalar(1)).verdict == FullVerdict::NotFull);
  CHECK(is_full(fifth, Scalar(1)).route == "empty-lambda-set");
  CHECK(sum_full(fifth) == false);
}

TEST_CASE("golden verdicts") {
  FullCertificate one = is_full(golden_pair(), Scalar(1));
  CHECK(one.verdict == FullVerdict::Full);
  CHECK(one.route == "lambda-set");
  CHECK(first_gap_depth(golden_pair(), Scalar(1), 8) == 0);
  FullCertificate two = is_full(golden_pair(), 2 / g());
  CHECK(two.verdict == FullVerdict::NotFull);
  CHECK(2 / g() > Scalar(1));
  CHECK(2 / g() < g() * (3 * g() - 4));
  CHECK(first_gap_depth(golden_pair(), 2 / g(), 8) == 1);
  CHECK(sum_full(golden_pair()));
}

TEST_CASE("thickness route") {
  CantorPair third = middle_pair(Scalar(Rational(1, 3)), Scalar(Rational(1, 3)));
  FullCertificate c = is_full(third, Scalar(2));
  CHECK(c.verdict == FullVerdict::Full);
  CHECK(c.route == "thickness");
  CHECK(is_full(third, Scalar(4)).verdict == FullVerdict::NotFull);
  CHECK(sum_full(third));
  CHECK_THROWS_AS(is_full(third, Scalar(0)), PreconditionError);
}

TEST_CASE("Lambda is T-invariant on its endpoints") {
  std::vector<CantorPair> pairs{golden_pair(), middle_pair(g().pow(-2), g().pow(-3)),
                                middle_pair(Scalar(Rational(1, 4)), Scalar(Rational(1, 4))),
                                middle_pair(Scalar(Rational(3, 10)), Scalar(Rational(3, 10)))};
  for (const auto& pair : pairs) {
    FullIntervalAnalysis a = analyze(pair);
    REQUIRE(a.j);
    for (const auto& part : a.lambda_set.parts()) {
      for (const Scalar& x : {part.lo, part.hi}) {
        for (const Scalar& y : t_map(a, x)) CHECK(a.lambda_set.contains(y));
      }
    }
  }
}

TEST_CASE("accounting identity: images of J and I tile [s1, s0]") {
  std::vector<CantorPair> pairs{golden_pair(), middle_pair(g().pow(-2), g().pow(-3)),
                                middle_pair(Scalar(Rational(1, 4)), Scalar(Rational(1, 4))),
                                middle_pair(Scalar(Rational(3, 10)), Scalar(Rational(3, 10)))};
  for (const auto& pair : pairs) {
    FullIntervalAnalysis a = analyze(pair);
    CHECK(accounting_total(a) == a.s0 - a.s1);
  }
}

TEST_CASE("closed form agrees with the coverage oracle on sampled lambdas") {
  struct Case {
    CantorPair pair;
    int samples;
  };
  std::vector<Case> cases{{golden_pair(), 50}, {middle_pair(Scalar(Rational(1, 4)), Scalar(Rational(1, 4))), 50}};
  for (const auto& c : cases) {
    FullIntervalAnalysis a = analyze(c.pair);
    int flagged = 0;
    for (int k = 0; k <= c.samples; ++k) {
      Scalar lambda = a.s1 + (a.s0 - a.s1) * Scalar(Rational(k, c.samples));
      FullVerdict v = is_full(c.pair, lambda).verdict;
      int depth = 0;
      try {
        depth = first_gap_depth(c.pair, lambda, 8);
      } catch (const BudgetExceeded&) {
        ++flagged;
        continue;
      }
      if (v == FullVerdict::Full) {
        CHECK(depth == 0);
      } else if (depth == 0) {
        ++flagged;
      }
    }
    MESSAGE("samples needing more than depth 8: " << flagged);
    CHECK(flagged <= 2);
  }
}
