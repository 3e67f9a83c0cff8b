#include <cmath>

#include "cantordiff/dimension.hpp"
#include "cantordiff/errors.hpp"
#include "cantordiff/lattice.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

Scalar g() { return parse_field_generator("g^2=g+1"); }

CantorPair golden_pair() { return CantorPair{CantorSet::middle(g().pow(-3)), CantorSet::middle(g().pow(-2))}; }

CantorPair middle_pair(Rational a, Rational b) {
  return CantorPair{CantorSet::middle(Scalar(a)), CantorSet::middle(Scalar(b))};
}

std::vector<Rational> coeffs(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Largest real root of a monic polynomial by bisection in doubles.
double largest_root(const std::vector<Rational>& c, double lo, double hi) {
  auto f = [&](double x) {
    double r = 0;
    for (const auto& k : c) r = r * x + k.get_d();
    return r;
  };
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    if ((f(mid) > 0) == (f(hi) > 0)) hi = mid; else lo = mid;
  }
  return (lo + hi) / 2;
}

const CountMatrix kTypeMatrix{{5, 11, 3, 11, 5}, {2, 6, 2, 6, 2}, {4, 10, 3, 10, 4}, {0, 2, 0, 1, 2}, {0, 8, 2, 6, 5}};

}  // namespace

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(kTypeMatrix) == coeffs({1, -20, 50, -28, -3, 0}));
  // Product form x(x-1)(x^3-19x^2+31x+3) evaluated at a few integers.
  for (long x = -3; x <= 3; ++x) {
    Rational want = Rational(x) * (x - 1) * (x * x * x - 19 * x * x + 31 * x + 3);
    CHECK(eval_poly(char_poly(kTypeMatrix), Rational(x)) == want);
  }
  CHECK(char_poly({{2, 1}, {1, 2}}) == coeffs({1, -4, 3}));
  CHECK(char_poly({}) == coeffs({1}));
}

TEST_CASE("spectral radius enclosures") {
  SpectralResult r = spectral_radius({{2, 1}, {1, 2}});
  CHECK(r.lo <= 3);
  CHECK(r.hi >= 3);
  CHECK(r.width() < 1e-9);
  SpectralResult id = spectral_radius({{1, 0}, {0, 1}});
  CHECK(id.lo == 1);
  CHECK(id.hi == 1);
  SpectralResult zero = spectral_radius({{0, 0}, {0, 0}});
  CHECK(zero.hi == 0);
  // Reducible: the larger diagonal block wins.
  SpectralResult tri = spectral_radius({{1, 5}, {0, 4}});
  CHECK(tri.lo == 4);
  CHECK(tri.hi == 4);
  CHECK_THROWS_AS(spectral_radius({{1, -1}, {0, 1}}), PreconditionError);

  SpectralResult a = spectral_radius(kTypeMatrix);
  double root = largest_root(coeffs({1, -19, 31, 3}), 10, 30);
  CHECK(a.lo.get_d() <= root + 1e-12);
  CHECK(a.hi.get_d() >= root - 1e-12);
  CHECK(a.width() < 1e-9);
  // The enclosure brackets a sign change of the exact characteristic polynomial.
  auto p = char_poly(kTypeMatrix);
  CHECK(eval_poly(p, a.lo) * eval_poly(p, a.hi) <= 0);
}

TEST_CASE("golden automaton") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  NeighborAutomaton a = build_automaton(ifs);
  REQUIRE(a.complete);
  CHECK(a.size() == 4);
  std::vector<std::size_t> sizes;
  for (const auto& s : a.states) sizes.push_back(s.positions.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 7, 12, 20});
  CHECK(a.states[a.start_state].positions == std::vector<Scalar>{Scalar(0)});

  // Soundness against brute-force enumeration, both arithmetic paths.
  for (int n = 1; n <= 5; ++n) CHECK(a.class_count(n) == enumerate_class_count(ifs, n));
  for (int n = 1; n <= 3; ++n) CHECK(a.class_count(n) == Integer(static_cast<unsigned long>(class_count(ifs, n))));

  std::vector<long> k{21, 369, 6357, 109281, 1878165, 32278353};
  for (int n = 1; n <= 6; ++n) CHECK(a.class_count(n) == k[n - 1]);

  DimensionResult d = hausdorff_dimension(a, ifs.size());
  REQUIRE(d.radius);
  REQUIRE(d.char_poly);
  // Characteristic polynomial is divisible by the cubic factor of A's.
  auto cubic_root = largest_root(coeffs({1, -19, 31, 3}), 10, 30);
  CHECK(d.radius->enclosure().contains(cubic_root));
  double expansion = std::pow((1 + std::sqrt(5.0)) / 2, 6);
  CHECK(d.hdim.contains(std::log(cubic_root) / std::log(expansion)));
  CHECK(d.hdim.upper() < 1);
  CHECK(d.hdim.upper() <= d.similarity.upper());
}

TEST_CASE("golden counting bounds") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  NeighborAutomaton a = build_automaton(ifs);
  std::vector<double> roots{19.2093, 18.5246, 18.1817, 17.9782, 17.8437};
  for (int n = 2; n <= 6; ++n) {
    CountingBound b = depth_counting_bound(ifs, n, &a);
    CHECK(std::abs(b.root.midpoint() - roots[n - 2]) < 1e-4);
    CHECK((b.bound.upper() < 1) == (n == 6));
  }
  CHECK(depth_counting_bound(ifs, 6, &a).bound.upper() < 0.9982);
  CHECK(depth_counting_bound(ifs, 3).k == 6357);
}

TEST_CASE("golden region populations follow the 5x5 recursion") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  // Fingerprint (coverage, length * g^6) -> type index X, Y, Z, G, R.
  auto type_of = [&](const ElementarySegment& s) -> int {
    Scalar l = s.length * g().pow(6);
    if (s.coverage == 1 && l == Scalar(2)) return 0;
    if (s.coverage == 1 && l == Scalar(1)) return 1;
    if (s.coverage == 1 && l == 5 - 2 * g()) return 2;
    if (s.coverage == 2 && l == 2 * g() - 3) return 3;
    if (s.coverage == 2 && l == Scalar(1)) return 4;
    return -1;
  };
  std::vector<int> weight(5, 0);
  int gaps = 0;
  auto segs = elementary_segments(ifs);
  for (const auto& s : segs) {
    int t = type_of(s);
    if (t >= 0) ++weight[t];
    if (s.coverage == 0) ++gaps;
    if (t < 0) CHECK(s.coverage == 0);
  }
  CHECK(weight == std::vector<int>{6, 12, 3, 12, 6});
  CHECK(gaps == 2);
  std::vector<long> v{19, 10, 17, 2, 10};
  for (int n = 2; n <= 3; ++n) {
    std::vector<long> pop(5, -1);
    for (const auto& s : segs) {
      int t = type_of(s);
      if (t < 0) continue;
      RegionRule rule = t <= 2 ? RegionRule::MeetsInterior : RegionRule::ContainedIn;
      long c = static_cast<long>(region_population(ifs, s.span, n, rule));
      if (pop[t] < 0) pop[t] = c;
      CHECK(pop[t] == c);
    }
    CHECK(pop == v);
    long k = 0;
    for (int t = 0; t < 5; ++t) k += weight[t] * v[t];
    CHECK(k == (n == 2 ? 369 : 6357));
    std::vector<long> next(5, 0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) next[i] += kTypeMatrix[i][j] * v[j];
    v = next;
  }
}

TEST_CASE("tiling systems have one state") {
  NeighborAutomaton third = build_automaton(generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1)));
  CHECK(third.size() == 1);
  CHECK(third.dense() == CountMatrix{{3}});
  DimensionResult d = hausdorff_dimension(generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1)));
  CHECK(d.hdim.contains(1.0));
  NeighborAutomaton quarter =
      build_automaton(generate_ifs(middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(Rational(1, 2))));
  CHECK(quarter.dense() == CountMatrix{{4}});
}

TEST_CASE("finite type certificates") {
  FiniteTypeReport gold = is_finite_type(generate_ifs(golden_pair(), 2 / g()));
  CHECK(gold.certified);
  CHECK(gold.ring == "Z[g]");
  FiniteTypeReport third = is_finite_type(generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1)));
  CHECK(third.certified);
  CHECK(third.ring == "Z");
  LineIFS odd = generate_ifs(middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(1));
  odd.ratio = Scalar(Rational(2, 5));
  CHECK_FALSE(is_finite_type(odd).certified);
}

TEST_CASE("lattice and exact paths agree on populations") {
  LineIFS ifs = generate_ifs(golden_pair(), 2 / g());
  REQUIRE(make_lattice(ifs).has_value());
  // A region whose scaled endpoints are not lattice points forces the exact path.
  Interval off{Scalar(Rational(-1, 7)), Scalar(Rational(1, 3))};
  std::size_t a = region_population(ifs, off, 2, RegionRule::MeetsInterior);
  std::size_t brute = 0;
  for (int n = 2; n == 2; ++n) {
    LineIFS two = ifs;
    std::vector<Scalar> offs;
    for (const auto& b1 : ifs.offsets)
      for (const auto& b2 : ifs.offsets) offs.push_back(ifs.ratio * b1 + b2);
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    Scalar r2 = ifs.ratio * ifs.ratio;
    for (const auto& b : offs) {
      Scalar lo = r2 * ifs.hull.lo + b, hi = r2 * ifs.hull.hi + b;
      if (lo < off.hi && off.lo < hi) ++brute;
    }
  }
  CHECK(a == brute);
}

TEST_CASE("dimension invariance") {
  CantorPair gp = golden_pair();
  Scalar lambda = 2 / g();
  DimensionResult base = hausdorff_dimension(generate_ifs(gp, lambda));
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      Scalar l = gp.first.p().pow(i) * lambda / gp.second.p().pow(j);
      DimensionResult d = hausdorff_dimension(generate_ifs(gp, l));
      CHECK(d.hdim.overlaps(base.hdim));
      CHECK(d.hdim.width() < 1e-8);
    }
  }
  DimensionResult two = hausdorff_dimension(generate_ifs(gp, Scalar(2)));
  CHECK(two.hdim.overlaps(base.hdim));
  DimensionResult dual = hausdorff_dimension(dual_ifs(gp, lambda));
  CHECK(dual.hdim.overlaps(base.hdim));
}

TEST_CASE("dimension never exceeds min(1, similarity dimension)") {
  std::vector<std::pair<CantorPair, Scalar>> cases{
      {golden_pair(), 2 / g()},
      {golden_pair(), Scalar(1)},
      {middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(Rational(1, 2))},
      {middle_pair(Rational(1, 4), Rational(1, 4)), Scalar(1)},
      {middle_pair(Rational(1, 4), Rational(1, 16)), Scalar(Rational(3, 2))},
      {middle_pair(Rational(1, 5), Rational(1, 5)), Scalar(Rational(2, 3))}};
  for (const auto& [pair, l] : cases) {
    LineIFS ifs = generate_ifs(pair, l);
    DimensionResult d = hausdorff_dimension(ifs);
    CHECK(d.hdim.lower() >= 0);
    CHECK(d.hdim.lower() <= 1 + 1e-12);
    CHECK(d.hdim.lower() <= d.similarity.upper());
    if (d.complete) {
      for (int n = 1; n <= 3; ++n) CHECK(depth_counting_bound(ifs, n).bound.upper() >= d.hdim.lower());
    }
  }
}

TEST_CASE("single-map system") {
  LineIFS one;
  one.ratio = Scalar(Rational(1, 3));
  one.offsets = {Scalar(0)};
  one.hull = Interval{Scalar(0), Scalar(0)};
  one.raw_count = 1;
  CHECK(enumerate_class_count(one, 4) == 1);
  CHECK(depth_counting_bound(one, 4).bound.contains(0.0));
}

TEST_CASE("Pisot dichotomy") {
  Field f = g().field();
  PisotReport zero = classify_pisot_pair(f, 3, 2, 2 / g());
  CHECK(zero.verdict == PisotVerdict::MeasureZero);
  PisotReport full = classify_pisot_pair(f, 3, 2, Scalar(1));
  CHECK(full.verdict == PisotVerdict::ContainsInterval);
  // Conjugate of 1 + sqrt(3) is 1 - sqrt(3), modulus > 1/2 but < 1: Pisot.
  // g^2 = 3g + 1 has conjugate about -0.30; g^2 = 2g + 2 has conjugate -0.73.
  Field bad = make_field(Rational(1), Rational(3));  // roots (1 +- sqrt 13)/2, conjugate < -1
  CHECK_THROWS_AS(classify_pisot_pair(bad, 3, 2, Scalar(1)), PreconditionError);
  CHECK_THROWS_AS(classify_pisot_pair(f, 3, 2, Scalar(0)), PreconditionError);
}

TEST_CASE("neighbor-type automaton handles heavy overlap") {
  std::vector<std::pair<CantorPair, Scalar>> cases{{golden_pair(), Scalar(1)},
                                                   {middle_pair(Rational(1, 3), Rational(1, 3)), Scalar(Rational(1, 2))},
                                                   {golden_pair(), 2 / g()}};
  for (const auto& [pair, l] : cases) {
    LineIFS ifs = generate_ifs(pair, l);
    NeighborAutomaton n = build_automaton(ifs, AutomatonKind::Neighbor);
    REQUIRE(n.complete);
    for (int d = 1; d <= 4; ++d) CHECK(n.class_count(d) == enumerate_class_count(ifs, d));
  }
  // Both constructions give the same radius where islands close.
  LineIFS gold = generate_ifs(golden_pair(), 2 / g());
  DimensionResult a = hausdorff_dimension(build_automaton(gold, AutomatonKind::Island), gold.size());
  DimensionResult b = hausdorff_dimension(build_automaton(gold, AutomatonKind::Neighbor), gold.size());
  CHECK(a.hdim.overlaps(b.hdim));
  // Full intervals have dimension 1; islands never close there.
  LineIFS full = generate_ifs(golden_pair(), Scalar(1));
  CHECK_FALSE(build_automaton(full, AutomatonKind::Island, 200).complete);
  DimensionResult f = hausdorff_dimension(full);
  CHECK(f.kind == AutomatonKind::Neighbor);
  CHECK(f.hdim.contains(1.0));
}

TEST_CASE("state budget degrades to bounds") {
  LineIFS gold = generate_ifs(golden_pair(), 2 / g());
  DimensionResult d = hausdorff_dimension(gold, 2);
  CHECK_FALSE(d.complete);
  CHECK_FALSE(d.radius);
  CHECK(d.hdim.contains(0.985047));
  CHECK(d.hdim.upper() <= std::min(1.0, depth_counting_bound(gold, 5).bound.upper()));
}
