#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cantordiff/cantor.hpp"
#include "cantordiff/interval_set.hpp"
#include "cantordiff/orbit_search.hpp"

namespace cantordiff {

/// t -> ratio*t + offset
struct LineMap {
  Scalar ratio;
  Scalar offset;

  Scalar apply(const Scalar& t) const { return ratio * t + offset; }
  Scalar invert(const Scalar& t) const { return (t - offset) / ratio; }
  Interval image(const Interval& iv) const;
};

/// Contractions t -> r*t + b_i with a common ratio r = p^{-m0} = q^{-n0},
/// whose attractor is K - lambda*K'. Offsets are distinct and ascending.
struct LineIFS {
  Scalar ratio;
  std::vector<Scalar> offsets;
  Interval hull;
  Scalar lambda;
  int m0 = 0;
  int n0 = 0;
  std::size_t raw_count = 0;  // before deduplication
  std::string source;

  std::size_t size() const { return offsets.size(); }
  LineMap map(std::size_t i) const { return LineMap{ratio, offsets.at(i)}; }
};

/// Depth-1 decomposition K = U g_w(K) at level m0 and K' at level n0;
/// every pair (w, v) gives t -> r*t + c_w - lambda*d_v.
LineIFS generate_ifs(const CantorPair& pair, const Scalar& lambda, int ratio_bound = 64);
/// Same construction; spelled out for homogeneous (non-middle) sets.
LineIFS generate_ifs_homogeneous(const CantorSet& k, const CantorSet& k2, const Scalar& lambda,
                                 int ratio_bound = 64);

/// Offsets of the expanding inverses t -> t/r - b_i/r, descending.
std::vector<Scalar> expanding_offsets(const LineIFS& ifs);

/// S(U) = union of all map images of U.
IntervalSet apply_maps(const LineIFS& ifs, const IntervalSet& u);
/// Union of the images of the hull under all words of length n.
IntervalSet union_at_depth(const LineIFS& ifs, int n, std::size_t budget = std::size_t{1} << 22);

struct CoverageReport {
  int depth = 0;
  bool covered = false;
  IntervalSet union_set;
  std::vector<Interval> gaps;  // open intervals
  std::optional<std::size_t> class_count;
};

/// Depth-n union and its gaps in the hull. `budget` bounds the number of
/// stored intervals (and classes when counting is requested).
CoverageReport coverage_at_depth(const LineIFS& ifs, int n, std::size_t budget = std::size_t{1} << 22,
                                 bool count_classes = false);

/// Number of distinct depth-n compositions, i.e. distinct offsets of the
/// n-fold system. Throws BudgetExceeded past `budget` classes.
std::size_t class_count(const LineIFS& ifs, int n, std::size_t budget = std::size_t{1} << 21);

/// Backward orbit search: t is in the attractor iff some chain of
/// preimages stays in the hull forever.
MembershipResult attractor_membership(const LineIFS& ifs, const Scalar& t, std::size_t budget);

enum class MeasureVerdict { MeasureZero, Inconclusive };
const char* measure_verdict_name(MeasureVerdict v);

struct MeasureZeroReport {
  MeasureVerdict verdict = MeasureVerdict::Inconclusive;
  Scalar lambda;
  std::size_t classes = 0;
  Scalar threshold;  // p^{m0}
};

/// Uses lambda = q(p-1)/(p(q-1)); fewer than p^{m0} depth-1 classes forces
/// dimension < 1.
MeasureZeroReport measure_zero_by_count(const CantorPair& pair);

/// Systems for lambda and (p^i / q^j) lambda.
std::pair<LineIFS, LineIFS> scaled_lambda_pair(const CantorPair& pair, const Scalar& lambda, int i, int j);

/// C_a + lambda C_b = (C_a - lambda C_b) + lambda: offsets move by
/// (1 - r) lambda and the hull by lambda.
LineIFS sum_as_difference(const CantorPair& pair, const Scalar& lambda);

/// System for (K', K) at 1/lambda; its attractor scaled by -lambda is the
/// attractor of generate_ifs(pair, lambda).
LineIFS dual_ifs(const CantorPair& pair, const Scalar& lambda);

}  // namespace cantordiff
