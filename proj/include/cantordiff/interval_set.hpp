#pragma once

#include <string>
#include <vector>

#include "cantordiff/scalar.hpp"

namespace cantordiff {

struct Interval {
  Scalar lo;
  Scalar hi;

  Scalar length() const { return hi - lo; }
  bool contains(const Scalar& x) const { return lo <= x && x <= hi; }
  bool contains_open(const Scalar& x) const { return lo < x && x < hi; }
  friend bool operator==(const Interval& x, const Interval& y) = default;
  std::string to_string() const;
};

/// Sorted union of disjoint closed intervals. Intervals that overlap or
/// share an endpoint are merged on construction.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);
  static IntervalSet single(const Scalar& lo, const Scalar& hi);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  bool contains(const Scalar& x) const;
  bool covers(const Interval& iv) const;
  Scalar total_length() const;
  /// Smallest closed interval containing the set (set must be nonempty).
  Interval hull() const;

  /// x -> k*x + d for every point; k < 0 reverses the order.
  IntervalSet affine(const Scalar& k, const Scalar& d) const;
  IntervalSet translated(const Scalar& d) const { return affine(Scalar(1), d); }
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const Interval& iv) const;

  /// The components of `within` minus this set, as open intervals
  /// (lo, hi). Points of `within` not covered but isolated are not reported.
  std::vector<Interval> gaps_in(const Interval& within) const;

  friend bool operator==(const IntervalSet& x, const IntervalSet& y) = default;

 private:
  std::vector<Interval> parts_;
};

/// Sorts and merges in place (touching intervals merge).
void normalize_intervals(std::vector<Interval>& parts);

}  // namespace cantordiff
