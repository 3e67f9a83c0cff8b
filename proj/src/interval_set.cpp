#include "cantordiff/interval_set.hpp"

#include <algorithm>

#include "cantordiff/errors.hpp"

namespace cantordiff {

std::string Interval::to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }

void normalize_intervals(std::vector<Interval>& parts) {
  for (const auto& iv : parts) {
    if (iv.hi < iv.lo) throw PreconditionError("interval with hi < lo: " + iv.to_string());
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (out > 0 && parts[i].lo <= parts[out - 1].hi) {
      if (parts[out - 1].hi < parts[i].hi) parts[out - 1].hi = parts[i].hi;
    } else {
      if (out != i) parts[out] = std::move(parts[i]);
      ++out;
    }
  }
  parts.resize(out);
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
  normalize_intervals(parts_);
}

IntervalSet IntervalSet::single(const Scalar& lo, const Scalar& hi) {
  return IntervalSet(std::vector<Interval>{Interval{lo, hi}});
}

bool IntervalSet::contains(const Scalar& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Scalar& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  --it;
  return x <= it->hi;
}

bool IntervalSet::covers(const Interval& iv) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), iv.lo,
                             [](const Scalar& v, const Interval& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  --it;
  return iv.hi <= it->hi;
}

Scalar IntervalSet::total_length() const {
  Scalar s;
  for (const auto& iv : parts_) s += iv.length();
  return s;
}

Interval IntervalSet::hull() const {
  if (parts_.empty()) throw PreconditionError("hull of an empty interval set");
  return Interval{parts_.front().lo, parts_.back().hi};
}

IntervalSet IntervalSet::affine(const Scalar& k, const Scalar& d) const {
  if (k.is_zero()) throw PreconditionError("degenerate affine map");
  std::vector<Interval> out;
  out.reserve(parts_.size());
  bool flip = k.sign() < 0;
  for (const auto& iv : parts_) {
    Scalar a = k * iv.lo + d;
    Scalar b = k * iv.hi + d;
    out.push_back(flip ? Interval{b, a} : Interval{a, b});
  }
  if (flip) std::reverse(out.begin(), out.end());
  IntervalSet r;
  r.parts_ = std::move(out);
  return r;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    Scalar lo = max(p.lo, iv.lo);
    Scalar hi = min(p.hi, iv.hi);
    if (lo <= hi) out.push_back(Interval{lo, hi});
  }
  IntervalSet r;
  r.parts_ = std::move(out);
  return r;
}

std::vector<Interval> IntervalSet::gaps_in(const Interval& within) const {
  std::vector<Interval> gaps;
  Scalar cursor = within.lo;
  for (const auto& p : parts_) {
    if (p.hi < within.lo) continue;
    if (within.hi < p.lo) break;
    if (cursor < p.lo) gaps.push_back(Interval{cursor, p.lo});
    if (cursor < p.hi) cursor = p.hi;
  }
  if (cursor < within.hi) gaps.push_back(Interval{cursor, within.hi});
  return gaps;
}

}  // namespace cantordiff
