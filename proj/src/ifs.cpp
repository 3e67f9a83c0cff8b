#include "cantordiff/ifs.hpp"

#include <algorithm>
#include <unordered_set>

#include "cantordiff/errors.hpp"

namespace cantordiff {

namespace {

Interval pair_hull(const CantorPair& pair, const Scalar& lambda) {
  const Interval& h = pair.first.hull();
  const Interval& h2 = pair.second.hull();
  if (lambda.sign() > 0) return Interval{h.lo - lambda * h2.hi, h.hi - lambda * h2.lo};
  return Interval{h.lo - lambda * h2.lo, h.hi - lambda * h2.hi};
}

void sort_unique(std::vector<Scalar>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

Interval LineMap::image(const Interval& iv) const {
  Scalar a = apply(iv.lo);
  Scalar b = apply(iv.hi);
  if (ratio.sign() < 0) std::swap(a, b);
  return Interval{a, b};
}

LineIFS generate_ifs(const CantorPair& pair, const Scalar& lambda, int ratio_bound) {
  if (lambda.is_zero()) throw PreconditionError("lambda must be nonzero");
  auto lr = log_ratio(pair, ratio_bound);
  if (!lr) {
    throw PreconditionError("no relation p^m0 = q^n0 with m0 <= " + std::to_string(ratio_bound) +
                            "; the difference set is not a finite IFS attractor");
  }
  LineIFS ifs;
  ifs.m0 = lr->m0;
  ifs.n0 = lr->n0;
  ifs.lambda = lambda;
  ifs.ratio = pair.first.p().pow(-lr->m0);
  ifs.hull = pair_hull(pair, lambda);
  std::vector<Scalar> c = pair.first.cylinder_offsets(lr->m0);
  std::vector<Scalar> d = pair.second.cylinder_offsets(lr->n0);
  ifs.offsets.reserve(c.size() * d.size());
  for (const auto& cw : c) {
    for (const auto& dv : d) ifs.offsets.push_back(cw - lambda * dv);
  }
  ifs.raw_count = ifs.offsets.size();
  sort_unique(ifs.offsets);
  ifs.source = pair.first.describe() + " - " + lambda.to_string() + " * " + pair.second.describe();
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    Interval img = ifs.map(i).image(ifs.hull);
    if (img.lo < ifs.hull.lo || ifs.hull.hi < img.hi) {
      throw InvariantViolation("map " + std::to_string(i) + " leaves the hull");
    }
  }
  return ifs;
}

LineIFS generate_ifs_homogeneous(const CantorSet& k, const CantorSet& k2, const Scalar& lambda, int ratio_bound) {
  return generate_ifs(CantorPair{k, k2}, lambda, ratio_bound);
}

std::vector<Scalar> expanding_offsets(const LineIFS& ifs) {
  std::vector<Scalar> a;
  a.reserve(ifs.size());
  for (const auto& b : ifs.offsets) a.push_back(-b / ifs.ratio);
  std::sort(a.begin(), a.end(), [](const Scalar& x, const Scalar& y) { return y < x; });
  return a;
}

IntervalSet apply_maps(const LineIFS& ifs, const IntervalSet& u) {
  std::vector<Interval> parts;
  parts.reserve(ifs.size() * u.size());
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    LineMap m = ifs.map(i);
    for (const auto& iv : u.parts()) parts.push_back(m.image(iv));
  }
  return IntervalSet(std::move(parts));
}

IntervalSet union_at_depth(const LineIFS& ifs, int n, std::size_t budget) {
  if (n < 0) throw PreconditionError("negative depth");
  IntervalSet u = IntervalSet::single(ifs.hull.lo, ifs.hull.hi);
  for (int k = 0; k < n; ++k) {
    if (u.size() * ifs.size() > budget) {
      throw BudgetExceeded("depth " + std::to_string(k + 1) + " union needs more than " + std::to_string(budget) +
                           " intervals");
    }
    u = apply_maps(ifs, u);
  }
  return u;
}

CoverageReport coverage_at_depth(const LineIFS& ifs, int n, std::size_t budget, bool count_classes) {
  if (n < 1) throw PreconditionError("coverage depth must be at least 1");
  CoverageReport r;
  r.depth = n;
  r.union_set = union_at_depth(ifs, n, budget);
  r.gaps = r.union_set.gaps_in(ifs.hull);
  r.covered = r.gaps.empty();
  if (count_classes) r.class_count = class_count(ifs, n, budget);
  return r;
}

std::size_t class_count(const LineIFS& ifs, int n, std::size_t budget) {
  if (n < 0) throw PreconditionError("negative depth");
  std::vector<Scalar> cur{Scalar(0)};
  for (int k = 0; k < n; ++k) {
    std::unordered_set<Scalar, ScalarHash> next;
    for (const auto& b : cur) {
      Scalar rb = ifs.ratio * b;
      for (const auto& bi : ifs.offsets) {
        next.insert(rb + bi);
        if (next.size() > budget) {
          throw BudgetExceeded("depth " + std::to_string(k + 1) + " has more than " + std::to_string(budget) +
                               " classes");
        }
      }
    }
    cur.assign(next.begin(), next.end());
  }
  return cur.size();
}

MembershipResult attractor_membership(const LineIFS& ifs, const Scalar& t, std::size_t budget) {
  if (budget < 1) throw PreconditionError("membership budget must be at least 1");
  if (!ifs.hull.contains(t)) {
    MembershipResult r;
    r.verdict = Verdict::Out;
    r.states = 1;
    return r;
  }
  auto expand = [&](const Scalar& x, std::vector<std::pair<std::string, Scalar>>& out) {
    for (std::size_t i = 0; i < ifs.size(); ++i) {
      Scalar y = (x - ifs.offsets[i]) / ifs.ratio;
      if (ifs.hull.contains(y)) out.emplace_back("S" + std::to_string(i), std::move(y));
    }
  };
  return orbit_search<Scalar, ScalarHash>(t, expand, budget);
}

const char* measure_verdict_name(MeasureVerdict v) {
  return v == MeasureVerdict::MeasureZero ? "measure-zero" : "inconclusive";
}

MeasureZeroReport measure_zero_by_count(const CantorPair& pair) {
  const Scalar& p = pair.first.p();
  const Scalar& q = pair.second.p();
  MeasureZeroReport r;
  r.lambda = q * (p - 1) / (p * (q - 1));
  LineIFS ifs = generate_ifs(pair, r.lambda);
  r.classes = ifs.size();
  r.threshold = p.pow(ifs.m0);
  r.verdict = Scalar(static_cast<long>(r.classes)) < r.threshold ? MeasureVerdict::MeasureZero
                                                                  : MeasureVerdict::Inconclusive;
  return r;
}

std::pair<LineIFS, LineIFS> scaled_lambda_pair(const CantorPair& pair, const Scalar& lambda, int i, int j) {
  Scalar factor = pair.first.p().pow(i) / pair.second.p().pow(j);
  return {generate_ifs(pair, lambda), generate_ifs(pair, factor * lambda)};
}

LineIFS sum_as_difference(const CantorPair& pair, const Scalar& lambda) {
  if (!pair.second.is_middle()) throw PreconditionError("the sum identity needs a symmetric (middle) second set");
  LineIFS ifs = generate_ifs(pair, lambda);
  Scalar shift = (1 - ifs.ratio) * lambda;
  for (auto& b : ifs.offsets) b += shift;
  ifs.hull = Interval{ifs.hull.lo + lambda, ifs.hull.hi + lambda};
  ifs.source = pair.first.describe() + " + " + lambda.to_string() + " * " + pair.second.describe();
  return ifs;
}

LineIFS dual_ifs(const CantorPair& pair, const Scalar& lambda) {
  if (lambda.is_zero()) throw PreconditionError("lambda must be nonzero");
  return generate_ifs(pair.swapped(), lambda.inverse());
}

}  // namespace cantordiff
