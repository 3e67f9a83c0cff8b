#include "cantordiff/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cantordiff/errors.hpp"

namespace cantordiff {

CantorSet CantorSet::middle(const Scalar& alpha) {
  if (!(alpha > 0) || !(2 * alpha < 1)) {
    throw PreconditionError("middle Cantor set needs 0 < alpha < 1/2, got " + alpha.to_string());
  }
  CantorSet c;
  c.p_ = alpha.inverse();
  c.offsets_ = {Scalar(0).in_field(alpha.field()), 1 - c.p_};
  c.hull_ = Interval{Scalar(0), Scalar(1)};
  c.alpha_ = alpha;
  return c;
}

CantorSet CantorSet::homogeneous(const Scalar& p, std::vector<Scalar> offsets, const Interval& hull) {
  if (!(p > 1)) throw PreconditionError("expansion must exceed 1");
  if (offsets.size() < 2) throw PreconditionError("a Cantor set needs at least two branches");
  if (!(hull.lo < hull.hi)) throw PreconditionError("degenerate hull");
  // Branch (A - e)/p increases as e decreases.
  std::sort(offsets.begin(), offsets.end(), [](const Scalar& x, const Scalar& y) { return y < x; });
  CantorSet c;
  c.p_ = p;
  c.offsets_ = std::move(offsets);
  c.hull_ = hull;
  for (std::size_t i = 0; i < c.offsets_.size(); ++i) {
    Interval b = c.branch(i);
    if (b.lo < hull.lo || hull.hi < b.hi) throw PreconditionError("branch " + b.to_string() + " leaves the hull");
    if (i > 0 && !(c.branch(i - 1).hi < b.lo)) throw PreconditionError("branches must be pairwise disjoint");
  }
  if (c.branch(0).lo != hull.lo || c.branch(c.offsets_.size() - 1).hi != hull.hi) {
    throw PreconditionError("hull endpoints must belong to the Cantor set");
  }
  return c;
}

const Scalar& CantorSet::alpha() const {
  if (!alpha_) throw PreconditionError("not a middle Cantor set");
  return *alpha_;
}

Interval CantorSet::branch(std::size_t i) const {
  const Scalar& e = offsets_.at(i);
  return Interval{(hull_.lo - e) / p_, (hull_.hi - e) / p_};
}

std::vector<Scalar> CantorSet::cylinder_offsets(int n) const {
  if (n < 0) throw PreconditionError("negative depth");
  std::vector<Scalar> cur{Scalar(0)};
  for (int k = 0; k < n; ++k) {
    std::vector<Scalar> next;
    next.reserve(cur.size() * offsets_.size());
    for (const auto& e : offsets_) {
      for (const auto& c : cur) next.push_back((c - e) / p_);
    }
    cur = std::move(next);
  }
  return cur;
}

std::string CantorSet::describe() const {
  if (alpha_) return "C(" + alpha_->to_string() + ")";
  std::string s = "K(p=" + p_.to_string() + "; e=";
  for (std::size_t i = 0; i < offsets_.size(); ++i) s += (i ? "," : "") + offsets_[i].to_string();
  return s + "; hull=" + hull_.to_string() + ")";
}

Scalar thickness(const CantorSet& set) {
  if (set.is_middle()) {
    const Scalar& a = set.alpha();
    return a / (1 - 2 * a);
  }
  if (set.branch_count() != 2) throw PreconditionError("thickness is implemented for two-branch sets");
  Interval left = set.branch(0);
  Interval right = set.branch(1);
  return min(left.length(), right.length()) / (right.lo - left.hi);
}

Enclosure hausdorff_dim(const CantorSet& set, mpfr_prec_t bits) {
  Enclosure n = Enclosure::point(Rational(static_cast<long>(set.branch_count())), bits);
  return log(n) / log(set.p().enclose(bits));
}

IntervalSet level_intervals(const CantorSet& set, int n, int max_depth) {
  if (n < 0) throw PreconditionError("negative depth");
  if (n > max_depth) throw BudgetExceeded("level_intervals depth " + std::to_string(n) + " exceeds " + std::to_string(max_depth));
  Scalar scale = set.p().pow(-n);
  std::vector<Interval> parts;
  for (const auto& c : set.cylinder_offsets(n)) {
    parts.push_back(Interval{c + scale * set.hull().lo, c + scale * set.hull().hi});
  }
  return IntervalSet(std::move(parts));
}

std::optional<LogRatio> log_ratio(const Scalar& p, const Scalar& q, int bound) {
  if (!(p > 1) || !(q > 1)) throw PreconditionError("log_ratio needs p, q > 1");
  double lp = std::log(p.to_double());
  double lq = std::log(q.to_double());
  for (int m0 = 1; m0 <= bound; ++m0) {
    long centre = std::lround(m0 * lp / lq);
    for (long n0 = std::max(1L, centre - 1); n0 <= centre + 1; ++n0) {
      if (std::gcd(static_cast<long>(m0), n0) != 1) continue;
      if (p.pow(m0) == q.pow(n0)) return LogRatio{static_cast<int>(n0), m0};
    }
  }
  return std::nullopt;
}

std::optional<LogRatio> log_ratio(const CantorPair& pair, int bound) {
  return log_ratio(pair.first.p(), pair.second.p(), bound);
}

Enclosure hd_sum(const CantorPair& pair, mpfr_prec_t bits) {
  return hausdorff_dim(pair.first, bits) + hausdorff_dim(pair.second, bits);
}

bool in_omega(const CantorPair& pair, mpfr_prec_t max_bits) {
  if (!pair.both_middle()) throw PreconditionError("in_omega needs two middle Cantor sets");
  if (!(thickness(pair.first) * thickness(pair.second) < 1)) return false;
  if (auto lr = log_ratio(pair)) {
    // p^m0 = q^n0 = G gives HD sum = (m0 + n0) log 2 / log G.
    Scalar big = pair.first.p().pow(lr->m0);
    Scalar two = Scalar(2).pow(lr->m0 + lr->n0);
    return two > big;
  }
  for (mpfr_prec_t bits = 64; bits <= max_bits; bits *= 2) {
    Enclosure s = hd_sum(pair, bits);
    Enclosure one = Enclosure::point(Rational(1), bits);
    if (one.certainly_less(s)) return true;
    if (s.certainly_less(one)) return false;
  }
  throw BudgetExceeded("HD sum comparison with 1 undecided at the precision cap");
}

}  // namespace cantordiff
