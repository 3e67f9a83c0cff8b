#include "cantordiff/renorm.hpp"

#include <deque>
#include <functional>
#include <unordered_set>

#include "cantordiff/errors.hpp"

namespace cantordiff {

namespace {

struct PointHash {
  std::size_t operator()(const PlanePoint& x) const {
    return x.s.hash() * 0x9e3779b97f4a7c15ULL ^ x.t.hash();
  }
};

}  // namespace

PlanePoint PlaneOp::apply(const PlanePoint& x) const {
  return PlanePoint{s_scale * x.s, t_scale * x.t + st_coeff * x.s + t_offset};
}

std::vector<PlaneOp> make_operators(const CantorPair& pair) {
  std::vector<PlaneOp> ops;
  const CantorSet& k = pair.first;
  const CantorSet& k2 = pair.second;
  for (std::size_t i = 0; i < k.branch_count(); ++i) {
    ops.push_back(PlaneOp{"T" + std::to_string(i), k.p(), k.p(), Scalar(0), k.offsets()[i], false});
  }
  Scalar qinv = k2.p().inverse();
  for (std::size_t j = 0; j < k2.branch_count(); ++j) {
    ops.push_back(PlaneOp{"T'" + std::to_string(j), qinv, Scalar(1), -k2.offsets()[j] * qinv, Scalar(0), true});
  }
  return ops;
}

PlanePoint apply_word(const std::vector<PlaneOp>& ops, const std::vector<int>& word, PlanePoint x) {
  for (int w : word) {
    if (x.s.is_zero()) throw PreconditionError("s must stay nonzero");
    x = ops.at(static_cast<std::size_t>(w)).apply(x);
  }
  return x;
}

Interval difference_hull(const CantorPair& pair, const Scalar& s) {
  const Interval& h = pair.first.hull();
  const Interval& h2 = pair.second.hull();
  if (s.sign() >= 0) return Interval{h.lo - s * h2.hi, h.hi - s * h2.lo};
  return Interval{h.lo - s * h2.lo, h.hi - s * h2.hi};
}

// ---------------------------------------------------------------- membership

MembershipResult membership(const Scalar& t, const Scalar& s, const CantorPair& pair, std::size_t budget,
                            const RecurrentRegion* verified_region) {
  if (s.is_zero()) throw PreconditionError("membership needs s != 0");
  if (budget < 1) throw PreconditionError("membership budget must be at least 1");
  PlanePoint start{s, t};
  if (!difference_hull(pair, s).contains(t)) {
    MembershipResult r;
    r.verdict = Verdict::Out;
    r.states = 1;
    return r;
  }
  const std::vector<PlaneOp> ops = make_operators(pair);
  const Scalar window = s.abs();
  // x_i - s*y_j with x_i, y_j fixed by a branch lies in K - sK' for every s,
  // and every operator maps such a line to itself.
  std::vector<Scalar> fx, fy;
  for (const auto& e : pair.first.offsets()) fx.push_back(-e / (pair.first.p() - 1));
  for (const auto& f : pair.second.offsets()) fy.push_back(-f / (pair.second.p() - 1));
  auto expand = [&](const PlanePoint& x, std::vector<std::pair<std::string, PlanePoint>>& out) {
    if (verified_region && verified_region->contains_interior(x)) {
      out.emplace_back("R", x);
      return;
    }
    for (std::size_t i = 0; i < fx.size(); ++i) {
      for (std::size_t j = 0; j < fy.size(); ++j) {
        if (x.t == fx[i] - x.s * fy[j]) {
          out.emplace_back("F" + std::to_string(i) + std::to_string(j), x);
          return;
        }
      }
    }
    bool primed = x.s.abs() >= window;
    for (const auto& op : ops) {
      if (op.primed != primed) continue;
      PlanePoint y = op.apply(x);
      if (difference_hull(pair, y.s).contains(y.t)) out.emplace_back(op.name, std::move(y));
    }
  };
  return orbit_search<PlanePoint, PointHash>(start, expand, budget);
}

// ---------------------------------------------------------------- thickness route

namespace {

struct TwoBranch {
  Scalar a, b;       // hulls [0, a] and [0, b]
  Scalar p, q;       // common slopes
  Scalar e1, f1;     // right-branch offsets (left ones are 0)
};

TwoBranch two_branch_data(const CantorPair& pair) {
  const CantorSet& k = pair.first;
  const CantorSet& k2 = pair.second;
  if (k.branch_count() != 2 || k2.branch_count() != 2) {
    throw PreconditionError("the recurrent-set construction needs two-branch Markov partitions");
  }
  if (!k.hull().lo.is_zero() || !k2.hull().lo.is_zero()) throw PreconditionError("hulls must start at 0");
  if (!k.offsets()[0].is_zero() || !k2.offsets()[0].is_zero()) throw PreconditionError("left branches must fix 0");
  return TwoBranch{k.hull().hi, k2.hull().hi, k.p(), k2.p(), k.offsets()[1], k2.offsets()[1]};
}

}  // namespace

ThicknessWindow thickness_window(const CantorPair& pair) {
  TwoBranch d = two_branch_data(pair);
  Scalar s1 = (-d.e1 / d.p - d.a / d.p) / d.b;
  Scalar s0 = d.a / (-d.f1 / d.q - d.b / d.q);
  return ThicknessWindow{s1, s0};
}

bool full_interval_via_thickness(const CantorPair& pair, const Scalar& lambda) {
  Scalar tt = thickness(pair.first) * thickness(pair.second);
  if (tt < 1) throw PreconditionError("thickness route needs thickness product >= 1");
  ThicknessWindow w = thickness_window(pair);
  return w.s1 <= lambda && lambda <= w.s0;
}

// ---------------------------------------------------------------- recurrent set

bool RecurrentRegion::contains(const PlanePoint& x) const {
  return s_min <= x.s && x.s <= s_max && t_lower(x.s) <= x.t && x.t <= t_upper();
}

bool RecurrentRegion::contains_interior(const PlanePoint& x) const {
  return s_min < x.s && x.s < s_max && t_lower(x.s) < x.t && x.t < t_upper();
}

RecurrentRegion build_recurrent_set(const CantorPair& pair) {
  TwoBranch d = two_branch_data(pair);
  Scalar tt = thickness(pair.first) * thickness(pair.second);
  if (!(tt > 1)) throw PreconditionError("recurrent set needs thickness product > 1, got " + tt.to_string());
  // Equal slopes: p0 = p1 = p, q0 = q1 = q.
  const Scalar& p = d.p;
  const Scalar& q = d.q;
  Scalar s0 = -q * q * d.a / (q * d.f1 + q * d.b);
  Scalar second = (d.b / q) / (-d.f1 / q - d.b / q);
  Scalar eps = Rational(1, 2);
  for (int k = 1; k <= 60; ++k, eps = eps / 2) {
    Scalar delta = d.a * eps / 2;
    Scalar first = (d.a / p) / (-d.e1 / p - d.a / p + delta / p);
    if (first * second > (1 - eps).inverse()) {
      RecurrentRegion r;
      r.a = d.a;
      r.b = d.b;
      r.s0 = s0;
      r.eps = eps;
      r.delta = delta;
      r.p_max = p;
      r.p0 = p;
      r.s_max = (1 - eps) * s0;
      r.s_min = r.s_max / (p * q);
      return r;
    }
  }
  throw InvariantViolation("no (eps, delta) satisfies the recurrence inequality");
}

RecurrenceReport verify_recurrence(const RecurrentRegion& region, const CantorPair& pair, int res, int step_cap) {
  if (res < 2) throw PreconditionError("grid resolution must be at least 2");
  const std::vector<PlaneOp> ops = make_operators(pair);
  std::vector<const PlaneOp*> t_ops, tp_ops;
  for (const auto& op : ops) (op.primed ? tp_ops : t_ops).push_back(&op);
  const Scalar a_split = region.s_max / region.p_max;
  const Scalar b_split = region.a / region.p0;
  const Scalar s_lo = region.s_min / (region.p_max * region.p_max * 4);
  const Scalar s_hi = region.s_max * region.p_max * 4;

  auto alive = [&](const PlanePoint& x) {
    return s_lo < x.s && x.s < s_hi && difference_hull(pair, x.s).contains(x.t);
  };

  RecurrenceReport report;
  for (int i = 0; i < res; ++i) {
    Scalar s = region.s_min + (region.s_max - region.s_min) * Scalar(Rational(i, res - 1));
    Scalar lo = region.t_lower(s);
    Scalar hi = region.t_upper();
    for (int j = 0; j < res; ++j) {
      Scalar t = lo + (hi - lo) * Scalar(Rational(j, res - 1));
      PlanePoint x{s, t};
      ++report.points;
      std::vector<const PlaneOp*> first;
      if (s > a_split) {
        first = tp_ops;
        ++report.case_a;
      } else if (t < b_split) {
        first = {t_ops.front()};
        ++report.case_b;
      } else {
        first = {t_ops.back()};
        ++report.case_c;
      }
      std::vector<PlanePoint> layer;
      std::unordered_set<PlanePoint, PointHash> seen;
      for (const PlaneOp* op : first) {
        PlanePoint y = op->apply(x);
        if (alive(y) && seen.insert(y).second) layer.push_back(std::move(y));
      }
      int steps = 1;
      bool ok = false;
      while (!layer.empty() && steps <= step_cap) {
        for (const auto& y : layer) {
          if (region.contains_interior(y)) {
            ok = true;
            break;
          }
        }
        if (ok) break;
        std::vector<PlanePoint> next;
        for (const auto& y : layer) {
          for (const auto& op : ops) {
            PlanePoint z = op.apply(y);
            if (alive(z) && seen.insert(z).second) next.push_back(std::move(z));
          }
        }
        layer = std::move(next);
        ++steps;
      }
      if (ok) {
        report.max_steps = std::max(report.max_steps, steps);
      } else {
        ++report.failures;
        if (!report.first_failure) report.first_failure = x;
      }
    }
  }
  return report;
}

}  // namespace cantordiff
