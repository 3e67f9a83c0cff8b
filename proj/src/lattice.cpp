#include "cantordiff/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "cantordiff/ifs.hpp"

namespace cantordiff {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw LatticeOverflow("lattice coordinate exceeds int64");
  }
  return static_cast<std::int64_t>(x);
}

int sgn(i128 x) { return (x > 0) - (x < 0); }

std::optional<std::int64_t> to_int64(const Rational& q) {
  if (q.get_den() != 1) return std::nullopt;
  if (!q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

}  // namespace

ZRing::ZRing(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
  disc_ = narrow(static_cast<i128>(a) * a + 4 * static_cast<i128>(b));
  root_ = (static_cast<double>(a) + std::sqrt(static_cast<double>(disc_))) / 2;
}

ZPoint ZRing::add(const ZPoint& x, const ZPoint& y) const {
  ZPoint r;
  if (__builtin_add_overflow(x.u, y.u, &r.u) || __builtin_add_overflow(x.v, y.v, &r.v)) {
    throw LatticeOverflow("lattice addition overflows int64");
  }
  return r;
}

ZPoint ZRing::sub(const ZPoint& x, const ZPoint& y) const {
  ZPoint r;
  if (__builtin_sub_overflow(x.u, y.u, &r.u) || __builtin_sub_overflow(x.v, y.v, &r.v)) {
    throw LatticeOverflow("lattice subtraction overflows int64");
  }
  return r;
}

ZPoint ZRing::mul(const ZPoint& x, const ZPoint& y) const {
  i128 vv = static_cast<i128>(x.v) * y.v;
  i128 u = static_cast<i128>(x.u) * y.u + vv * b_;
  i128 v = static_cast<i128>(x.u) * y.v + static_cast<i128>(x.v) * y.u + vv * a_;
  return ZPoint{narrow(u), narrow(v)};
}

int ZRing::sign(const ZPoint& x) const {
  // 2x = X + v*sqrt(disc) with X = 2u + a v.
  i128 big = static_cast<i128>(2) * x.u + static_cast<i128>(a_) * x.v;
  int sx = sgn(big);
  int sv = x.v > 0 ? 1 : (x.v < 0 ? -1 : 0);
  if (sv == 0) return sx;
  if (sx == 0 || sx == sv) return sv;
  i128 x2, v2, rhs;
  i128 vv = x.v;
  if (__builtin_mul_overflow(big, big, &x2) || __builtin_mul_overflow(vv, vv, &v2) ||
      __builtin_mul_overflow(v2, static_cast<i128>(disc_), &rhs)) {
    throw LatticeOverflow("lattice sign test overflows int128");
  }
  if (x2 > rhs) return sx;
  if (x2 < rhs) return sv;
  return 0;  // unreachable for irrational g
}

double ZRing::to_double(const ZPoint& x) const {
  return static_cast<double>(x.u) + static_cast<double>(x.v) * root_;
}

ZPoint LatticeSystem::to_lattice(const Scalar& x) const {
  Rational u = x.u() * Rational(scale);
  Rational v = x.v() * Rational(scale);
  u.canonicalize();
  v.canonicalize();
  auto iu = to_int64(u);
  auto iv = to_int64(v);
  if (!iu || !iv) throw LatticeOverflow("value " + x.to_string() + " is not integral after scaling");
  return ZPoint{*iu, *iv};
}

Scalar LatticeSystem::to_scalar(const ZPoint& x) const {
  Rational d(scale);
  if (field) return Scalar(Rational(x.u) / d, Rational(x.v) / d, field);
  return Scalar(Rational(x.u) / d);
}

std::optional<LatticeSystem> make_lattice(const LineIFS& ifs) {
  LatticeSystem sys;
  std::vector<Scalar> all = ifs.offsets;
  all.push_back(ifs.hull.lo);
  all.push_back(ifs.hull.hi);
  all.push_back(ifs.ratio);
  for (const auto& x : all) {
    if (x.field()) sys.field = x.field();
  }
  if (sys.field) {
    auto a = to_int64(sys.field->a);
    auto b = to_int64(sys.field->b);
    if (!a || !b) return std::nullopt;
    sys.ring = ZRing(*a, *b);
  }
  Scalar rho = ifs.ratio.inverse();
  if (rho.u().get_den() != 1 || rho.v().get_den() != 1) return std::nullopt;
  all.pop_back();
  sys.scale = common_denominator(all);
  try {
    Integer saved = sys.scale;
    sys.scale = 1;
    sys.rho = sys.to_lattice(rho);
    sys.scale = saved;
    sys.hull_lo = sys.to_lattice(ifs.hull.lo);
    sys.hull_hi = sys.to_lattice(ifs.hull.hi);
    for (const auto& b : ifs.offsets) sys.first.push_back(sys.ring.mul(sys.rho, sys.to_lattice(b)));
  } catch (const LatticeOverflow&) {
    return std::nullopt;
  }
  return sys;
}

std::vector<ZPoint> lattice_classes(const LatticeSystem& sys, int n, std::size_t budget) {
  if (n < 0) throw PreconditionError("negative depth");
  std::vector<ZPoint> cur{ZPoint{}};
  std::vector<ZPoint> sorted_first = sys.first;
  std::sort(sorted_first.begin(), sorted_first.end(),
            [&](const ZPoint& x, const ZPoint& y) { return sys.ring.less(x, y); });
  for (int k = 0; k < n; ++k) {
    // For a fixed parent, children rho*d + c_i ascend with c_i, and for a
    // fixed c_i they ascend with d; merge the per-parent streams.
    std::vector<ZPoint> scaled(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) scaled[i] = sys.ring.mul(sys.rho, cur[i]);
    auto cmp = [&](const std::pair<ZPoint, std::size_t>& x, const std::pair<ZPoint, std::size_t>& y) {
      return sys.ring.less(y.first, x.first);
    };
    // Stream j walks parents in order for offset j.
    std::priority_queue<std::pair<ZPoint, std::size_t>, std::vector<std::pair<ZPoint, std::size_t>>, decltype(cmp)>
        heap(cmp);
    std::vector<std::size_t> pos(sorted_first.size(), 0);
    for (std::size_t j = 0; j < sorted_first.size(); ++j) {
      if (!scaled.empty()) heap.emplace(sys.ring.add(scaled[0], sorted_first[j]), j);
    }
    std::vector<ZPoint> next;
    while (!heap.empty()) {
      auto [x, j] = heap.top();
      heap.pop();
      if (next.empty() || !(next.back() == x)) {
        next.push_back(x);
        if (next.size() > budget) {
          throw BudgetExceeded("depth " + std::to_string(k + 1) + " has more than " + std::to_string(budget) +
                               " classes");
        }
      }
      if (++pos[j] < scaled.size()) heap.emplace(sys.ring.add(scaled[pos[j]], sorted_first[j]), j);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace cantordiff
