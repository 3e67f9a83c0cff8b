#include "cantordiff/full_interval.hpp"

#include "cantordiff/errors.hpp"
#include "cantordiff/renorm.hpp"

namespace cantordiff {

namespace {

// u*a + v*b = 1 for coprime a, b.
std::pair<long, long> bezout(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long k = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - k * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - k * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - k * t);
  }
  if (old_r != 1) throw PreconditionError("exponents must be coprime");
  return {old_s, old_t};
}

void require_middle(const CantorPair& pair) {
  if (!pair.both_middle()) throw PreconditionError("full-interval analysis needs two middle Cantor sets");
}

Interval scaled(const Interval& iv, const Scalar& k) { return Interval{k * iv.lo, k * iv.hi}; }

}  // namespace

FullIntervalAnalysis analyze(const CantorPair& pair, const DeclaredRatio& ratio) {
  require_middle(pair);
  FullIntervalAnalysis a;
  a.alpha = pair.first.alpha();
  a.beta = pair.second.alpha();
  a.p = pair.first.p();
  a.q = pair.second.p();
  a.thickness_product = thickness(pair.first) * thickness(pair.second);
  if (!(a.thickness_product < 1)) {
    throw PreconditionError("thickness product " + a.thickness_product.to_string() +
                            " >= 1; use the thickness route");
  }
  a.s0 = a.q / (a.q - 2);
  a.s1 = (a.p - 2) / a.p;
  a.gap_i = Interval{a.q / (a.p * (a.q - 2)), a.q * (a.p - 2) / a.p};

  switch (ratio.kind) {
    case DeclaredRatio::Kind::Irrational:
      a.irrational = true;
      return a;
    case DeclaredRatio::Kind::Rational:
      if (!ratio.gamma || ratio.n0 < 1 || ratio.m0 < 1) throw PreconditionError("declared ratio needs n0, m0 >= 1 and gamma");
      if (ratio.gamma->pow(ratio.n0) != a.p || ratio.gamma->pow(ratio.m0) != a.q) {
        throw PreconditionError("declared gamma does not satisfy p = g^n0, q = g^m0");
      }
      a.gamma = ratio.gamma;
      a.n0 = ratio.n0;
      a.m0 = ratio.m0;
      break;
    case DeclaredRatio::Kind::Auto: {
      auto lr = log_ratio(a.p, a.q);
      if (!lr) throw PreconditionError("no exact relation p^m0 = q^n0 found; declare the ratio");
      auto [u, v] = bezout(lr->n0, lr->m0);
      a.gamma = a.p.pow(u) * a.q.pow(v);
      a.n0 = lr->n0;
      a.m0 = lr->m0;
      break;
    }
  }
  const Scalar& g = *a.gamma;
  Scalar lo = (1 - 2 * a.alpha) / (g * a.beta);
  Scalar hi = a.alpha / (1 - 2 * a.beta);
  bool nonempty = lo <= hi;
  if (nonempty != (g.inverse() <= a.thickness_product)) {
    throw InvariantViolation("J is nonempty exactly when 1/g <= thickness product");
  }
  if (!nonempty) return a;
  a.j = Interval{lo, hi};
  std::vector<Interval> parts;
  for (int n = -a.m0 + 1; n <= a.n0; ++n) parts.push_back(scaled(*a.j, g.pow(n)));
  a.lambda_set = IntervalSet(std::move(parts));
  Interval h = a.lambda_set.hull();
  if (h.lo < a.s1 || a.s0 < h.hi) throw InvariantViolation("Lambda must lie in [s1, s0]");
  return a;
}

const char* full_verdict_name(FullVerdict v) { return v == FullVerdict::Full ? "full" : "not-full"; }

FullCertificate is_full(const CantorPair& pair, const Scalar& lambda, const DeclaredRatio& ratio) {
  require_middle(pair);
  if (lambda.is_zero()) throw PreconditionError("lambda must be nonzero");
  FullCertificate c;
  c.lambda = lambda.abs();
  Scalar tt = thickness(pair.first) * thickness(pair.second);
  if (!(tt < 1)) {
    const Scalar& p = pair.first.p();
    const Scalar& q = pair.second.p();
    c.route = "thickness";
    c.window = Interval{(p - 2) / p, q / (q - 2)};
    bool full = full_interval_via_thickness(pair, c.lambda);
    if (full != c.window.contains(c.lambda)) throw InvariantViolation("thickness window disagrees with [s1, s0]");
    c.verdict = full ? FullVerdict::Full : FullVerdict::NotFull;
    return c;
  }
  FullIntervalAnalysis a = analyze(pair, ratio);
  c.window = Interval{a.s1, a.s0};
  if (a.irrational) {
    c.route = "irrational";
    return c;
  }
  if (!a.j) {
    c.route = "empty-lambda-set";
    return c;
  }
  c.route = "lambda-set";
  for (int n = -a.m0 + 1; n <= a.n0; ++n) {
    Interval piece = scaled(*a.j, a.gamma->pow(n));
    if (piece.contains(c.lambda)) {
      c.verdict = FullVerdict::Full;
      c.power = n;
      for (const auto& part : a.lambda_set.parts()) {
        if (part.contains(c.lambda)) c.window = part;
      }
      return c;
    }
  }
  return c;
}

std::vector<Scalar> t_map(const FullIntervalAnalysis& a, const Scalar& x) {
  std::vector<Scalar> out;
  if (a.s1 <= x && x <= a.gap_i.lo) out.push_back(a.p * x);
  if (a.gap_i.hi <= x && x <= a.s0) out.push_back(x / a.q);
  if (out.empty()) throw PreconditionError(x.to_string() + " is outside the domain of T");
  return out;
}

Interval t_map(const FullIntervalAnalysis& a, const Interval& iv) {
  if (a.s1 <= iv.lo && iv.hi <= a.gap_i.lo) return scaled(iv, a.p);
  if (a.gap_i.hi <= iv.lo && iv.hi <= a.s0) return scaled(iv, a.q.inverse());
  throw PreconditionError(iv.to_string() + " does not lie in one piece of T");
}

Interval s_map(const FullIntervalAnalysis& a, const Interval& iv) {
  if (a.s1 <= iv.lo && iv.hi <= (a.q - 2).inverse()) return scaled(iv, a.q);
  if (a.p - 2 <= iv.lo && iv.hi <= a.s0) return scaled(iv, a.p.inverse());
  throw PreconditionError(iv.to_string() + " does not lie in one piece of S");
}

Scalar accounting_total(const FullIntervalAnalysis& a) {
  if (!a.j) throw PreconditionError("accounting identity needs a nonempty J");
  const int n = a.n0 + a.m0;
  Scalar total(0);
  Interval x = *a.j;
  for (int k = 0; k < n; ++k) {
    total += x.length();
    if (k + 1 < n) x = t_map(a, x);
  }
  Interval y = a.gap_i;
  for (int k = 0; k + 1 < n; ++k) {
    total += y.length();
    if (k + 2 < n) y = s_map(a, y);
  }
  return total;
}

bool sum_full(const CantorPair& pair, const DeclaredRatio& ratio) {
  require_middle(pair);
  Scalar tt = thickness(pair.first) * thickness(pair.second);
  if (!(tt < 1)) return is_full(pair, Scalar(1), ratio).verdict == FullVerdict::Full;
  FullIntervalAnalysis a = analyze(pair, ratio);
  if (a.irrational) return false;
  const Scalar& g = *a.gamma;
  // n in [log_g((1-2b)/a), 1 - log_g((1-2a)/b)] for some n in -m0+1 .. n0.
  Scalar lower = (1 - 2 * a.beta) / a.alpha;
  Scalar upper = (1 - 2 * a.alpha) / a.beta;
  bool found = false;
  for (int n = -a.m0 + 1; n <= a.n0 && !found; ++n) {
    found = g.pow(n) >= lower && g.pow(n - 1) * upper <= 1;
  }
  bool in_lambda = a.j && a.lambda_set.contains(Scalar(1));
  if (found != in_lambda) throw InvariantViolation("index test disagrees with 1 in Lambda");
  return found;
}

}  // namespace cantordiff
