#include "cantordiff/nonlinear.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "cantordiff/errors.hpp"

namespace cantordiff {

// ---- catalog ----

SmoothFn SmoothFn::affine(const Rational& a, const Rational& b) {
  if (a == 0) throw PreconditionError("affine slope must be nonzero");
  SmoothFn f(Kind::Affine);
  f.a_ = a;
  f.b_ = b;
  return f;
}

SmoothFn SmoothFn::parse(const std::string& text) {
  if (text == "square") return square();
  if (text == "sqrt") return sqrt();
  if (text == "sin") return sin();
  if (text == "cos") return cos();
  if (text == "neg_square") return neg_square();
  if (text == "neg_cos") return neg_cos();
  if (text.rfind("affine:", 0) == 0) {
    auto comma = text.find(',', 7);
    if (comma == std::string::npos) throw ParseError("affine needs 'affine:a,b'");
    return affine(parse_rational(text.substr(7, comma - 7)), parse_rational(text.substr(comma + 1)));
  }
  throw ParseError("unknown function '" + text + "'");
}

std::string SmoothFn::name() const {
  switch (kind_) {
    case Kind::Affine: return "affine:" + a_.get_str() + "," + b_.get_str();
    case Kind::Square: return "square";
    case Kind::Sqrt: return "sqrt";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::NegSquare: return "neg_square";
    case Kind::NegCos: return "neg_cos";
  }
  return "?";
}

std::pair<double, double> SmoothFn::domain() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::Sqrt: return {0.0, inf};
    case Kind::Sin: return {-1.5, 1.5};  // inside [-pi/2, pi/2]
    case Kind::Cos:
    case Kind::NegCos: return {0.0, 3.0};  // inside [0, pi]
    default: return {-inf, inf};
  }
}

bool SmoothFn::in_domain(const Enclosure& x) const {
  auto [lo, hi] = domain();
  return x.lower() >= lo && x.upper() <= hi;
}

Enclosure SmoothFn::value(const Enclosure& x) const {
  if (!in_domain(x)) throw PreconditionError(name() + " evaluated outside its domain at " + x.to_string());
  switch (kind_) {
    case Kind::Affine: return Enclosure::point(a_) * x + Enclosure::point(b_);
    case Kind::Square: return x * x;
    case Kind::Sqrt: return cantordiff::sqrt(x);
    case Kind::Sin: return cantordiff::sin(x);
    case Kind::Cos: return cantordiff::cos(x);
    case Kind::NegSquare: return -(x * x);
    case Kind::NegCos: return -cantordiff::cos(x);
  }
  throw InvariantViolation("unhandled function kind");
}

Enclosure SmoothFn::derivative(const Enclosure& x) const {
  if (!in_domain(x)) throw PreconditionError(name() + "' evaluated outside its domain at " + x.to_string());
  Enclosure two = Enclosure::point(Rational(2));
  switch (kind_) {
    case Kind::Affine: return Enclosure::point(a_);
    case Kind::Square: return two * x;
    case Kind::Sqrt: {
      if (!x.certainly_positive()) throw PreconditionError("sqrt' needs x > 0");
      return Enclosure::point(Rational(1)) / (two * cantordiff::sqrt(x));
    }
    case Kind::Sin: return cantordiff::cos(x);
    case Kind::Cos: return -cantordiff::sin(x);
    case Kind::NegSquare: return -(two * x);
    case Kind::NegCos: return cantordiff::sin(x);
  }
  throw InvariantViolation("unhandled function kind");
}

// ---- Cantor words ----

int CantorWord::digit(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  if (period.empty()) throw PreconditionError("word has no period");
  return period[(k - prefix.size()) % period.size()];
}

std::string CantorWord::to_string() const {
  std::string s;
  for (int d : prefix) s += std::to_string(d);
  s += "(";
  for (int d : period) s += std::to_string(d);
  return s + ")";
}

CantorWord CantorWord::parse(const std::string& text) {
  CantorWord w;
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string::npos || close == std::string::npos || close != text.size() - 1 || close <= open + 1) {
    throw ParseError("word must look like 'prefix(period)', got '" + text + "'");
  }
  auto digits = [&](std::size_t from, std::size_t to, std::vector<int>& out) {
    for (std::size_t i = from; i < to; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("bad digit in word '" + text + "'");
      out.push_back(text[i] - '0');
    }
  };
  digits(0, open, w.prefix);
  digits(open + 1, close, w.period);
  return w;
}

namespace {

void check_digits(const CantorSet& set, const std::vector<int>& ds) {
  for (int d : ds) {
    if (d < 0 || static_cast<std::size_t>(d) >= set.branch_count()) {
      throw PreconditionError("digit " + std::to_string(d) + " out of range for " + set.describe());
    }
  }
}

// phi_i(x) = (x - e_i)/p; a word composes outermost first.
Scalar apply_branches(const CantorSet& set, const std::vector<int>& ds, Scalar x) {
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) x = (x - set.offsets()[*it]) / set.p();
  return x;
}

}  // namespace

Scalar cantor_point(const CantorSet& set, const CantorWord& word) {
  check_digits(set, word.prefix);
  check_digits(set, word.period);
  if (word.period.empty()) throw PreconditionError("word has no period");
  // Fixed point of the period map x -> a x + b.
  Scalar b = apply_branches(set, word.period, Scalar(0));
  Scalar a = set.p().pow(-static_cast<long>(word.period.size()));
  Scalar fix = b / (1 - a);
  return apply_branches(set, word.prefix, fix);
}

Interval cantor_cylinder(const CantorSet& set, const CantorWord& word, int depth) {
  if (depth < 0) throw PreconditionError("negative depth");
  std::vector<int> ds;
  for (int k = 0; k < depth; ++k) ds.push_back(word.digit(static_cast<std::size_t>(k)));
  check_digits(set, ds);
  return Interval{apply_branches(set, ds, set.hull().lo), apply_branches(set, ds, set.hull().hi)};
}

// ---- regularly linked ----

LinkRange LinkRange::make(const Scalar& m1, const Scalar& m2) {
  if (!(m1 < m2)) throw PreconditionError("link range needs m1 < m2");
  if (!(m2 < 0) && !(m1 > 0)) throw PreconditionError("link range must exclude 0");
  return LinkRange{m1, m2};
}

std::string LinkRange::to_string() const { return "(" + m1.to_string() + ", " + m2.to_string() + ")"; }

namespace {

// a + b*lambda
struct Line {
  Scalar a, b;
  Scalar at(const Scalar& l) const { return a + b * l; }
};

struct OpenImage {
  Line lo, hi;
};

std::vector<OpenImage> parametric_images(const CantorPair& pair, int sign) {
  auto lr = log_ratio(pair);
  if (!lr) throw PreconditionError("pair has no relation p^m0 = q^n0");
  const Interval& h = pair.first.hull();
  const Interval& h2 = pair.second.hull();
  Line hlo = sign > 0 ? Line{h.lo, -h2.hi} : Line{h.lo, -h2.lo};
  Line hhi = sign > 0 ? Line{h.hi, -h2.lo} : Line{h.hi, -h2.hi};
  Scalar r = pair.first.p().pow(-lr->m0);
  std::vector<Scalar> c = pair.first.cylinder_offsets(lr->m0);
  std::vector<Scalar> d = pair.second.cylinder_offsets(lr->n0);
  std::vector<std::pair<Scalar, Scalar>> keys;
  for (const auto& cw : c)
    for (const auto& dv : d) keys.emplace_back(cw, dv);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<OpenImage> out;
  for (const auto& [cw, dv] : keys) {
    out.push_back(OpenImage{Line{r * hlo.a + cw, r * hlo.b - dv}, Line{r * hhi.a + cw, r * hhi.b - dv}});
  }
  return out;
}

std::vector<Interval> images_at(const std::vector<OpenImage>& ims, const Scalar& l) {
  std::vector<Interval> out;
  out.reserve(ims.size());
  for (const auto& im : ims) out.push_back(Interval{im.lo.at(l), im.hi.at(l)});
  return out;
}

// Union of open intervals is connected.
bool open_connected(std::vector<Interval> iv) {
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  Scalar reach = iv.front().hi;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (!(iv[i].lo < reach)) return false;
    if (reach < iv[i].hi) reach = iv[i].hi;
  }
  return true;
}

}  // namespace

std::vector<Interval> first_step_images(const CantorPair& pair, const Scalar& lambda) {
  if (lambda.is_zero()) throw PreconditionError("lambda must be nonzero");
  return images_at(parametric_images(pair, lambda.sign()), lambda);
}

bool open_union_is_hull(const CantorPair& pair, const Scalar& lambda) {
  auto iv = first_step_images(pair, lambda);
  if (!open_connected(iv)) return false;
  Scalar lo = iv.front().lo, hi = iv.front().hi;
  for (const auto& x : iv) {
    lo = min(lo, x.lo);
    hi = max(hi, x.hi);
  }
  const Interval& h = pair.first.hull();
  const Interval& h2 = pair.second.hull();
  Scalar want_lo = lambda.sign() > 0 ? h.lo - lambda * h2.hi : h.lo - lambda * h2.lo;
  Scalar want_hi = lambda.sign() > 0 ? h.hi - lambda * h2.lo : h.hi - lambda * h2.hi;
  return lo == want_lo && hi == want_hi;
}

LinkReport regularly_linked(const CantorPair& pair, const LinkRange& range) {
  if (!(range.m1 < range.m2) || (!(range.m2 < 0) && !(range.m1 > 0))) {
    throw PreconditionError("link range must be nondegenerate and exclude 0");
  }
  LinkReport rep;
  const int sign = range.m1 > 0 ? 1 : -1;
  std::vector<OpenImage> ims = parametric_images(pair, sign);
  rep.maps = ims.size();

  // (i): connectivity is constant between consecutive endpoint crossings.
  std::vector<Line> lines;
  for (const auto& im : ims) {
    lines.push_back(im.lo);
    lines.push_back(im.hi);
  }
  std::vector<Scalar> cross;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].b == lines[j].b) continue;
      Scalar l = (lines[j].a - lines[i].a) / (lines[i].b - lines[j].b);
      if (range.contains(l)) cross.push_back(l);
    }
  }
  std::sort(cross.begin(), cross.end());
  cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
  rep.crossings = cross;
  std::vector<Scalar> probes;
  std::vector<Scalar> cuts{range.m1};
  cuts.insert(cuts.end(), cross.begin(), cross.end());
  cuts.push_back(range.m2);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    probes.push_back((cuts[i] + cuts[i + 1]) / 2);
    if (i + 1 < cuts.size() - 1) probes.push_back(cuts[i + 1]);
  }
  rep.connected = true;
  for (const auto& l : probes) {
    if (!open_connected(images_at(ims, l))) {
      rep.connected = false;
      rep.disconnected_at = l;
      break;
    }
  }

  // (ii): per pair, disjoint throughout or a persistent common point.
  // Endpoints are affine, so the extremes over the open range sit at m1, m2.
  rep.pairs_ok = true;
  auto both_ends_nonneg = [&](const Line& x) { return x.at(range.m1) >= 0 && x.at(range.m2) >= 0; };
  for (std::size_t i = 0; i < ims.size() && rep.pairs_ok; ++i) {
    for (std::size_t j = i + 1; j < ims.size(); ++j) {
      const OpenImage& u = ims[i];
      const OpenImage& v = ims[j];
      Line ji{v.lo.a - u.hi.a, v.lo.b - u.hi.b};
      Line ij{u.lo.a - v.hi.a, u.lo.b - v.hi.b};
      if (both_ends_nonneg(ji) || both_ends_nonneg(ij)) continue;
      Scalar sup_lo = max(max(u.lo.at(range.m1), v.lo.at(range.m1)), max(u.lo.at(range.m2), v.lo.at(range.m2)));
      Scalar inf_hi = min(min(u.hi.at(range.m1), v.hi.at(range.m1)), min(u.hi.at(range.m2), v.hi.at(range.m2)));
      if (sup_lo < inf_hi) continue;
      rep.pairs_ok = false;
      rep.bad_pair = std::make_pair(i, j);
      break;
    }
  }
  rep.linked = rep.connected && rep.pairs_ok;
  if (!rep.connected) {
    rep.reason = "first-step union disconnected at lambda = " + rep.disconnected_at->to_string();
  } else if (!rep.pairs_ok) {
    rep.reason = "images " + std::to_string(rep.bad_pair->first) + " and " + std::to_string(rep.bad_pair->second) +
                 " overlap without a common point across the range";
  } else {
    rep.reason = "regularly linked";
  }
  return rep;
}

// ---- certificates ----

namespace {

Enclosure enclose_interval(const Interval& iv) { return join(iv.lo.enclose(), iv.hi.enclose()); }

bool inside_range(const Enclosure& e, const LinkRange& r) {
  return r.m1.enclose().certainly_less(e) && e.certainly_less(r.m2.enclose());
}

}  // namespace

Certificate interval_certificate(const SmoothFn& f, const SmoothFn& g, const CantorPair& pair, const CantorWord& wx,
                                 const CantorWord& wy, const LinkRange& range, int depth_cap) {
  Certificate c;
  c.wx = wx;
  c.wy = wy;
  c.range = range;
  c.f_name = f.name();
  c.g_name = g.name();
  c.x0 = cantor_point(pair.first, wx);
  c.y0 = cantor_point(pair.second, wy);
  LinkReport link = regularly_linked(pair, range);
  if (!link.linked) {
    c.reason = "not regularly linked on " + range.to_string() + ": " + link.reason;
    return c;
  }
  Enclosure fx = f.derivative(c.x0.enclose());
  if (fx.contains_zero()) {
    c.reason = "f'(x0) may vanish";
    return c;
  }
  c.base_ratio = g.derivative(c.y0.enclose()) / fx;
  if (!inside_range(c.base_ratio, range)) {
    c.reason = "g'(y0)/f'(x0) = " + c.base_ratio.to_string() + " is not inside " + range.to_string();
    return c;
  }
  auto lr = log_ratio(pair);
  c.m0 = lr->m0;
  c.n0 = lr->n0;
  // Squares of the construction: m0 levels of C_a per n0 levels of C_b.
  for (int k = 1; k <= depth_cap; ++k) {
    Interval x = cantor_cylinder(pair.first, wx, c.m0 * k);
    Interval y = cantor_cylinder(pair.second, wy, c.n0 * k);
    Enclosure X = enclose_interval(x);
    Enclosure Y = enclose_interval(y);
    if (!f.in_domain(X) || !g.in_domain(Y)) continue;
    Enclosure fX;
    try {
      fX = f.derivative(X);
    } catch (const PreconditionError&) {
      continue;
    }
    if (fX.contains_zero()) continue;
    Enclosure ratio = g.derivative(Y) / fX;
    c.depth = k;
    c.square_x = x;
    c.square_y = y;
    c.square_ratio = ratio;
    if (inside_range(ratio, range)) {
      c.certified = true;
      c.reason = "construction square at step " + std::to_string(k) + " keeps g'/f' inside " + range.to_string();
      return c;
    }
  }
  c.reason = "no subsquare within depth " + std::to_string(depth_cap) + " keeps g'/f' inside the range (last " +
             c.square_ratio.to_string() + ")";
  return c;
}

SmokeResult certificate_smoke_test(const Certificate& c, const SmoothFn& f, const SmoothFn& g, const CantorPair& pair,
                                   std::size_t per_axis) {
  if (!c.certified) throw PreconditionError("smoke test needs an emitted certificate");
  SmokeResult r;
  // e further construction steps, with (m0 + n0) e levels in total.
  const double bx = static_cast<double>(pair.first.branch_count());
  const double by = static_cast<double>(pair.second.branch_count());
  int steps = 0;
  while (std::pow(bx, c.m0 * steps) * std::pow(by, c.n0 * steps) < static_cast<double>(per_axis * per_axis)) {
    ++steps;
  }
  auto sample = [&](const CantorSet& set, const CantorWord& w, int depth, int extra, std::vector<double>& pts,
                    double& width) {
    std::size_t count = 1;
    for (int k = 0; k < extra; ++k) count *= set.branch_count();
    std::vector<int> base;
    for (int k = 0; k < depth; ++k) base.push_back(w.digit(static_cast<std::size_t>(k)));
    std::vector<int> tail(static_cast<std::size_t>(extra), 0);
    for (std::size_t n = 0; n < count; ++n) {
      std::size_t code = n;
      for (int k = extra - 1; k >= 0; --k) {
        tail[static_cast<std::size_t>(k)] = static_cast<int>(code % set.branch_count());
        code /= set.branch_count();
      }
      std::vector<int> ds = base;
      ds.insert(ds.end(), tail.begin(), tail.end());
      pts.push_back(apply_branches(set, ds, set.hull().lo).to_double());
    }
    width = (set.hull().length() * set.p().pow(-(depth + extra))).to_double();
  };
  std::vector<double> xs, ys;
  double wx = 0, wy = 0;
  sample(pair.first, c.wx, c.m0 * c.depth, c.m0 * steps, xs, wx);
  sample(pair.second, c.wy, c.n0 * c.depth, c.n0 * steps, ys, wy);
  auto sup_abs = [](const Enclosure& e) { return std::max(std::abs(e.lower()), std::abs(e.upper())); };
  r.modulus = sup_abs(f.derivative(enclose_interval(c.square_x))) * wx +
              sup_abs(g.derivative(enclose_interval(c.square_y))) * wy;
  std::vector<double> vals;
  vals.reserve(xs.size() * ys.size());
  for (double x : xs) {
    double fx = f.value(Enclosure::point(x)).midpoint();
    for (double y : ys) vals.push_back(fx - g.value(Enclosure::point(y)).midpoint());
  }
  std::sort(vals.begin(), vals.end());
  r.samples = vals.size();
  r.lo = vals.front();
  r.hi = vals.back();
  for (std::size_t i = 1; i < vals.size(); ++i) r.max_gap = std::max(r.max_gap, vals[i] - vals[i - 1]);
  r.passed = r.max_gap <= 2 * r.modulus;
  return r;
}

// ---- weak stable range ----

WeakStableRange weak_stable_range(const CantorPair& pair, const Rational& tol, const Rational& m_cap) {
  WeakStableRange w;
  if (!open_union_is_hull(pair, Scalar(1))) {
    w.reason = "open first-step union at lambda = 1 is not the whole hull";
    return w;
  }
  auto linked = [&](const Rational& m) {
    return regularly_linked(pair, LinkRange{Scalar(1 / m), Scalar(m)}).linked;
  };
  Rational good = 1 + tol;
  if (!linked(good)) {
    w.reason = "not regularly linked on any (1/m, m) with m >= 1 + tol";
    w.m_bad = good;
    return w;
  }
  w.found = true;
  if (linked(m_cap)) {
    w.m = m_cap;
    w.m_bad = m_cap;
    w.reason = "linked up to the cap";
    return w;
  }
  Rational bad = m_cap;
  while (bad - good > tol) {
    Rational mid = (good + bad) / 2;
    mid.canonicalize();
    if (linked(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  w.m = good;
  w.m_bad = bad;
  w.reason = "linked on (1/m, m)";
  return w;
}

// ---- examples ----

std::vector<std::string> nonlinear_example_names() { return {"sq-sum", "sincos", "sqrt"}; }

NonlinearExample nonlinear_example(const std::string& name) {
  CantorSet third = CantorSet::middle(Scalar(Rational(1, 3)));
  if (name == "sq-sum") {
    return NonlinearExample{name, "C^2 + C^2 for the middle-third set: f = x^2, g = -x^2",
                            SmoothFn::square(), SmoothFn::neg_square(), CantorPair{third, third},
                            CantorWord::parse("1(0)"), CantorWord::parse("0(1)"),
                            LinkRange::make(Scalar(Rational(-11, 20)), Scalar(Rational(-9, 20)))};
  }
  if (name == "sincos") {
    return NonlinearExample{name, "sin C + cos C for the middle-third set: f = sin, g = -cos",
                            SmoothFn::sin(), SmoothFn::neg_cos(), CantorPair{third, third},
                            CantorWord::parse("0(1)"), CantorWord::parse("0(1)"),
                            LinkRange::make(Scalar(Rational(17, 50)), Scalar(Rational(9, 25)))};
  }
  if (name == "sqrt") {
    Scalar g = parse_field_generator("g^2=g+1");
    CantorPair golden{CantorSet::middle(g.pow(-3)), CantorSet::middle(g.pow(-2))};
    return NonlinearExample{name, "sqrt(C_a) - sqrt(C_b) for the golden pair near (1, 1)",
                            SmoothFn::sqrt(), SmoothFn::sqrt(), golden,
                            CantorWord::parse("110(0)"), CantorWord::parse("(1)"),
                            LinkRange::make(Scalar(Rational(193, 200)), Scalar(Rational(39, 40)))};
  }
  throw PreconditionError("unknown example '" + name + "' (sq-sum, sincos, sqrt)");
}

}  // namespace cantordiff
