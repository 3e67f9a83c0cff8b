#include "cantordiff/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <vector>

#include "cantordiff/errors.hpp"

namespace cantordiff {

namespace {

std::string fmt(double x) {
  if (x == 0) x = 0;  // no "-0.000"
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3f", x);
  return buf.data();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Pt {
  double s, t;
};

// Keeps a*s + b*t + c >= 0.
std::vector<Pt> clip(const std::vector<Pt>& poly, double a, double b, double c) {
  std::vector<Pt> out;
  auto f = [&](const Pt& p) { return a * p.s + b * p.t + c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % poly.size()];
    double fp = f(p), fq = f(q);
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) {
      double u = fp / (fp - fq);
      out.push_back(Pt{p.s + u * (q.s - p.s), p.t + u * (q.t - p.t)});
    }
  }
  return out;
}

}  // namespace

std::string render_interval_stack(const LineIFS& ifs, int depth, std::size_t budget) {
  if (depth < 0) throw PreconditionError("render depth must be >= 0");
  const double width = 760, left = 20, row = 24, bar = 14, top = 30;
  const Scalar lo = ifs.hull.lo;
  const Scalar len = ifs.hull.length();
  auto x = [&](const Scalar& v) { return left + width * ((v - lo) / len).to_double(); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" + fmt(top + row * (depth + 1) + 10) +
         "\" viewBox=\"0 0 800 " + fmt(top + row * (depth + 1) + 10) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"20\" y=\"18\" font-family=\"monospace\" font-size=\"12\">" + escape(ifs.source) +
         " lambda=" + escape(ifs.lambda.to_string()) + "</text>\n";
  IntervalSet current = IntervalSet::single(ifs.hull.lo, ifs.hull.hi);
  for (int k = 0; k <= depth; ++k) {
    if (k > 0) {
      current = apply_maps(ifs, current);
      if (current.size() > budget) throw BudgetExceeded("render: more than " + std::to_string(budget) + " intervals");
    }
    double y = top + row * k;
    out += "<g id=\"depth-" + std::to_string(k) + "\" fill=\"#1f4e79\">\n";
    for (const auto& iv : current.parts()) {
      double x0 = x(iv.lo), x1 = x(iv.hi);
      out += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(std::max(x1 - x0, 0.5)) +
             "\" height=\"" + fmt(bar) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_plane(const CantorPair& pair, const std::optional<Scalar>& lambda, const RecurrentRegion* region) {
  const CantorSet& k = pair.first;
  const CantorSet& k2 = pair.second;
  if (k.branch_count() != 2 || k2.branch_count() != 2)
    throw PreconditionError("plane rendering needs two-branch Cantor sets");
  const double a = k.hull().hi.to_double(), b = k2.hull().hi.to_double();
  const double p = k.p().to_double(), q = k2.p().to_double();
  const double f1 = k2.offsets()[1].to_double();

  ThicknessWindow w = thickness_window(pair);
  double s_hi = std::max({1.0, w.s0.to_double(), w.s1.to_double()});
  if (region) s_hi = std::max(s_hi, region->s_max.to_double());
  if (lambda) s_hi = std::max(s_hi, lambda->abs().to_double());
  s_hi *= 1.25;
  const double t_hi = a * 1.25, t_lo = -b * s_hi * 1.05;

  const double W = 720, H = 520, L = 60, T = 20;
  auto X = [&](double s) { return L + W * s / s_hi; };
  auto Y = [&](double t) { return T + H * (t_hi - t) / (t_hi - t_lo); };
  const std::vector<Pt> box{{0, t_lo}, {s_hi, t_lo}, {s_hi, t_hi}, {0, t_hi}};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"580\" viewBox=\"0 0 800 580\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto polygon = [&](const std::string& id, const std::string& fill, const std::vector<Pt>& poly) {
    if (poly.size() < 3) return;
    out += "<polygon id=\"" + id + "\" fill=\"" + fill + "\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) out += ' ';
      out += fmt(X(poly[i].s)) + "," + fmt(Y(poly[i].t));
    }
    out += "\"/>\n";
  };
  // E: t > a, or t < -b s (s > 0).
  polygon("E-upper", "#c0392b", clip(box, 0, 1, -a));
  polygon("E-lower", "#c0392b", clip(box, -b, -1, 0));
  // F: (f1/q) s + a < t < -(b/q) s.
  polygon("F", "#e67e22", clip(clip(box, -f1 / q, 1, -a), -b / q, -1, 0));
  // G: a/p < t < -b s + a - a/p.
  polygon("G", "#27ae60", clip(clip(box, 0, 1, -a / p), -b, -1, a - a / p));
  if (region) {
    const double s0 = region->s_min.to_double(), s1 = region->s_max.to_double();
    const double d = region->delta.to_double();
    auto r = clip(clip(clip(clip(box, 1, 0, -s0), -1, 0, s1), 0, -1, a - d), b, 1, -d);
    polygon("R", "#7f8c8d", r);
  }
  // Axes.
  out += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(0)) + "\" x2=\"" + fmt(X(s_hi)) + "\" y2=\"" + fmt(Y(0)) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(t_lo)) + "\" x2=\"" + fmt(X(0)) + "\" y2=\"" + fmt(Y(t_hi)) +
         "\" stroke=\"black\"/>\n";
  if (lambda) {
    double s = lambda->abs().to_double();
    out += "<line id=\"lambda\" x1=\"" + fmt(X(s)) + "\" y1=\"" + fmt(Y(t_lo)) + "\" x2=\"" + fmt(X(s)) + "\" y2=\"" +
           fmt(Y(t_hi)) + "\" stroke=\"#2c3e50\" stroke-dasharray=\"4 3\"/>\n";
  }
  out += "<text x=\"" + fmt(X(s_hi) - 10) + "\" y=\"" + fmt(Y(0) - 4) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">s</text>\n";
  out += "<text x=\"" + fmt(X(0) + 4) + "\" y=\"" + fmt(Y(t_hi) + 12) +
         "\" font-family=\"monospace\" font-size=\"12\">t</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace cantordiff
