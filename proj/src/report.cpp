#include "cantordiff/report.hpp"

#include "cantordiff/errors.hpp"

namespace cantordiff {

namespace {

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

Json intervals(const std::vector<Interval>& v) {
  Json a = Json::array();
  for (const auto& iv : v) a.push_back(to_json(iv));
  return a;
}

template <class T>
Json opt(const std::optional<T>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

}  // namespace

Json to_json(const Scalar& x) {
  Enclosure e = x.enclose();
  return Json{{"exact", x.to_string()}, {"lo", e.lower()}, {"hi", e.upper()}};
}

Json to_json(const Rational& x) { return to_json(Scalar(x)); }

Json to_json(const Enclosure& e) { return Json{{"lo", e.lower()}, {"hi", e.upper()}}; }

Json to_json(const Interval& iv) { return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}}; }

Json to_json(const IntervalSet& s) { return intervals(s.parts()); }

Json to_json(const CantorSet& c) {
  Json j{{"description", c.describe()}, {"p", to_json(c.p())}};
  if (c.is_middle()) j["alpha"] = to_json(c.alpha());
  Json offs = Json::array();
  for (const auto& o : c.offsets()) offs.push_back(to_json(o));
  j["offsets"] = offs;
  j["hull"] = to_json(c.hull());
  return j;
}

Json to_json(const LineIFS& ifs) {
  Json maps = Json::array();
  for (const auto& b : ifs.offsets) maps.push_back(Json{{"ratio", to_json(ifs.ratio)}, {"offset", to_json(b)}});
  Json expanding = Json::array();
  for (const auto& a : expanding_offsets(ifs)) expanding.push_back(to_json(a));
  return Json{{"source", ifs.source},
              {"lambda", to_json(ifs.lambda)},
              {"ratio", to_json(ifs.ratio)},
              {"m0", ifs.m0},
              {"n0", ifs.n0},
              {"raw_count", ifs.raw_count},
              {"count", ifs.size()},
              {"hull", to_json(ifs.hull)},
              {"maps", maps},
              {"expanding_offsets", expanding}};
}

Json to_json(const CoverageReport& r) {
  Json j{{"depth", r.depth},
         {"covered", r.covered},
         {"components", r.union_set.size()},
         {"gaps", intervals(r.gaps)},
         {"union", to_json(r.union_set)}};
  j["class_count"] = r.class_count ? Json(*r.class_count) : Json(nullptr);
  return j;
}

Json to_json(const MembershipResult& r) {
  return Json{{"verdict", verdict_name(r.verdict)},
              {"escape_depth", r.escape_depth},
              {"witness_prefix", strings(r.witness_prefix)},
              {"witness_cycle", strings(r.witness_cycle)},
              {"states", r.states}};
}

Json to_json(const FullIntervalAnalysis& a) {
  Json j{{"alpha", to_json(a.alpha)},
         {"beta", to_json(a.beta)},
         {"p", to_json(a.p)},
         {"q", to_json(a.q)},
         {"thickness_product", to_json(a.thickness_product)},
         {"s0", to_json(a.s0)},
         {"s1", to_json(a.s1)},
         {"gap_i", to_json(a.gap_i)},
         {"irrational", a.irrational}};
  j["gamma"] = opt(a.gamma);
  j["n0"] = a.n0;
  j["m0"] = a.m0;
  j["j"] = opt(a.j);
  j["lambda_set"] = to_json(a.lambda_set);
  return j;
}

Json to_json(const FullCertificate& c) {
  Json j{{"verdict", full_verdict_name(c.verdict)}, {"route", c.route}, {"lambda", to_json(c.lambda)}};
  j["power"] = c.power ? Json(*c.power) : Json(nullptr);
  j["window"] = to_json(c.window);
  return j;
}

Json to_json(const FiniteTypeReport& r) {
  return Json{{"certified", r.certified},
              {"denominator", r.denominator.get_str()},
              {"ring", r.ring},
              {"reason", r.reason}};
}

Json to_json(const SpectralResult& r) {
  return Json{{"lo", to_json(r.lo)}, {"hi", to_json(r.hi)}, {"iterations", r.iterations}, {"width", r.width()}};
}

Json to_json(const DimensionResult& r) {
  Json j{{"complete", r.complete}, {"automaton", automaton_kind_name(r.kind)}, {"states", r.states}};
  j["radius"] = opt(r.radius);
  j["hdim"] = to_json(r.hdim);
  j["similarity_dimension"] = to_json(r.similarity);
  if (r.char_poly) {
    Json c = Json::array();
    for (const auto& x : *r.char_poly) c.push_back(x.get_str());
    j["char_poly"] = c;
  } else {
    j["char_poly"] = nullptr;
  }
  return j;
}

Json to_json(const CountingBound& b) {
  return Json{{"depth", b.depth}, {"k", b.k.get_str()}, {"root", to_json(b.root)}, {"bound", to_json(b.bound)}};
}

Json automaton_json(const NeighborAutomaton& a) {
  Json states = Json::array();
  for (const auto& s : a.states) {
    Json pos = Json::array();
    for (const auto& x : s.positions) pos.push_back(x.to_string());
    states.push_back(Json{{"positions", pos}, {"length", s.length.to_string()}, {"pieces", s.pieces}});
  }
  Json matrix = Json::array();
  for (const auto& row : a.dense()) matrix.push_back(row);
  std::vector<int> start(a.size(), 0);
  if (!start.empty()) start[a.start_state] = 1;
  return Json{{"schema", kSchema},
              {"kind", automaton_kind_name(a.kind)},
              {"complete", a.complete},
              {"ratio", a.ratio.to_string()},
              {"states", states},
              {"matrix", matrix},
              {"start", start}};
}

Json to_json(const RecurrentRegion& r) {
  return Json{{"a", to_json(r.a)},         {"b", to_json(r.b)},         {"s0", to_json(r.s0)},
              {"s_min", to_json(r.s_min)}, {"s_max", to_json(r.s_max)}, {"eps", to_json(r.eps)},
              {"delta", to_json(r.delta)}, {"p_max", to_json(r.p_max)}, {"p0", to_json(r.p0)}};
}

Json to_json(const RecurrenceReport& r) {
  Json j{{"points", r.points}, {"failures", r.failures}, {"max_steps", r.max_steps},
         {"case_a", r.case_a}, {"case_b", r.case_b},     {"case_c", r.case_c}};
  if (r.first_failure)
    j["first_failure"] = Json{{"s", to_json(r.first_failure->s)}, {"t", to_json(r.first_failure->t)}};
  else
    j["first_failure"] = nullptr;
  return j;
}

Json to_json(const LinkReport& r) {
  Json crossings = Json::array();
  for (const auto& c : r.crossings) crossings.push_back(to_json(c));
  Json j{{"linked", r.linked}, {"connected", r.connected}, {"pairs_ok", r.pairs_ok},
         {"maps", r.maps},     {"crossings", crossings}};
  j["disconnected_at"] = opt(r.disconnected_at);
  j["bad_pair"] = r.bad_pair ? Json::array({r.bad_pair->first, r.bad_pair->second}) : Json(nullptr);
  j["reason"] = r.reason;
  return j;
}

Json to_json(const Certificate& c) {
  return Json{{"certified", c.certified},
              {"reason", c.reason},
              {"f", c.f_name},
              {"g", c.g_name},
              {"x0", Json{{"word", c.wx.to_string()}, {"value", to_json(c.x0)}}},
              {"y0", Json{{"word", c.wy.to_string()}, {"value", to_json(c.y0)}}},
              {"range", Json{{"m1", to_json(c.range.m1)}, {"m2", to_json(c.range.m2)}}},
              {"base_ratio", to_json(c.base_ratio)},
              {"m0", c.m0},
              {"n0", c.n0},
              {"depth", c.depth},
              {"square_x", to_json(c.square_x)},
              {"square_y", to_json(c.square_y)},
              {"square_ratio", to_json(c.square_ratio)}};
}

Json to_json(const SmokeResult& r) {
  return Json{{"samples", r.samples}, {"modulus", r.modulus}, {"max_gap", r.max_gap},
              {"lo", r.lo},           {"hi", r.hi},           {"passed", r.passed}};
}

Json to_json(const WeakStableRange& w) {
  Json j{{"found", w.found}, {"reason", w.reason}};
  if (w.found) {
    j["m"] = to_json(w.m);
    j["m_bad"] = to_json(w.m_bad);
  }
  return j;
}

Scalar scalar_from_json(const Json& j, const std::optional<Scalar>& generator) {
  if (j.is_string()) return parse_scalar(j.get<std::string>(), generator);
  if (j.is_object() && j.contains("exact") && j["exact"].is_string())
    return parse_scalar(j["exact"].get<std::string>(), generator);
  throw ParseError("expected an exact scalar, got " + j.dump());
}

}  // namespace cantordiff
