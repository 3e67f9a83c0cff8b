#include "cantordiff/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cantordiff/config.hpp"
#include "cantordiff/errors.hpp"
#include "cantordiff/report.hpp"
#include "cantordiff/svg.hpp"

namespace cantordiff {

namespace {

struct Options {
  std::string pair = "";
  std::string lambda;
  std::string t, s;
  std::string range;
  std::string sweep;
  std::string ratio;
  std::string example;
  std::string out;
  std::string emit;
  int depth = -1;
  int count = 0;
  int res = 200;
  int counting = 0;
  long long budget = -1;
  bool count_classes = false;
  bool plane = false;
  bool weak = false;
  std::size_t smoke = 128;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  }
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << data;
}

// Shared run state: the JSON document grows as results arrive so a budget
// failure can still report what was computed.
struct Ctx {
  Options opt;
  std::optional<RunConfig> cfg;
  Json doc;
  std::ostream& out;
  bool text_output = false;  // CSV or SVG went to `out` instead of JSON

  const RunConfig& config() const {
    if (!cfg) throw ParseError("--pair is required");
    return *cfg;
  }
  Scalar lambda() const {
    if (!opt.lambda.empty()) return config().scalar(opt.lambda);
    if (config().lambda) return *config().lambda;
    throw ParseError("--lambda is required (or set lambda in the config)");
  }
  std::size_t budget(std::size_t fallback) const {
    if (opt.budget >= 0) return static_cast<std::size_t>(opt.budget);
    if (cfg && cfg->budget) return *cfg->budget;
    return default_budget(fallback);
  }
  int depth(int fallback) const {
    if (opt.depth >= 0) return opt.depth;
    if (cfg && cfg->depth) return *cfg->depth;
    return fallback;
  }
  std::string extra(const std::string& flag, const std::string& key) const {
    if (!flag.empty()) return flag;
    if (cfg) {
      auto it = cfg->extra.find(key);
      if (it != cfg->extra.end()) return it->second;
    }
    return "";
  }
  std::pair<Scalar, Scalar> range2(const std::string& text) const {
    auto parts = split(text, ':');
    if (parts.size() != 2) throw ParseError("range must be m1:m2, got '" + text + "'");
    return {config().scalar(parts[0]), config().scalar(parts[1])};
  }
};

Json config_json(const RunConfig& c) {
  Json j{{"name", c.name}};
  j["field"] = c.field ? Json(*c.field) : Json(nullptr);
  j["alpha"] = to_json(c.alpha);
  j["beta"] = to_json(c.beta);
  return j;
}

void cmd_ifs(Ctx& c) {
  LineIFS ifs = generate_ifs(c.config().pair(), c.lambda());
  c.doc["ifs"] = to_json(ifs);
}

void cmd_cover(Ctx& c) {
  LineIFS ifs = generate_ifs(c.config().pair(), c.lambda());
  int n = c.depth(3);
  c.doc["lambda"] = to_json(ifs.lambda);
  c.doc["maps"] = ifs.size();
  c.doc["coverage"] = to_json(coverage_at_depth(ifs, n, c.budget(std::size_t{1} << 22), c.opt.count_classes));
}

void cmd_member(Ctx& c) {
  if (c.opt.t.empty()) throw ParseError("--t is required");
  Scalar t = c.config().scalar(c.opt.t);
  Scalar s = c.opt.s.empty() ? c.lambda() : c.config().scalar(c.opt.s);
  CantorPair pair = c.config().pair();
  c.doc["t"] = to_json(t);
  c.doc["s"] = to_json(s);
  std::optional<RecurrentRegion> region;
  if (thickness(pair.first) * thickness(pair.second) > Scalar(1)) {
    RecurrentRegion r = build_recurrent_set(pair);
    RecurrenceReport rep = verify_recurrence(r, pair, 64);
    if (rep.failures == 0) region = r;
  }
  c.doc["recurrent_region"] = region.has_value();
  c.doc["result"] = to_json(membership(t, s, pair, c.budget(100000), region ? &*region : nullptr));
}

DeclaredRatio parse_ratio(const Ctx& c) {
  if (c.opt.ratio.empty()) return DeclaredRatio::automatic();
  if (c.opt.ratio == "irrational") return DeclaredRatio::irrational();
  auto parts = split(c.opt.ratio, ':');
  if (parts.size() != 3) throw ParseError("--ratio must be n0:m0:gamma or 'irrational'");
  return DeclaredRatio::rational(parse_int(parts[0], "n0"), parse_int(parts[1], "m0"), c.config().scalar(parts[2]));
}

std::vector<Scalar> sweep_points(const Ctx& c, const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) throw ParseError("sweep must be a:b:count, got '" + text + "'");
  Scalar a = c.config().scalar(parts[0]), b = c.config().scalar(parts[1]);
  int n = parse_int(parts[2], "count");
  if (n < 2) throw PreconditionError("sweep count must be >= 2");
  if (a == b) throw PreconditionError("sweep range is empty");
  std::vector<Scalar> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * Scalar(Rational(i, n - 1)));
  return out;
}

// Rows computed in parallel, emitted in order.
template <class F>
std::vector<std::string> parallel_rows(const std::vector<Scalar>& xs, F row) {
  std::vector<std::string> rows(xs.size());
  unsigned width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < xs.size(); start += width) {
    std::vector<std::future<std::string>> batch;
    for (std::size_t i = start; i < std::min(xs.size(), start + width); ++i)
      batch.push_back(std::async(std::launch::async, row, xs[i]));
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }
  return rows;
}

void cmd_full(Ctx& c) {
  CantorPair pair = c.config().pair();
  DeclaredRatio ratio = parse_ratio(c);
  std::string sweep = c.extra(c.opt.sweep, "sweep");
  if (!sweep.empty()) {
    auto xs = sweep_points(c, sweep);
    auto rows = parallel_rows(xs, [&](const Scalar& l) {
      std::string verdict, route;
      try {
        FullCertificate f = is_full(pair, l, ratio);
        verdict = full_verdict_name(f.verdict);
        route = f.route;
      } catch (const PreconditionError& e) {
        verdict = "error";
        route = e.what();
      }
      std::replace(route.begin(), route.end(), ',', ';');
      return l.to_string() + "," + verdict + "," + route;
    });
    c.out << "lambda,verdict,route\n";
    for (const auto& r : rows) c.out << r << "\n";
    c.text_output = true;
    return;
  }
  Scalar l = c.lambda();
  c.doc["lambda"] = to_json(l);
  try {
    c.doc["analysis"] = to_json(analyze(pair, ratio));
  } catch (const PreconditionError& e) {
    c.doc["analysis"] = Json{{"unavailable", e.what()}};
  }
  c.doc["certificate"] = to_json(is_full(pair, l, ratio));
}

void cmd_dim(Ctx& c) {
  LineIFS ifs = generate_ifs(c.config().pair(), c.lambda());
  std::size_t budget = c.budget(10000);
  c.doc["lambda"] = to_json(ifs.lambda);
  c.doc["maps"] = ifs.size();
  c.doc["finite_type"] = to_json(is_finite_type(ifs));
  NeighborAutomaton a = build_automaton(ifs, budget);
  c.doc["state_budget"] = budget;
  DimensionResult d = a.complete ? hausdorff_dimension(a, ifs.size()) : hausdorff_dimension(ifs, budget);
  c.doc["dimension"] = to_json(d);
  // A single number only when the automaton closed; otherwise see the bounds.
  c.doc["hdim"] = d.complete ? Json(d.hdim.midpoint()) : Json(nullptr);
  if (c.opt.counting > 0) {
    Json bounds = Json::array();
    for (int n = 1; n <= c.opt.counting; ++n) {
      bounds.push_back(to_json(depth_counting_bound(ifs, n, a.complete ? &a : nullptr)));
      c.doc["counting"] = bounds;
    }
  }
  if (!c.opt.emit.empty()) {
    write_file(c.opt.emit, automaton_json(a).dump(2) + "\n");
    c.doc["emitted"] = c.opt.emit;
  }
}

void cmd_recur(Ctx& c) {
  CantorPair pair = c.config().pair();
  RecurrentRegion r = build_recurrent_set(pair);
  c.doc["region"] = to_json(r);
  RecurrenceReport rep = verify_recurrence(r, pair, c.opt.res);
  c.doc["verification"] = to_json(rep);
  c.doc["verified"] = rep.failures == 0;
  std::string out = c.extra(c.opt.out, "out");
  if (!out.empty()) {
    std::optional<Scalar> l;
    if (!c.opt.lambda.empty() || c.config().lambda) l = c.lambda();
    write_file(out, render_plane(pair, l, &r));
    c.doc["svg"] = out;
  }
}

void cmd_nonlinear(Ctx& c) {
  std::string name = c.extra(c.opt.example, "example");
  if (name.empty()) throw ParseError("--example is required");
  NonlinearExample e = nonlinear_example(name);
  if (c.cfg) e.pair = c.cfg->pair();
  c.doc["example"] = Json{{"name", e.name}, {"description", e.description}};
  Certificate cert = interval_certificate(e.f, e.g, e.pair, e.wx, e.wy, e.range);
  c.doc["certificate"] = to_json(cert);
  if (cert.certified) c.doc["smoke_test"] = to_json(certificate_smoke_test(cert, e.f, e.g, e.pair, c.opt.smoke));
}

void cmd_linked(Ctx& c) {
  CantorPair pair = c.config().pair();
  std::string range = c.extra(c.opt.range, "range");
  if (range.empty()) throw ParseError("--range m1:m2 is required");
  auto [m1, m2] = c.range2(range);
  LinkReport r = regularly_linked(pair, LinkRange::make(m1, m2));
  c.doc["range"] = Json{{"m1", to_json(m1)}, {"m2", to_json(m2)}};
  c.doc["linked"] = r.linked;
  c.doc["report"] = to_json(r);
  if (c.opt.weak) c.doc["weak_stable_range"] = to_json(weak_stable_range(pair));
}

void cmd_sweep(Ctx& c) {
  CantorPair pair = c.config().pair();
  std::string sweep = c.extra(c.opt.sweep, "sweep");
  if (sweep.empty()) throw ParseError("--sweep a:b:count is required");
  auto xs = sweep_points(c, sweep);
  const std::size_t states = c.budget(2000);
  const int max_depth = std::max(1, c.depth(4));
  auto rows = parallel_rows(xs, [&](const Scalar& l) {
    std::string verdict = "error", counts, lo, hi;
    try {
      verdict = full_verdict_name(is_full(pair, l).verdict);
    } catch (const PreconditionError&) {
    }
    try {
      LineIFS ifs = generate_ifs(pair, l);
      for (int n = 1; n <= max_depth; ++n) {
        if (n > 1) counts += ";";
        try {
          counts += std::to_string(class_count(ifs, n));
        } catch (const BudgetExceeded&) {
          counts += "budget";
          break;
        }
      }
      if (is_finite_type(ifs).certified) {
        DimensionResult d = hausdorff_dimension(ifs, states);
        std::ostringstream a, b;
        a.precision(10);
        b.precision(10);
        a << d.hdim.lower();
        b << d.hdim.upper();
        lo = a.str();
        hi = b.str();
      }
    } catch (const BudgetExceeded&) {
      lo = hi = "budget";
    } catch (const PreconditionError&) {
      counts = "n/a";
    }
    return l.to_string() + "," + verdict + "," + counts + "," + lo + "," + hi;
  });
  c.out << "lambda,verdict,class_count,dim_low,dim_high\n";
  for (const auto& r : rows) c.out << r << "\n";
  c.text_output = true;
}

void cmd_render(Ctx& c) {
  CantorPair pair = c.config().pair();
  std::string svg;
  if (c.opt.plane) {
    std::optional<Scalar> l;
    if (!c.opt.lambda.empty() || c.config().lambda) l = c.lambda();
    std::optional<RecurrentRegion> region;
    if (thickness(pair.first) * thickness(pair.second) > Scalar(1)) region = build_recurrent_set(pair);
    svg = render_plane(pair, l, region ? &*region : nullptr);
  } else {
    svg = render_interval_stack(generate_ifs(pair, c.lambda()), c.depth(3), c.budget(std::size_t{1} << 22));
  }
  std::string out = c.extra(c.opt.out, "out");
  if (out.empty()) {
    c.out << svg;
    c.text_output = true;
    return;
  }
  write_file(out, svg);
  c.doc["svg"] = out;
  c.doc["bytes"] = svg.size();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic differences of affine Cantor sets"};
  app.require_subcommand(1);
  Options o;
  using Fn = void (*)(Ctx&);
  std::vector<std::pair<CLI::App*, Fn>> commands;

  auto add = [&](const char* name, const char* help, Fn fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--pair", o.pair, "config file or preset (golden, third, quarter, two-fifths)");
    sub->add_option("--budget", o.budget, "work limit (states, classes or intervals)");
    commands.emplace_back(sub, fn);
    return sub;
  };

  auto* ifs = add("ifs", "contraction system for C_a - lambda C_b", cmd_ifs);
  ifs->add_option("--lambda", o.lambda);
  auto* cover = add("cover", "depth-n coverage of the hull", cmd_cover);
  cover->add_option("--lambda", o.lambda);
  cover->add_option("--depth", o.depth);
  cover->add_flag("--classes", o.count_classes, "also count distinct depth-n classes");
  auto* member = add("member", "t in K - sK' by renormalization orbit search", cmd_member);
  member->add_option("--t", o.t);
  member->add_option("--s", o.s);
  member->add_option("--lambda", o.lambda, "used when --s is absent");
  auto* full = add("full", "is C_a - lambda C_b the whole interval", cmd_full);
  full->add_option("--lambda", o.lambda);
  full->add_option("--ratio", o.ratio, "n0:m0:gamma or 'irrational'");
  full->add_option("--sweep", o.sweep, "a:b:count, CSV output");
  auto* dim = add("dim", "Hausdorff dimension via the overlap automaton", cmd_dim);
  dim->add_option("--lambda", o.lambda);
  dim->add_option("--emit", o.emit, "write the automaton as JSON");
  dim->add_option("--counting", o.counting, "depth-counting bounds for n = 1..N");
  auto* recur = add("recur", "recurrent region and its verification", cmd_recur);
  recur->add_option("--res", o.res, "grid resolution");
  recur->add_option("--lambda", o.lambda);
  recur->add_option("--out", o.out, "write the (s, t)-plane SVG");
  auto* nonlinear = add("nonlinear", "interval certificate for f(C_a) - g(C_b)", cmd_nonlinear);
  nonlinear->add_option("--example", o.example, "sq-sum, sincos or sqrt");
  nonlinear->add_option("--smoke", o.smoke, "smoke-test samples per axis");
  auto* linked = add("linked", "regularly linked test on a slope range", cmd_linked);
  linked->add_option("--range", o.range, "m1:m2");
  linked->add_flag("--weak", o.weak, "also search the weak stable range (1/m, m)");
  auto* sweep = add("sweep", "per-lambda verdicts, class counts and dimension (CSV)", cmd_sweep);
  sweep->add_option("--sweep,--range", o.sweep, "a:b:count");
  sweep->add_option("--depth", o.depth, "class counts for depths 1..n (default 4)");
  auto* render = add("render", "SVG of interval stacks or the (s, t)-plane", cmd_render);
  render->add_option("--lambda", o.lambda);
  render->add_option("--depth", o.depth);
  render->add_option("--out", o.out);
  render->add_flag("--plane", o.plane, "render E, F, G and R instead of interval stacks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Ctx ctx{o, std::nullopt, Json::object(), out};
  Fn fn = nullptr;
  std::string name;
  for (auto& [sub, f] : commands) {
    if (sub->parsed()) {
      fn = f;
      name = sub->get_name();
    }
  }
  ctx.doc["schema"] = kSchema;
  ctx.doc["command"] = name;

  auto finish = [&](const char* status, const std::string& message, int code) {
    if (code != 0) err << "cantordiff " << name << ": " << message << "\n";
    if (ctx.text_output) return code;
    ctx.doc["status"] = status;
    if (code != 0) ctx.doc["error"] = message;
    out << ctx.doc.dump(2) << "\n";
    return code;
  };

  try {
    if (!o.pair.empty()) {
      ctx.cfg = load_config(o.pair);
      ctx.doc["config"] = config_json(*ctx.cfg);
    }
    fn(ctx);
    return finish("ok", "", 0);
  } catch (const BudgetExceeded& e) {
    return finish("budget_exceeded", e.what(), 3);
  } catch (const ParseError& e) {
    return finish("parse_error", e.what(), 2);
  } catch (const PreconditionError& e) {
    return finish("invalid_input", e.what(), 2);
  } catch (const InvariantViolation& e) {
    return finish("invariant_violation", e.what(), 4);
  } catch (const std::exception& e) {
    return finish("internal_error", e.what(), 4);
  }
}

}  // namespace cantordiff
