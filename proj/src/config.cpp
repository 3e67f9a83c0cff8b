#include "cantordiff/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cantordiff/errors.hpp"

namespace cantordiff {

namespace {

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table{
      {"golden", "field = g^2=g+1\nalpha = 1/g^3\nbeta = 1/g^2\nlambda = 2/g\n"},
      {"third", "alpha = 1/3\nbeta = 1/3\nlambda = 1\n"},
      {"quarter", "alpha = 1/4\nbeta = 1/4\nlambda = 1/2\n"},
      {"two-fifths", "alpha = 2/5\nbeta = 2/5\nlambda = 1\n"},
  };
  return table;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CantorPair RunConfig::pair() const { return CantorPair{CantorSet::middle(alpha), CantorSet::middle(beta)}; }

Scalar RunConfig::scalar(const std::string& text) const { return parse_scalar(text, generator); }

std::string RunConfig::to_text() const {
  std::ostringstream out;
  if (field) out << "field = " << *field << "\n";
  out << "alpha = " << alpha.to_string() << "\n";
  out << "beta = " << beta.to_string() << "\n";
  if (lambda) out << "lambda = " << lambda->to_string() << "\n";
  if (depth) out << "depth = " << *depth << "\n";
  if (budget) out << "budget = " << *budget << "\n";
  if (tolerance) {
    std::ostringstream t;
    t.precision(17);
    t << *tolerance;
    out << "tolerance = " << t.str() << "\n";
  }
  for (const auto& [k, v] : extra) out << k << " = " << v << "\n";
  return out.str();
}

RunConfig parse_config(const std::string& text, const std::string& name) {
  // Two passes so the field may be declared after the scalars that use it.
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected key = value");
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    if (entries.back().first.empty() || entries.back().second.empty())
      throw ParseError(name + ":" + std::to_string(lineno) + ": empty key or value");
  }

  RunConfig cfg;
  cfg.name = name;
  for (const auto& [k, v] : entries) {
    if (k != "field") continue;
    if (cfg.field) throw ParseError(name + ": field declared twice");
    cfg.field = v;
    Scalar g = parse_field_generator(v);
    if (g.is_rational()) throw ParseError(name + ": field declaration '" + v + "' has a rational root");
    cfg.generator = g;
  }

  bool have_alpha = false, have_beta = false;
  auto parse_int = [&](const std::string& k, const std::string& v) {
    char* end = nullptr;
    long n = std::strtol(v.c_str(), &end, 10);
    if (*end != '\0' || n < 0) throw ParseError(name + ": " + k + " must be a nonnegative integer, got '" + v + "'");
    return n;
  };
  for (const auto& [k, v] : entries) {
    if (k == "field") continue;
    if (k == "alpha") {
      cfg.alpha = cfg.scalar(v);
      have_alpha = true;
    } else if (k == "beta") {
      cfg.beta = cfg.scalar(v);
      have_beta = true;
    } else if (k == "lambda") {
      cfg.lambda = cfg.scalar(v);
    } else if (k == "depth") {
      cfg.depth = static_cast<int>(parse_int(k, v));
    } else if (k == "budget") {
      cfg.budget = static_cast<std::size_t>(parse_int(k, v));
    } else if (k == "tolerance") {
      char* end = nullptr;
      double t = std::strtod(v.c_str(), &end);
      if (*end != '\0' || !(t > 0)) throw ParseError(name + ": tolerance must be positive, got '" + v + "'");
      cfg.tolerance = t;
    } else if (k == "example" || k == "range" || k == "sweep" || k == "out") {
      cfg.extra[k] = v;
    } else {
      throw ParseError(name + ": unknown key '" + k + "'");
    }
  }
  if (!have_alpha || !have_beta) throw ParseError(name + ": alpha and beta are required");
  return cfg;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

std::optional<std::string> preset_text(const std::string& name) {
  auto it = presets().find(name);
  if (it == presets().end()) return std::nullopt;
  return it->second;
}

RunConfig load_config(const std::string& path_or_preset) {
  std::ifstream f(path_or_preset);
  if (f) {
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str(), path_or_preset);
  }
  if (auto text = preset_text(path_or_preset)) return parse_config(*text, path_or_preset);
  throw ParseError("no config file or preset named '" + path_or_preset + "'");
}

std::size_t default_budget(std::size_t fallback) {
  const char* env = std::getenv("CANTORDIFF_BUDGET");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  unsigned long long n = std::strtoull(env, &end, 10);
  if (*end != '\0' || n == 0) return fallback;
  return static_cast<std::size_t>(n);
}

}  // namespace cantordiff
