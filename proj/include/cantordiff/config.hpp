#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantordiff/cantor.hpp"

namespace cantordiff {

/// Key-value run configuration:
///
///   # comment
///   field = g^2=g+1
///   alpha = 1/g^3
///   beta  = 1/g^2
///   lambda = 2/g
///
/// Scalars may use `g` once a field is declared. Keys other than the known
/// ones are a ParseError.
struct RunConfig {
  std::string name;                  // file path or preset name
  std::optional<std::string> field;  // declaration text, e.g. "g^2=g+1"
  std::optional<Scalar> generator;
  Scalar alpha;
  Scalar beta;
  std::optional<Scalar> lambda;
  std::optional<int> depth;
  std::optional<std::size_t> budget;
  std::optional<double> tolerance;
  std::map<std::string, std::string> extra;  // example, range, sweep, out

  CantorPair pair() const;
  /// Parses with this config's generator.
  Scalar scalar(const std::string& text) const;
  /// Text that parse_config re-reads into an equal config.
  std::string to_text() const;
};

RunConfig parse_config(const std::string& text, const std::string& name = "<inline>");
/// A preset name ("golden", "third", "quarter", "two-fifths") or a file path.
RunConfig load_config(const std::string& path_or_preset);
std::vector<std::string> preset_names();
std::optional<std::string> preset_text(const std::string& name);

/// CANTORDIFF_BUDGET when set and valid, else `fallback`.
std::size_t default_budget(std::size_t fallback);

}  // namespace cantordiff
