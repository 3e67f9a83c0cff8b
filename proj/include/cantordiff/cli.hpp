#pragma once

#include <ostream>

namespace cantordiff {

/// Subcommands: ifs, cover, member, full, dim, recur, nonlinear, linked,
/// sweep, render. Exit status 0 on success, 2 on malformed input, 3 when a
/// budget ran out (partial JSON is still written), 4 on an internal
/// invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cantordiff
