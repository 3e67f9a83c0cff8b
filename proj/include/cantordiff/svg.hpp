#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "cantordiff/ifs.hpp"
#include "cantordiff/renorm.hpp"

namespace cantordiff {

/// One row per depth 0..n with the union of depth-k images of the hull.
/// Coordinates come from exact values rounded once, printed with fixed
/// precision, so output is byte-stable.
std::string render_interval_stack(const LineIFS& ifs, int depth, std::size_t budget = std::size_t{1} << 22);

/// (s, t)-plane for a two-branch pair: escape region E, the sets F and G
/// whose points are sent into E, the recurrent region R when given, and
/// the vertical line s = lambda when given.
std::string render_plane(const CantorPair& pair, const std::optional<Scalar>& lambda,
                         const RecurrentRegion* region);

}  // namespace cantordiff
