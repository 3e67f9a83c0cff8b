#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantordiff/cantor.hpp"
#include "cantordiff/orbit_search.hpp"

namespace cantordiff {

struct PlanePoint {
  Scalar s;
  Scalar t;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// (s, t) -> (s_scale*s, t_scale*t + st_coeff*s + t_offset)
struct PlaneOp {
  std::string name;
  Scalar s_scale;
  Scalar t_scale;
  Scalar st_coeff;
  Scalar t_offset;
  bool primed = false;  // T' form (acts on the second set)

  PlanePoint apply(const PlanePoint& x) const;
};

/// T_i for each branch of K, then T'_j for each branch of K'.
std::vector<PlaneOp> make_operators(const CantorPair& pair);

/// Applies ops[word[0]] first.
PlanePoint apply_word(const std::vector<PlaneOp>& ops, const std::vector<int>& word, PlanePoint x);

/// Hull of K - sK'.
Interval difference_hull(const CantorPair& pair, const Scalar& s);

struct RecurrentRegion {
  Scalar a;  // hull of K is [0, a]
  Scalar b;  // hull of K' is [0, b]
  Scalar s0;
  Scalar s_min;
  Scalar s_max;
  Scalar eps;
  Scalar delta;
  Scalar p_max;
  Scalar p0;  // slope of the left branch of K

  Scalar t_lower(const Scalar& s) const { return -b * s + delta; }
  Scalar t_upper() const { return a - delta; }
  bool contains(const PlanePoint& x) const;
  bool contains_interior(const PlanePoint& x) const;
};

/// s0 = -q0 q1 a / (q0 f1 + q1 b), with (eps, delta) found by an exact
/// search until the recurrence inequality holds. Needs thickness product > 1.
RecurrentRegion build_recurrent_set(const CantorPair& pair);

struct RecurrenceReport {
  std::size_t points = 0;
  std::size_t failures = 0;
  int max_steps = 0;
  std::optional<PlanePoint> first_failure;
  std::size_t case_a = 0, case_b = 0, case_c = 0;
};

/// Every point of a res x res grid over R is driven back into the interior
/// of R, starting with the operator family dictated by its case (A: T',
/// B: T_0, C: T_1).
RecurrenceReport verify_recurrence(const RecurrentRegion& region, const CantorPair& pair, int res,
                                   int step_cap = 40);

/// Semi-decides t in K - sK' through the canonical operator orbit of (s, t).
/// In-certificates are exact: a repeated configuration, a hit of R°
/// (self-loop "R"), or a point on a fixed-point line t = x_i - s*y_j
/// (self-loop "Fij").
MembershipResult membership(const Scalar& t, const Scalar& s, const CantorPair& pair, std::size_t budget,
                            const RecurrentRegion* verified_region = nullptr);

/// s1 <= lambda <= s0 from the two-branch thickness argument.
struct ThicknessWindow {
  Scalar s1;
  Scalar s0;
};
ThicknessWindow thickness_window(const CantorPair& pair);
bool full_interval_via_thickness(const CantorPair& pair, const Scalar& lambda);

}  // namespace cantordiff
