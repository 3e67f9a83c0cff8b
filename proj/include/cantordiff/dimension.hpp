#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cantordiff/ifs.hpp"

namespace cantordiff {

using CountMatrix = std::vector<std::vector<long>>;

struct FiniteTypeReport {
  bool certified = false;
  Integer denominator = 1;  // offsets lie in (1/k) Z[g] (or (1/k) Z)
  std::string ring;         // "Z[g]" or "Z"; empty when not certified
  std::string reason;
};

/// Certifies finite type when the expansion 1/ratio is a Pisot integer
/// (a rational integer, or a quadratic Pisot unit-free algebraic integer)
/// and all offsets lie in (1/k) of its ring of integers.
FiniteTypeReport is_finite_type(const LineIFS& ifs);

/// Island kind: a maximal group of overlapping same-level pieces,
/// translated to start at 0. Neighbor kind: one piece at 0 together with
/// every same-level piece overlapping it. Positions are left ends in units
/// where every piece has the length of the hull.
struct NeighborState {
  std::vector<Scalar> positions;
  Scalar length;           // span of the configuration
  std::size_t pieces = 1;  // distinct pieces counted by this state
};

enum class AutomatonKind { Island, Neighbor };
const char* automaton_kind_name(AutomatonKind k);

struct NeighborAutomaton {
  std::vector<NeighborState> states;
  std::vector<std::vector<std::pair<std::size_t, long>>> transitions;  // sparse rows
  std::size_t start_state = 0;                                         // the hull itself
  bool complete = false;  // false when the state budget stopped the closure
  AutomatonKind kind = AutomatonKind::Island;
  Scalar ratio;

  std::size_t size() const { return states.size(); }
  CountMatrix dense() const;
  /// Number of islands of each state at depth n (n >= 0); depth 0 is the hull.
  std::vector<Integer> populations(int n) const;
  /// Distinct depth-n pieces: sum of populations times state sizes.
  Integer class_count(int n) const;
};

/// Island automaton first; when islands keep growing (heavy overlap) it
/// falls back to neighbor types, where each child belongs to its leftmost
/// parent.
NeighborAutomaton build_automaton(const LineIFS& ifs, std::size_t state_budget = 10000);
NeighborAutomaton build_automaton(const LineIFS& ifs, AutomatonKind kind, std::size_t state_budget = 10000);

struct SpectralResult {
  Rational lo;  // Collatz-Wielandt lower bound
  Rational hi;  // Collatz-Wielandt upper bound
  int iterations = 0;
  Enclosure enclosure() const { return Enclosure::hull(lo, hi); }
  double width() const;
};

/// Largest eigenvalue of a nonnegative matrix: power iteration on A + I per
/// strongly connected block, certified by exact rational Collatz-Wielandt
/// bounds on the iterate.
SpectralResult spectral_radius(const CountMatrix& a, double tolerance = 1e-9, int max_iterations = 100000);

/// Monic characteristic polynomial, coefficients from x^n down to x^0.
std::vector<Rational> char_poly(const CountMatrix& a);
Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x);
Scalar eval_poly(const std::vector<Rational>& coeffs, const Scalar& x);

struct DimensionResult {
  bool complete = false;
  AutomatonKind kind = AutomatonKind::Island;
  std::size_t states = 0;
  std::optional<SpectralResult> radius;
  Enclosure hdim;          // log radius / log(1/ratio); an upper bound when incomplete
  Enclosure similarity;    // log(map count) / log(1/ratio)
  std::optional<std::vector<Rational>> char_poly;  // up to 12 states
};

DimensionResult hausdorff_dimension(const LineIFS& ifs, std::size_t state_budget = 10000);
DimensionResult hausdorff_dimension(const NeighborAutomaton& automaton, std::size_t map_count);

struct CountingBound {
  int depth = 0;
  Integer k;        // distinct depth-n classes
  Enclosure root;   // k^(1/n)
  Enclosure bound;  // log_{(1/ratio)^n} k
};

/// Uses the automaton when `automaton` is given and complete, otherwise
/// exact enumeration (lattice fast path when available).
CountingBound depth_counting_bound(const LineIFS& ifs, int n, const NeighborAutomaton* automaton = nullptr,
                                   std::size_t budget = std::size_t{1} << 24);

/// Distinct depth-n classes by enumeration (lattice merge when possible).
Integer enumerate_class_count(const LineIFS& ifs, int n, std::size_t budget = std::size_t{1} << 24);

struct ElementarySegment {
  Interval span;
  int coverage = 0;  // number of depth-1 images containing the segment
  Scalar length;
};

/// Splits the hull at all endpoints of depth-1 images.
std::vector<ElementarySegment> elementary_segments(const LineIFS& ifs);

enum class RegionRule { MeetsInterior, ContainedIn };

/// Depth-n classes whose image meets the interior of `region`
/// (MeetsInterior) or lies inside the closed `region` (ContainedIn).
std::size_t region_population(const LineIFS& ifs, const Interval& region, int n, RegionRule rule,
                              std::size_t budget = std::size_t{1} << 24);

enum class PisotVerdict { ContainsInterval, MeasureZero };
const char* pisot_verdict_name(PisotVerdict v);

struct PisotReport {
  PisotVerdict verdict = PisotVerdict::MeasureZero;
  std::string reason;
  std::optional<DimensionResult> dimension;
};

/// Pair (C_{w^-n}, C_{w^-m}) at mu for a quadratic Pisot w.
PisotReport classify_pisot_pair(const Field& omega, int n, int m, const Scalar& mu,
                                std::size_t state_budget = 10000);

}  // namespace cantordiff
