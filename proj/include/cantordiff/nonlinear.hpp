#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantordiff/cantor.hpp"
#include "cantordiff/interval_set.hpp"

namespace cantordiff {

/// Catalog functions with validated value and derivative enclosures.
/// neg_cos turns sin C + cos C into the difference form f(C) - g(C).
class SmoothFn {
 public:
  enum class Kind { Affine, Square, Sqrt, Sin, Cos, NegSquare, NegCos };

  static SmoothFn affine(const Rational& a, const Rational& b);
  static SmoothFn square() { return SmoothFn(Kind::Square); }
  static SmoothFn sqrt() { return SmoothFn(Kind::Sqrt); }
  static SmoothFn sin() { return SmoothFn(Kind::Sin); }
  static SmoothFn cos() { return SmoothFn(Kind::Cos); }
  static SmoothFn neg_square() { return SmoothFn(Kind::NegSquare); }
  static SmoothFn neg_cos() { return SmoothFn(Kind::NegCos); }
  /// "square", "sqrt", "sin", "cos", "neg_square", "neg_cos", "affine:a,b".
  static SmoothFn parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::string name() const;
  /// Closed domain on which the enclosures are valid (x must lie inside).
  std::pair<double, double> domain() const;
  bool in_domain(const Enclosure& x) const;

  Enclosure value(const Enclosure& x) const;
  Enclosure derivative(const Enclosure& x) const;

 private:
  explicit SmoothFn(Kind k) : kind_(k) {}
  Kind kind_;
  Rational a_ = 1, b_ = 0;
};

/// A point of a Cantor set given by an eventually periodic branch word:
/// prefix digits, then the period repeated forever. Digit i selects
/// branch i (left to right).
struct CantorWord {
  std::vector<int> prefix;
  std::vector<int> period;

  int digit(std::size_t k) const;
  std::string to_string() const;
  static CantorWord parse(const std::string& text);  // "1(0)" = prefix 1, period 0
};

Scalar cantor_point(const CantorSet& set, const CantorWord& word);
/// phi_{w_1} o ... o phi_{w_k}(hull).
Interval cantor_cylinder(const CantorSet& set, const CantorWord& word, int depth);

/// Open slope range (m1, m2) not containing 0.
struct LinkRange {
  Scalar m1;
  Scalar m2;
  static LinkRange make(const Scalar& m1, const Scalar& m2);
  bool contains(const Scalar& x) const { return m1 < x && x < m2; }
  std::string to_string() const;
};

struct LinkReport {
  bool linked = false;
  bool connected = false;   // condition (i) on the whole open range
  bool pairs_ok = false;    // condition (ii)
  std::size_t maps = 0;
  std::vector<Scalar> crossings;            // endpoint-line crossings inside the range
  std::optional<Scalar> disconnected_at;    // a lambda where (i) fails
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;  // first pair failing (ii)
  std::string reason;
};

/// Depth-1 images S_i((lo(lambda), hi(lambda))) of the open hull, with all
/// endpoints affine in lambda on a range of fixed sign. (i) is decided at
/// every crossing inside the range and at every cell midpoint between
/// crossings; (ii) requires, for each pair, disjointness throughout the range
/// or a common point for all lambda in the range.
LinkReport regularly_linked(const CantorPair& pair, const LinkRange& range);

/// Open images S_i((hull)) at one lambda, as intervals (for reports).
std::vector<Interval> first_step_images(const CantorPair& pair, const Scalar& lambda);
/// Union of the open first-step images is the whole open hull.
bool open_union_is_hull(const CantorPair& pair, const Scalar& lambda);

struct Certificate {
  bool certified = false;
  std::string reason;
  Scalar x0, y0;
  CantorWord wx, wy;
  LinkRange range;
  Enclosure base_ratio;  // g'(y0)/f'(x0)
  int m0 = 1, n0 = 1;    // levels of C_a and C_b per construction step
  int depth = 0;         // construction steps of the subsquare
  Interval square_x, square_y;
  Enclosure square_ratio;  // g'(Y)/f'(X) over the subsquare
  std::string f_name, g_name;
};

/// f(C_a) - g(C_b) contains an interval: the pair is regularly linked on
/// `range`, m1 < g'(y0)/f'(x0) < m2, and a subsquare around (x0, y0) keeps
/// g'/f' inside the range.
Certificate interval_certificate(const SmoothFn& f, const SmoothFn& g, const CantorPair& pair, const CantorWord& wx,
                                 const CantorWord& wy, const LinkRange& range, int depth_cap = 40);

struct SmokeResult {
  std::size_t samples = 0;
  double modulus = 0;  // largest move from a sample to any point of its cell
  double max_gap = 0;  // largest gap between sorted sampled values
  double lo = 0, hi = 0;
  bool passed = false;
};

/// Samples f(x) - g(y) at left ends of finer construction squares inside
/// the certificate's subsquare (at least per_axis^2 of them); passes when no
/// gap exceeds 2 * modulus.
SmokeResult certificate_smoke_test(const Certificate& c, const SmoothFn& f, const SmoothFn& g,
                                   const CantorPair& pair, std::size_t per_axis = 128);

struct WeakStableRange {
  bool found = false;
  std::string reason;
  Rational m;      // linked on (1/m, m), certified
  Rational m_bad;  // smallest tested value that fails (upper bracket)
};

/// Largest m > 1 (up to a bracket of width `tol`) with the pair regularly
/// linked on (1/m, m), provided the open first-step union at lambda = 1 is
/// the whole open hull.
WeakStableRange weak_stable_range(const CantorPair& pair, const Rational& tol = Rational(1, 1 << 20),
                                  const Rational& m_cap = Rational(16));

struct NonlinearExample {
  std::string name;
  std::string description;
  SmoothFn f, g;
  CantorPair pair;
  CantorWord wx, wy;
  LinkRange range;
};

/// "sq-sum", "sincos", "sqrt".
NonlinearExample nonlinear_example(const std::string& name);
std::vector<std::string> nonlinear_example_names();

}  // namespace cantordiff
