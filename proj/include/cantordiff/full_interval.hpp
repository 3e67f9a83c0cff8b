#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantordiff/cantor.hpp"
#include "cantordiff/interval_set.hpp"

namespace cantordiff {

/// How log(alpha)/log(beta) is known. `Auto` finds p = g^n0, q = g^m0
/// from an exact relation p^m0 = q^n0; irrationality is only ever declared.
struct DeclaredRatio {
  enum class Kind { Auto, Rational, Irrational };
  Kind kind = Kind::Auto;
  int n0 = 0;
  int m0 = 0;
  std::optional<Scalar> gamma;

  static DeclaredRatio automatic() { return {}; }
  static DeclaredRatio irrational() { return {Kind::Irrational, 0, 0, std::nullopt}; }
  static DeclaredRatio rational(int n0, int m0, const Scalar& gamma) { return {Kind::Rational, n0, m0, gamma}; }
};

struct FullIntervalAnalysis {
  Scalar alpha, beta, p, q;
  Scalar thickness_product;
  Scalar s0;  // q/(q-2)
  Scalar s1;  // (p-2)/p
  Interval gap_i;  // open interval (q/(p(q-2)), q(p-2)/p)
  bool irrational = false;
  std::optional<Scalar> gamma;
  int n0 = 0;  // p = g^n0
  int m0 = 0;  // q = g^m0
  std::optional<Interval> j;  // [(1-2a)/(g b), a/(1-2b)] when nonempty
  IntervalSet lambda_set;     // union of g^n J, n = -m0+1 .. n0
};

/// Needs thickness product < 1 for two middle sets.
FullIntervalAnalysis analyze(const CantorPair& pair, const DeclaredRatio& ratio = DeclaredRatio::automatic());

enum class FullVerdict { Full, NotFull };
const char* full_verdict_name(FullVerdict v);

struct FullCertificate {
  FullVerdict verdict = FullVerdict::NotFull;
  std::string route;  // "thickness", "lambda-set", "empty-lambda-set", "irrational"
  Scalar lambda;      // |lambda| actually tested
  std::optional<int> power;  // n with lambda in g^n J
  Interval window;           // [s1, s0] or the component of Lambda containing lambda
};

/// C_a - lambda C_b = [-lambda, 1]? Negative lambda reduces to |lambda|
/// through the symmetry of C_b.
FullCertificate is_full(const CantorPair& pair, const Scalar& lambda,
                        const DeclaredRatio& ratio = DeclaredRatio::automatic());

/// Piecewise map on [s1, s0]: x -> p x on [s1, q/(p(q-2))] and x -> x/q on
/// [q(p-2)/p, s0]. Returns both images when the pieces overlap at x.
std::vector<Scalar> t_map(const FullIntervalAnalysis& a, const Scalar& x);
/// Image of a closed interval lying inside one piece of t_map.
Interval t_map(const FullIntervalAnalysis& a, const Interval& iv);
/// Inverse pieces: x -> q x on [s1, 1/(q-2)], x -> x/p on [p-2, s0].
Interval s_map(const FullIntervalAnalysis& a, const Interval& iv);

/// Sum of |T^n(J)| for n < n0+m0 and |S^n(I)| for n < n0+m0-1; equals
/// s0 - s1 when the images tile [s1, s0].
Scalar accounting_total(const FullIntervalAnalysis& a);

/// C_a + C_b = [0, 2] via the integer-in-index-interval test; also checks
/// the answer against 1 in Lambda.
bool sum_full(const CantorPair& pair, const DeclaredRatio& ratio = DeclaredRatio::automatic());

}  // namespace cantordiff
