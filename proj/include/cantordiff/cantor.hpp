#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantordiff/interval_set.hpp"
#include "cantordiff/scalar.hpp"

namespace cantordiff {

/// Homogeneous affine Cantor set: expanding map psi(x) = p*x + e_i on the
/// branch psi^{-1}(hull) for each offset e_i. A middle Cantor set C_alpha
/// is the case p = 1/alpha, offsets {0, 1 - p}, hull [0, 1].
class CantorSet {
 public:
  static CantorSet middle(const Scalar& alpha);
  static CantorSet homogeneous(const Scalar& p, std::vector<Scalar> offsets, const Interval& hull);

  bool is_middle() const { return alpha_.has_value(); }
  /// Only for middle sets.
  const Scalar& alpha() const;
  const Scalar& p() const { return p_; }
  const std::vector<Scalar>& offsets() const { return offsets_; }
  const Interval& hull() const { return hull_; }
  std::size_t branch_count() const { return offsets_.size(); }
  /// psi^{-1}(hull) for branch i.
  Interval branch(std::size_t i) const;

  /// Constants c_w with g_w(x) = x/p^n + c_w for the n-fold inverse
  /// branches, in increasing order of the resulting interval.
  std::vector<Scalar> cylinder_offsets(int n) const;

  std::string describe() const;

 private:
  Scalar p_;
  std::vector<Scalar> offsets_;  // sorted by branch position
  Interval hull_;
  std::optional<Scalar> alpha_;
};

struct CantorPair {
  CantorSet first;
  CantorSet second;

  bool both_middle() const { return first.is_middle() && second.is_middle(); }
  CantorPair swapped() const { return CantorPair{second, first}; }
};

/// alpha/(1 - 2 alpha) for middle sets; bridge/gap for two-branch sets.
Scalar thickness(const CantorSet& set);
/// log 2 / log(1/alpha) for middle sets, log N / log p in general.
Enclosure hausdorff_dim(const CantorSet& set, mpfr_prec_t bits = 128);

/// Level-n construction intervals (2^n of them for middle sets).
IntervalSet level_intervals(const CantorSet& set, int n, int max_depth = 24);

struct LogRatio {
  int n0;
  int m0;
};
/// Reduced (n0, m0) with p^m0 = q^n0, searched up to `bound`; nullopt when
/// no relation is found (irrationality is never asserted).
std::optional<LogRatio> log_ratio(const Scalar& p, const Scalar& q, int bound = 64);
std::optional<LogRatio> log_ratio(const CantorPair& pair, int bound = 64);

/// HD sum > 1 and thickness product < 1 (boundary pairs are outside).
bool in_omega(const CantorPair& pair, mpfr_prec_t max_bits = 512);
Enclosure hd_sum(const CantorPair& pair, mpfr_prec_t bits = 128);

}  // namespace cantordiff
