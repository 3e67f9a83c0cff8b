#pragma once

#include <cstddef>
#include <span>

namespace cantordiff::kernels {

/// y = (A + I) x for an n x n matrix stored column-major (a[j*n + i]).
/// Every variant sums each row in column order, so results are bitwise
/// identical across variants.
void shifted_matvec_scalar(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);
void shifted_matvec_avx2(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);

struct RatioBounds {
  double lo;
  double hi;
};

/// min and max of y_i / x_i over i (x_i > 0).
RatioBounds ratio_bounds_scalar(std::span<const double> y, std::span<const double> x);
RatioBounds ratio_bounds_avx2(std::span<const double> y, std::span<const double> x);

bool avx2_available();

/// Runtime-dispatched entry points.
void shifted_matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);
RatioBounds ratio_bounds(std::span<const double> y, std::span<const double> x);

/// Forces the scalar path (for tests and reproducibility checks).
void force_scalar(bool on);

}  // namespace cantordiff::kernels
