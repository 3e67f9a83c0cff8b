#include "cantordiff/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <atomic>

namespace cantordiff::kernels {

namespace {

std::atomic<bool> g_force_scalar{false};

}  // namespace

void shifted_matvec_scalar(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j * n + i] * x[j];
    y[i] = acc + x[i];
  }
}

__attribute__((target("avx2"))) void shifted_matvec_avx2(std::span<const double> a, std::size_t n,
                                                         std::span<const double> x, std::span<double> y) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n; ++j) {
      __m256d col = _mm256_loadu_pd(&a[j * n + i]);
      __m256d xj = _mm256_set1_pd(x[j]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col, xj));
    }
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&y[i], acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j * n + i] * x[j];
    y[i] = acc + x[i];
  }
}

RatioBounds ratio_bounds_scalar(std::span<const double> y, std::span<const double> x) {
  RatioBounds r{y[0] / x[0], y[0] / x[0]};
  for (std::size_t i = 1; i < x.size(); ++i) {
    double q = y[i] / x[i];
    r.lo = std::min(r.lo, q);
    r.hi = std::max(r.hi, q);
  }
  return r;
}

__attribute__((target("avx2"))) RatioBounds ratio_bounds_avx2(std::span<const double> y, std::span<const double> x) {
  const std::size_t n = x.size();
  double first = y[0] / x[0];
  RatioBounds r{first, first};
  std::size_t i = 0;
  if (n >= 4) {
    __m256d lo = _mm256_set1_pd(first);
    __m256d hi = lo;
    for (; i + 4 <= n; i += 4) {
      __m256d q = _mm256_div_pd(_mm256_loadu_pd(&y[i]), _mm256_loadu_pd(&x[i]));
      lo = _mm256_min_pd(lo, q);
      hi = _mm256_max_pd(hi, q);
    }
    alignas(32) double l[4], h[4];
    _mm256_store_pd(l, lo);
    _mm256_store_pd(h, hi);
    for (int k = 0; k < 4; ++k) {
      r.lo = std::min(r.lo, l[k]);
      r.hi = std::max(r.hi, h[k]);
    }
  }
  for (; i < n; ++i) {
    double q = y[i] / x[i];
    r.lo = std::min(r.lo, q);
    r.hi = std::max(r.hi, q);
  }
  return r;
}

bool avx2_available() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
}

void force_scalar(bool on) { g_force_scalar = on; }

void shifted_matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y) {
  if (!g_force_scalar && avx2_available()) {
    shifted_matvec_avx2(a, n, x, y);
  } else {
    shifted_matvec_scalar(a, n, x, y);
  }
}

RatioBounds ratio_bounds(std::span<const double> y, std::span<const double> x) {
  if (!g_force_scalar && avx2_available()) return ratio_bounds_avx2(y, x);
  return ratio_bounds_scalar(y, x);
}

}  // namespace cantordiff::kernels
