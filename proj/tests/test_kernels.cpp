#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "cantordiff/kernels.hpp"
#include "doctest.h"

using namespace cantordiff;

namespace {

std::vector<double> naive_shifted(const std::vector<double>& a, std::size_t n, const std::vector<double>& x) {
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a[j * n + i] * x[j];
    y[i] = s + x[i];
  }
  return y;
}

bool bitwise_equal(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("shifted matvec: scalar and avx2 agree bitwise with the naive loop") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 31u, 64u, 101u}) {
    std::vector<double> a(n * n), x(n);
    for (auto& v : a) v = std::floor(u(rng));
    for (auto& v : x) v = u(rng) / 7.0;
    std::vector<double> ys(n), yv(n);
    kernels::shifted_matvec_scalar(a, n, x, ys);
    CHECK(bitwise_equal(ys, naive_shifted(a, n, x)));
    if (kernels::avx2_available()) {
      kernels::shifted_matvec_avx2(a, n, x, yv);
      CHECK(bitwise_equal(ys, yv));
    }
  }
}

TEST_CASE("ratio bounds: scalar and avx2 agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (std::size_t n : {1u, 3u, 4u, 6u, 9u, 16u, 37u}) {
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    double lo = y[0] / x[0], hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, y[i] / x[i]);
      hi = std::max(hi, y[i] / x[i]);
    }
    auto s = kernels::ratio_bounds_scalar(y, x);
    CHECK(s.lo == lo);
    CHECK(s.hi == hi);
    if (kernels::avx2_available()) {
      auto v = kernels::ratio_bounds_avx2(y, x);
      CHECK(v.lo == s.lo);
      CHECK(v.hi == s.hi);
    }
  }
}

TEST_CASE("dispatch honours force_scalar") {
  std::vector<double> a{1, 2, 3, 4}, x{1, 1}, y1(2), y2(2);
  kernels::force_scalar(true);
  kernels::shifted_matvec(a, 2, x, y1);
  kernels::force_scalar(false);
  kernels::shifted_matvec(a, 2, x, y2);
  CHECK(y1 == std::vector<double>{5, 7});
  CHECK(y1 == y2);
}
