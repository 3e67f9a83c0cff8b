#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantordiff/errors.hpp"
#include "cantordiff/scalar.hpp"

namespace cantordiff {

struct LineIFS;

/// Raised when an int64 lattice computation would overflow; callers fall
/// back to exact Scalar arithmetic.
struct LatticeOverflow : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

/// u + v*g in Z[g] with g^2 = a*g + b (a, b integers, g the larger root).
/// Without a field (a = b = 0) only v = 0 occurs.
struct ZPoint {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const ZPoint&, const ZPoint&) = default;
};

struct ZPointHash {
  std::size_t operator()(const ZPoint& x) const {
    std::uint64_t h = static_cast<std::uint64_t>(x.u) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(x.v) + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class ZRing {
 public:
  ZRing() = default;
  ZRing(std::int64_t a, std::int64_t b);

  ZPoint add(const ZPoint& x, const ZPoint& y) const;
  ZPoint sub(const ZPoint& x, const ZPoint& y) const;
  ZPoint mul(const ZPoint& x, const ZPoint& y) const;
  int sign(const ZPoint& x) const;
  bool less(const ZPoint& x, const ZPoint& y) const { return sign(sub(x, y)) < 0; }
  double to_double(const ZPoint& x) const;

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t disc_ = 0;  // a^2 + 4b
  double root_ = 0;
};

/// A LineIFS rescaled by an integer D so that D*offsets and D*hull lie in
/// Z[g], with rho = 1/ratio an algebraic integer. Depth-n quantities are
/// stored multiplied by D*rho^n, which keeps them integral.
struct LatticeSystem {
  ZRing ring;
  Field field;
  Integer scale;             // D
  ZPoint rho;                // 1/ratio
  ZPoint hull_lo, hull_hi;   // D*hull
  std::vector<ZPoint> first; // D*rho*b_i (depth-1 offsets)

  ZPoint to_lattice(const Scalar& x) const;  // D*x, must be integral
  Scalar to_scalar(const ZPoint& x) const;   // x/D
  ZPoint hull_length() const { return ring.sub(hull_hi, hull_lo); }
};

/// nullopt when the field has non-integer coefficients, 1/ratio is not an
/// algebraic integer, or the scaled values do not fit in int64.
std::optional<LatticeSystem> make_lattice(const LineIFS& ifs);

/// Distinct depth-n offsets in lattice units (D*rho^n*b_w), sorted by value.
std::vector<ZPoint> lattice_classes(const LatticeSystem& sys, int n, std::size_t budget);

}  // namespace cantordiff
