#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantordiff/enclosure.hpp"

namespace cantordiff {

// gamma^2 = a*gamma + b, gamma the larger real root (> 1).
struct FieldSpec {
  Rational a;
  Rational b;
};

using Field = std::shared_ptr<const FieldSpec>;

// Throws PreconditionError unless a^2 + 4b > 0 is not a rational square and
// the larger root exceeds 1.
Field make_field(const Rational& a, const Rational& b);
bool same_field(const Field& x, const Field& y);
bool is_rational_square(const Rational& q);
std::string field_to_string(const Field& f);

enum class ArithOp { add, sub, mul, div };

/// u + v*gamma in Q(gamma), or a plain rational when the field is null.
///
/// Values are immutable. A rational scalar (v == 0) combines with any
/// field; two scalars tied to different fields cannot be combined.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : u_(n) {}  // NOLINT: implicit by design
  Scalar(const Rational& q) : u_(q) { u_.canonicalize(); }  // NOLINT
  Scalar(Rational u, Rational v, Field field);

  static Scalar generator(const Field& field);

  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  const Field& field() const { return field_; }

  bool is_rational() const { return v_ == 0; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }
  /// Throws PreconditionError if the gamma-part is nonzero.
  const Rational& rational() const;

  int sign() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar inverse() const;
  Scalar pow(long n) const;
  Rational norm() const;
  Scalar conjugate() const;
  /// Same value, re-tagged with field f (for rationals that meet a field).
  Scalar in_field(const Field& f) const;

  std::string to_string() const;
  double to_double() const;
  /// Validated enclosure; width <= 2^(1-bits)*|x|.
  Enclosure enclose(mpfr_prec_t bits = 128) const;
  std::size_t hash() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

 private:
  Rational u_{0};
  Rational v_{0};
  Field field_;
};

Scalar field_arith(const Scalar& x, const Scalar& y, ArithOp op);
std::strong_ordering compare(const Scalar& x, const Scalar& y);
Integer common_denominator(std::span<const Scalar> xs);
Enclosure to_float(const Scalar& x, mpfr_prec_t bits);
Field common_field(const Scalar& x, const Scalar& y);

const Scalar& min(const Scalar& x, const Scalar& y);
const Scalar& max(const Scalar& x, const Scalar& y);

struct ScalarHash {
  std::size_t operator()(const Scalar& x) const { return x.hash(); }
};

/// Parses expressions over Q and the generator symbol `g`: + - * / ^,
/// parentheses, integers, exact decimals, implicit products ("3g").
/// `generator` supplies the value of `g`; without it `g` is a parse error.
Scalar parse_scalar(std::string_view text,
                    const std::optional<Scalar>& generator = std::nullopt);

/// Parses "g^2=g+1" style declarations. Returns the larger root: a field
/// generator, or a plain rational when the discriminant is a square.
Scalar parse_field_generator(std::string_view decl);

Rational parse_rational(std::string_view text);

}  // namespace cantordiff
