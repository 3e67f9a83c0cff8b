#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace cantordiff {

using Integer = mpz_class;
using Rational = mpq_class;

/// Closed real interval [lo, hi] with MPFR endpoints rounded outward.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the true value is always contained. Used for
/// reporting and for the few decisions that cannot be made algebraically.
class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t precision = 128);
  Enclosure(const Enclosure& other);
  Enclosure(Enclosure&& other) noexcept;
  Enclosure& operator=(const Enclosure& other);
  Enclosure& operator=(Enclosure&& other) noexcept;
  ~Enclosure();

  static Enclosure point(const Rational& value, mpfr_prec_t precision = 128);
  static Enclosure point(double value, mpfr_prec_t precision = 128);
  static Enclosure hull(const Rational& lo, const Rational& hi,
                        mpfr_prec_t precision = 128);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  double lower() const;
  double upper() const;
  double midpoint() const;
  Rational lower_exact() const;
  Rational upper_exact() const;
  double width() const;

  bool contains(double x) const;
  bool contains(const Rational& x) const;
  bool contains_zero() const;
  bool overlaps(const Enclosure& other) const;
  /// True when every point of *this is < every point of other.
  bool certainly_less(const Enclosure& other) const;
  bool certainly_positive() const;
  bool certainly_negative() const;

  friend Enclosure operator+(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator-(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator*(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator/(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator-(const Enclosure& x);

  friend Enclosure log(const Enclosure& x);
  friend Enclosure exp(const Enclosure& x);
  friend Enclosure sqrt(const Enclosure& x);
  /// sin on an interval inside [-pi/2, pi/2].
  friend Enclosure sin(const Enclosure& x);
  /// cos on an interval inside [0, pi].
  friend Enclosure cos(const Enclosure& x);
  friend Enclosure join(const Enclosure& x, const Enclosure& y);

  std::string to_string(int digits = 12) const;

  mpfr_srcptr lo_ptr() const { return lo_; }
  mpfr_srcptr hi_ptr() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Enclosure log(const Enclosure& x);
Enclosure exp(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);
Enclosure sin(const Enclosure& x);
Enclosure cos(const Enclosure& x);
Enclosure join(const Enclosure& x, const Enclosure& y);

double round_down(const Rational& q);
double round_up(const Rational& q);

}  // namespace cantordiff
