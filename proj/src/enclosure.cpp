#include "cantordiff/enclosure.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace cantordiff {

namespace {

void set_q(mpfr_ptr dst, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(dst, q.get_mpq_t(), rnd);
}

Rational to_rational(mpfr_srcptr x) {
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

mpfr_prec_t joint_prec(const Enclosure& x, const Enclosure& y) {
  return std::max(x.precision(), y.precision());
}

}  // namespace

Enclosure::Enclosure(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept : Enclosure(other) {}

Enclosure& Enclosure::operator=(const Enclosure& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Enclosure::~Enclosure() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Enclosure Enclosure::point(const Rational& value, mpfr_prec_t precision) {
  Enclosure e(precision);
  set_q(e.lo_, value, MPFR_RNDD);
  set_q(e.hi_, value, MPFR_RNDU);
  return e;
}

Enclosure Enclosure::point(double value, mpfr_prec_t precision) {
  Enclosure e(precision);
  mpfr_set_d(e.lo_, value, MPFR_RNDD);
  mpfr_set_d(e.hi_, value, MPFR_RNDU);
  return e;
}

Enclosure Enclosure::hull(const Rational& lo, const Rational& hi,
                          mpfr_prec_t precision) {
  Enclosure e(precision);
  set_q(e.lo_, lo < hi ? lo : hi, MPFR_RNDD);
  set_q(e.hi_, lo < hi ? hi : lo, MPFR_RNDU);
  return e;
}

double Enclosure::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Enclosure::midpoint() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

Rational Enclosure::lower_exact() const { return to_rational(lo_); }
Rational Enclosure::upper_exact() const { return to_rational(hi_); }

double Enclosure::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Enclosure::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Enclosure::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Enclosure::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Enclosure::overlaps(const Enclosure& other) const {
  return mpfr_cmp(lo_, other.hi_) <= 0 && mpfr_cmp(other.lo_, hi_) <= 0;
}

bool Enclosure::certainly_less(const Enclosure& other) const {
  return mpfr_cmp(hi_, other.lo_) < 0;
}

bool Enclosure::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Enclosure::certainly_negative() const { return mpfr_sgn(hi_) < 0; }

Enclosure operator+(const Enclosure& x, const Enclosure& y) {
  Enclosure r(joint_prec(x, y));
  mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
  return r;
}

Enclosure operator-(const Enclosure& x, const Enclosure& y) {
  Enclosure r(joint_prec(x, y));
  mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
  return r;
}

Enclosure operator-(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  return r;
}

Enclosure operator*(const Enclosure& x, const Enclosure& y) {
  mpfr_prec_t prec = joint_prec(x, y);
  Enclosure r(prec);
  mpfr_t c;
  mpfr_init2(c, prec);
  mpfr_srcptr xs[2] = {x.lo_, x.hi_};
  mpfr_srcptr ys[2] = {y.lo_, y.hi_};
  bool first = true;
  for (auto a : xs) {
    for (auto b : ys) {
      mpfr_mul(c, a, b, MPFR_RNDD);
      if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
      mpfr_mul(c, a, b, MPFR_RNDU);
      if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(c);
  return r;
}

Enclosure operator/(const Enclosure& x, const Enclosure& y) {
  if (y.contains_zero()) {
    throw std::domain_error("enclosure division by an interval containing 0");
  }
  mpfr_prec_t prec = joint_prec(x, y);
  Enclosure inv(prec);
  mpfr_ui_div(inv.lo_, 1, y.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, y.lo_, MPFR_RNDU);
  return x * inv;
}

Enclosure log(const Enclosure& x) {
  if (!x.certainly_positive()) throw std::domain_error("log of non-positive enclosure");
  Enclosure r(x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Enclosure exp(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Enclosure sqrt(const Enclosure& x) {
  if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("sqrt of negative enclosure");
  Enclosure r(x.precision());
  mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

// sin is increasing on [-pi/2, pi/2]; the caller guarantees the domain.
Enclosure sin(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_sin(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sin(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

// cos is decreasing on [0, pi].
Enclosure cos(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_cos(r.lo_, x.hi_, MPFR_RNDD);
  mpfr_cos(r.hi_, x.lo_, MPFR_RNDU);
  return r;
}

Enclosure join(const Enclosure& x, const Enclosure& y) {
  Enclosure r(joint_prec(x, y));
  mpfr_min(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
  return r;
}

std::string Enclosure::to_string(int digits) const {
  char buf[160];
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "[%%.%dRDg, %%.%dRUg]", digits, digits);
  mpfr_snprintf(buf, sizeof buf, fmt, lo_, hi_);
  return buf;
}

double round_down(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
  double d = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return d;
}

double round_up(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

}  // namespace cantordiff
