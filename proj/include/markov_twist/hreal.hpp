#pragma once

/**
 * @file hreal.hpp
 * @brief Arbitrary-precision binary floating value with explicit precision.
 *
 * HReal is a thin value-semantic wrapper over an MPFR number. Every value
 * carries its own precision; binary operations produce a result at the
 * larger of the two operand precisions. There is no ambient default
 * precision: every construction names one.
 */

#include <mpfr.h>

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace markov_twist {

/// Smallest precision accepted for an HReal.
inline constexpr long kMinPrecisionBits = 64;

class HReal {
 public:
  explicit HReal(long precision_bits) {
    check_precision(precision_bits);
    mpfr_init2(value_, precision_bits);
    mpfr_set_zero(value_, 1);
  }

  HReal(long value, long precision_bits) : HReal(precision_bits) {
    mpfr_set_si(value_, value, MPFR_RNDN);
  }

  HReal(double value, long precision_bits) : HReal(precision_bits) {
    mpfr_set_d(value_, value, MPFR_RNDN);
  }

  /// Rounds the integer to the top precision_bits bits.
  HReal(const mpz_class& value, long precision_bits) : HReal(precision_bits) {
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
  }

  HReal(const mpq_class& value, long precision_bits) : HReal(precision_bits) {
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
  }

  HReal(const std::string& decimal, long precision_bits) : HReal(precision_bits) {
    if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("HReal: not a decimal number: " + decimal);
    }
  }

  HReal(const HReal& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  HReal(HReal&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }

  HReal& operator=(const HReal& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  HReal& operator=(HReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~HReal() { mpfr_clear(value_); }

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  /// Same value rounded to another precision.
  HReal at_precision(long precision_bits) const {
    HReal out(precision_bits);
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
  }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr raw() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Base-2 exponent e with value = m * 2^e, 0.5 <= |m| < 1.
  long exponent() const { return static_cast<long>(mpfr_get_exp(value_)); }

  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int significant_digits = 17) const {
    char* buffer = nullptr;
    if (mpfr_asprintf(&buffer, "%.*Rg", significant_digits, value_) < 0) {
      throw std::runtime_error("HReal: formatting failed");
    }
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
  }

  HReal& operator+=(const HReal& rhs) { return apply(rhs, mpfr_add); }
  HReal& operator-=(const HReal& rhs) { return apply(rhs, mpfr_sub); }
  HReal& operator*=(const HReal& rhs) { return apply(rhs, mpfr_mul); }
  HReal& operator/=(const HReal& rhs) { return apply(rhs, mpfr_div); }

  HReal operator-() const {
    HReal out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
  }

  friend HReal operator+(HReal lhs, const HReal& rhs) { return lhs += rhs; }
  friend HReal operator-(HReal lhs, const HReal& rhs) { return lhs -= rhs; }
  friend HReal operator*(HReal lhs, const HReal& rhs) { return lhs *= rhs; }
  friend HReal operator/(HReal lhs, const HReal& rhs) { return lhs /= rhs; }

  friend HReal operator+(HReal lhs, long rhs) {
    mpfr_add_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
    return lhs;
  }
  friend HReal operator+(long lhs, HReal rhs) { return std::move(rhs) + lhs; }
  friend HReal operator-(HReal lhs, long rhs) {
    mpfr_sub_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
    return lhs;
  }
  friend HReal operator-(long lhs, HReal rhs) {
    mpfr_si_sub(rhs.value_, lhs, rhs.value_, MPFR_RNDN);
    return rhs;
  }
  friend HReal operator*(HReal lhs, long rhs) {
    mpfr_mul_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
    return lhs;
  }
  friend HReal operator*(long lhs, HReal rhs) { return std::move(rhs) * lhs; }
  friend HReal operator/(HReal lhs, long rhs) {
    mpfr_div_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
    return lhs;
  }
  friend HReal operator/(long lhs, HReal rhs) {
    mpfr_si_div(rhs.value_, lhs, rhs.value_, MPFR_RNDN);
    return rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const HReal& x) { return os << x.to_string(25); }

  friend bool operator==(const HReal& a, const HReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const HReal& a, const HReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const HReal& a, const HReal& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const HReal& a, const HReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const HReal& a, const HReal& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const HReal& a, long b) { return mpfr_cmp_si(a.value_, b) < 0; }
  friend bool operator>(const HReal& a, long b) { return mpfr_cmp_si(a.value_, b) > 0; }
  friend bool operator<=(const HReal& a, long b) { return mpfr_cmp_si(a.value_, b) <= 0; }
  friend bool operator>=(const HReal& a, long b) { return mpfr_cmp_si(a.value_, b) >= 0; }

 private:
  using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static void check_precision(long precision_bits) {
    if (precision_bits < kMinPrecisionBits || precision_bits > MPFR_PREC_MAX) {
      throw std::invalid_argument("HReal: precision must be at least 64 bits");
    }
  }

  HReal& apply(const HReal& rhs, BinaryOp op) {
    if (rhs.precision() > precision()) {
      mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
    }
    op(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
  }

  mpfr_t value_;
};

namespace detail {

using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

inline HReal apply_unary(const HReal& x, UnaryOp op) {
  HReal out(x.precision());
  op(out.raw(), x.get(), MPFR_RNDN);
  return out;
}

}  // namespace detail

inline HReal sqrt(const HReal& x) { return detail::apply_unary(x, mpfr_sqrt); }
inline HReal log(const HReal& x) { return detail::apply_unary(x, mpfr_log); }
inline HReal log1p(const HReal& x) { return detail::apply_unary(x, mpfr_log1p); }
inline HReal exp(const HReal& x) { return detail::apply_unary(x, mpfr_exp); }
inline HReal cosh(const HReal& x) { return detail::apply_unary(x, mpfr_cosh); }
inline HReal sinh(const HReal& x) { return detail::apply_unary(x, mpfr_sinh); }
inline HReal tanh(const HReal& x) { return detail::apply_unary(x, mpfr_tanh); }
inline HReal sech(const HReal& x) { return detail::apply_unary(x, mpfr_sech); }
inline HReal acosh(const HReal& x) { return detail::apply_unary(x, mpfr_acosh); }
inline HReal asinh(const HReal& x) { return detail::apply_unary(x, mpfr_asinh); }
inline HReal atanh(const HReal& x) { return detail::apply_unary(x, mpfr_atanh); }
inline HReal abs(const HReal& x) { return detail::apply_unary(x, mpfr_abs); }
inline HReal square(const HReal& x) { return detail::apply_unary(x, mpfr_sqr); }

inline HReal max(const HReal& a, const HReal& b) { return a < b ? b : a; }
inline HReal min(const HReal& a, const HReal& b) { return b < a ? b : a; }

/// 2^e at the given precision.
inline HReal pow2(long e, long precision_bits) {
  HReal out(1L, precision_bits);
  mpfr_mul_2si(out.raw(), out.get(), e, MPFR_RNDN);
  return out;
}

/// |a - b| / max(|a|, |b|), or |a - b| when both are zero-ish.
inline HReal relative_difference(const HReal& a, const HReal& b) {
  HReal scale = max(abs(a), abs(b));
  HReal diff = abs(a - b);
  if (scale.is_zero()) return diff;
  return diff / scale;
}

}  // namespace markov_twist
