#pragma once

/**
 * @file dyadic.hpp
 * @brief Exact dyadic rationals m * 2^e and their complex pairs.
 *
 * Truncated input coefficients all have power-of-two denominators, so products and sums
 * of them (1 - a^2 - b^2 in particular) stay exact in this representation.
 */

#include <gmpxx.h>

#include <algorithm>
#include <ostream>
#include <utility>

#include "qsp/real.hpp"

namespace qsp {

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : mantissa_(value) { normalize(); }
  Dyadic(mpz_class mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
  }

  /// Truncates x toward zero to a multiple of 2^-fraction_bits.
  static Dyadic truncate(const Real& x, long fraction_bits) {
    PrecisionScope scope(x.precision() + 2);
    Real scaled = ldexp(x, fraction_bits);
    mpz_class m;
    mpfr_get_z(m.get_mpz_t(), scaled.get(), MPFR_RNDZ);
    return Dyadic(std::move(m), -fraction_bits);
  }

  const mpz_class& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0; }
  int sign() const { return sgn(mantissa_); }
  /// Number of fractional bits needed to write the value exactly.
  long denominator_bits() const { return std::max(0L, -exponent_); }

  /// Value at the working precision (exact when the mantissa fits).
  Real to_real() const {
    Real r;
    mpfr_set_z_2exp(r.get(), mantissa_.get_mpz_t(), exponent_, MPFR_RNDN);
    return r;
  }
  /// Value at exactly enough bits to be exact.
  Real to_real_exact() const {
    Bits bits = std::max<Bits>(static_cast<Bits>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2)), 2);
    PrecisionScope scope(bits);
    return to_real();
  }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  Dyadic half() const { return Dyadic(mantissa_, exponent_ - 1); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exponent_, b.exponent_);
    mpz_class ma = a.mantissa_ << static_cast<mp_bitcnt_t>(a.exponent_ - e);
    mpz_class mb = b.mantissa_ << static_cast<mp_bitcnt_t>(b.exponent_ - e);
    return Dyadic(ma + mb, e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  /// |a| < |b|
  friend bool abs_less(const Dyadic& a, const Dyadic& b) {
    long e = std::min(a.exponent_, b.exponent_);
    mpz_class ma = abs(a.mantissa_) << static_cast<mp_bitcnt_t>(a.exponent_ - e);
    mpz_class mb = abs(b.mantissa_) << static_cast<mp_bitcnt_t>(b.exponent_ - e);
    return ma < mb;
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.mantissa_ << "*2^" << d.exponent_;
  }

 private:
  // Canonical form: odd mantissa, or zero with exponent 0.
  void normalize() {
    if (mantissa_ == 0) {
      exponent_ = 0;
      return;
    }
    mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz > 0) {
      mantissa_ >>= tz;
      exponent_ += static_cast<long>(tz);
    }
  }

  mpz_class mantissa_ = 0;
  long exponent_ = 0;
};

struct ComplexDyadic {
  Dyadic re;
  Dyadic im;

  ComplexDyadic() = default;
  ComplexDyadic(Dyadic r) : re(std::move(r)) {}
  ComplexDyadic(Dyadic r, Dyadic i) : re(std::move(r)), im(std::move(i)) {}
  ComplexDyadic(long r) : re(r) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  ComplexDyadic half() const { return {re.half(), im.half()}; }

  Complex to_complex() const { return {re.to_real(), im.to_real()}; }
  /// |z|^2 exactly.
  Dyadic norm() const { return re * re + im * im; }

  friend ComplexDyadic operator+(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexDyadic operator-(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexDyadic operator-(const ComplexDyadic& a) { return {-a.re, -a.im}; }
  friend ComplexDyadic operator*(const ComplexDyadic& a, const ComplexDyadic& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexDyadic& operator+=(const ComplexDyadic& o) { return *this = *this + o; }
  ComplexDyadic& operator-=(const ComplexDyadic& o) { return *this = *this - o; }

  friend bool operator==(const ComplexDyadic& a, const ComplexDyadic& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexDyadic& a, const ComplexDyadic& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const ComplexDyadic& z) {
    return os << "(" << z.re << ", " << z.im << ")";
  }
};

inline ComplexDyadic conj(const ComplexDyadic& z) { return {z.re, -z.im}; }
inline ComplexDyadic mul_i(const ComplexDyadic& z) { return {-z.im, z.re}; }

}  // namespace qsp
