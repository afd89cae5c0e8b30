#pragma once

/**
 * @file real.hpp
 * @brief Value-semantic wrappers over MPFR: Real, Complex and a thread-local working precision.
 *
 * Every arithmetic result is rounded (to nearest) to the working precision of the calling
 * thread, which is set for a scope with PrecisionScope. Copies keep the precision of their
 * source, so values computed in one round keep their accuracy when read in another.
 */

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "qsp/errors.hpp"

namespace qsp {

using Bits = mpfr_prec_t;

namespace detail {
inline Bits& working_precision_slot() {
  thread_local Bits bits = 64;
  return bits;
}
}  // namespace detail

inline Bits working_precision() { return detail::working_precision_slot(); }

/// Sets the working precision of this thread for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(Bits bits) : saved_(working_precision()) {
    detail::working_precision_slot() = std::max<Bits>(bits, MPFR_PREC_MIN);
  }
  ~PrecisionScope() { detail::working_precision_slot() = saved_; }

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Bits saved_;
};

class Real {
 public:
  Real() {
    mpfr_init2(v_, working_precision());
    mpfr_set_zero(v_, 1);
  }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(long x) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(double x) {
    mpfr_init2(v_, working_precision());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  explicit Real(const mpz_class& z) {
    mpfr_init2(v_, working_precision());
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Zero with an explicit precision, independent of the working precision.
  static Real with_precision(Bits bits) {
    PrecisionScope scope(bits);
    return Real();
  }

  /// Parses a decimal (or "1e-4" style) string, rounding to nearest at `bits`.
  static Real parse(std::string_view text, Bits bits) {
    Real r = with_precision(bits);
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 || !mpfr_number_p(r.v_)) {
      throw ValidationError("not a finite decimal number: '" + std::string(text) + "'");
    }
    return r;
  }

  static Real pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Bits precision() const { return mpfr_get_prec(v_); }

  /// Rounds in place to `bits` significant bits.
  void round_to(Bits bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }
  long to_long_ceil() const { return mpfr_get_si(v_, MPFR_RNDU); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

  Real operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

inline Real abs(const Real& x) {
  Real r;
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& x) {
  Real r;
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real sqr(const Real& x) {
  Real r;
  mpfr_sqr(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real exp(const Real& x) {
  Real r;
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real log(const Real& x) {
  Real r;
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real log2(const Real& x) {
  Real r;
  mpfr_log2(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real log10(const Real& x) {
  Real r;
  mpfr_log10(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real sin(const Real& x) {
  Real r;
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& x) {
  Real r;
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long e) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
/// x * 2^e, exact unless it under/overflows.
inline Real ldexp(const Real& x, long e) {
  Real r = Real::with_precision(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
/// 2^e exactly.
inline Real pow2(long e) {
  Real r = Real::with_precision(2);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

/// Copy rounded to `bits` significant bits.
inline Real rounded(const Real& x, Bits bits) {
  Real r = x;
  r.round_to(bits);
  return r;
}

/// Scientific decimal string with `digits` significant digits ("-1.2345e-7").
inline std::string to_string(const Real& x, int digits) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) return mpfr_nan_p(x.get()) ? "nan" : (x.sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(digits, 2)), x.get(),
                           MPFR_RNDN);
  std::unique_ptr<char, void (*)(char*)> guard(raw, mpfr_free_str);
  std::string m(raw);
  std::string out;
  if (m.front() == '-') {
    out.push_back('-');
    m.erase(m.begin());
  }
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  out.push_back(m.front());
  if (m.size() > 1) {
    out.push_back('.');
    out.append(m.substr(1));
  }
  if (e - 1 != 0) out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

/// Decimal digits that make a `bits`-bit value round-trip through to_string/parse.
inline int round_trip_digits(Bits bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 2;
}

inline std::ostream& operator<<(std::ostream& os, const Real& x) { return os << to_string(x, 20); }

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r) {}
  Complex(double r) : re(r) {}
  Complex(double r, double i) : re(r), im(i) {}

  static Complex i() { return Complex(Real(0), Real(1)); }
  /// e^{i theta} via MPFR's correctly rounded sin/cos.
  static Complex polar(const Real& theta) {
    Complex z;
    mpfr_sin_cos(z.im.get(), z.re.get(), theta.get(), MPFR_RNDN);
    return z;
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r;
    mpfr_fmms(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmma(im.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Complex r;
    mpfr_fmms(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(r.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    return r;
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real den;
    mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    Complex r;
    mpfr_fmma(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmms(r.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    r.re /= den;
    r.im /= den;
    return r;
  }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
/// |z|^2
inline Real norm(const Complex& z) {
  Real r;
  mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex reciprocal(const Complex& z) {
  Real den = norm(z);
  return {z.re / den, -z.im / den};
}
/// i * z
inline Complex mul_i(const Complex& z) { return {-z.im, z.re}; }
inline Complex rounded(const Complex& z, Bits bits) { return {rounded(z.re, bits), rounded(z.im, bits)}; }

inline std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

}  // namespace qsp
