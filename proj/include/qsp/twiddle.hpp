#pragma once

/**
 * @file twiddle.hpp
 * @brief Roots of unity e^{2 pi i j / D} from Taylor series, D a power of two.
 *
 * The angle is reduced by exact multiples of the quarter and eighth period, so the series
 * only ever runs on theta in [0, pi/4].
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "qsp/errors.hpp"
#include "qsp/real.hpp"

namespace qsp {

namespace detail {
// (cos theta, sin theta) for 0 <= theta <= pi/4, summed until the terms drop below 2^-prec.
inline std::pair<Real, Real> taylor_cos_sin(const Real& theta) {
  Bits prec = working_precision();
  Real c = 1;
  Real s = theta;
  Real t2 = sqr(theta);
  Real term_c = 1;
  Real term_s = theta;
  Real cutoff = pow2(-(prec + 4));
  for (long k = 1;; ++k) {
    term_c = -term_c * t2 / Real((2 * k - 1) * (2 * k));
    term_s = -term_s * t2 / Real((2 * k) * (2 * k + 1));
    c += term_c;
    s += term_s;
    if (abs(term_c) < cutoff && abs(term_s) < cutoff) break;
  }
  return {c, s};
}

inline bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }
}  // namespace detail

/// e^{2 pi i j / d} at the working precision.
inline Complex unit_root(long j, std::size_t d) {
  if (!detail::is_power_of_two(d)) throw DomainError("root-of-unity order must be a power of two");
  long n = static_cast<long>(d);
  j %= n;
  if (j < 0) j += n;
  if (j == 0) return Complex(1);
  if (n == 2) return Complex(-1);

  long quarter = n / 4;
  long quadrant = j / quarter;
  long r = j - quadrant * quarter;
  Complex z;
  if (r == 0) {
    z = Complex(1);
  } else {
    Bits prec = working_precision();
    PrecisionScope scope(prec + 16);
    bool reflect = 2 * r > quarter;  // past pi/4: use the complementary angle
    long m = reflect ? quarter - r : r;
    Real theta = 2 * Real::pi() * Real(m) / Real(n);
    auto [c, s] = detail::taylor_cos_sin(theta);
    if (reflect) std::swap(c, s);
    PrecisionScope back(prec);
    z = Complex(rounded(c, prec), rounded(s, prec));
  }
  // multiply by i^quadrant
  for (long q = 0; q < quadrant; ++q) z = mul_i(z);
  return z;
}

/// All d-th roots of unity, index j holding e^{2 pi i j / d}. Only the first octant is
/// summed; the rest follow by symmetry.
inline std::vector<Complex> unit_roots(std::size_t d) {
  if (!detail::is_power_of_two(d)) throw DomainError("root-of-unity order must be a power of two");
  std::vector<Complex> out(d);
  if (d < 8) {
    for (std::size_t j = 0; j < d; ++j) out[j] = unit_root(static_cast<long>(j), d);
    return out;
  }
  std::size_t quarter = d / 4;
  std::size_t eighth = d / 8;
  for (std::size_t j = 0; j <= eighth; ++j) out[j] = unit_root(static_cast<long>(j), d);
  for (std::size_t j = eighth + 1; j < quarter; ++j) {
    const Complex& m = out[quarter - j];
    out[j] = Complex(m.im, m.re);
  }
  for (std::size_t j = quarter; j < d; ++j) out[j] = mul_i(out[j - quarter]);
  return out;
}

}  // namespace qsp
