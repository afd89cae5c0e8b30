#pragma once

/**
 * @file fourier.hpp
 * @brief F(z) = a I + b iX + c iY + d iZ sampled on the grid, and its matrix Fourier
 *        coefficients by four independent radix-2 FFTs.
 *
 * With z = t^2 the coefficient of z^j is the coefficient of t^{2j}; a sequence of top
 * exponent m stores the exponents -m, -m+2, ..., m only.
 */

#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "qsp/completion.hpp"
#include "qsp/errors.hpp"
#include "qsp/ingest.hpp"
#include "qsp/mat2.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"
#include "qsp/twiddle.hpp"

namespace qsp {

/// In-place radix-2 transform. Forward: X_j = sum_k x_k w^{-jk}; inverse drops the minus
/// sign. No 1/D factor either way. `roots[k]` = e^{2 pi i k / D}.
inline void fft(std::vector<Complex>& x, const std::vector<Complex>& roots, bool inverse = false) {
  const std::size_t d = x.size();
  if (!detail::is_power_of_two(d) || roots.size() != d) throw DomainError("fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < d; ++i) {
    std::size_t bit = d >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= d; len <<= 1) {
    std::size_t step = d / len;
    std::size_t half = len / 2;
    for (std::size_t start = 0; start < d; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex& w0 = roots[j * step];
        Complex v = x[start + j + half] * (inverse ? w0 : conj(w0));
        x[start + j + half] = x[start + j] - v;
        x[start + j] += v;
      }
    }
  }
}

using MatrixTable = std::vector<Mat2>;

namespace detail {
// f(z_k) for all k from the exact coefficients by one inverse transform
inline std::vector<Complex> sample_on_grid(const DyadicPoly& f, const std::vector<Complex>& roots) {
  const long d = static_cast<long>(roots.size());
  std::vector<Complex> x(roots.size());
  for (const auto& [k, c] : f.terms()) {
    long idx = ((k % d) + d) % d;
    x[static_cast<std::size_t>(idx)] += c.to_complex();
  }
  fft(x, roots, true);
  return x;
}
}  // namespace detail

/// F(z_k) = [[a + i d, c + i b], [-c + i b, a - i d]] at every grid point.
inline MatrixTable assemble_F(const TruncatedPair& pair, const ComplementGrid& grid) {
  PrecisionScope scope(grid.c.empty() ? working_precision() : grid.c.front().precision());
  auto roots = unit_roots(grid.size);
  auto a = detail::sample_on_grid(pair.a, roots);
  auto b = detail::sample_on_grid(pair.b, roots);
  MatrixTable table(grid.size);
  for (std::size_t k = 0; k < grid.size; ++k) {
    // a, b are real on the circle; their imaginary parts are rounding
    const Real& av = a[k].re;
    const Real& bv = b[k].re;
    const Real& cv = grid.c[k];
    const Real& dv = grid.d[k];
    table[k] = Mat2(Complex(av, dv), Complex(cv, bv), Complex(-cv, bv), Complex(av, -dv));
  }
  return table;
}

/// Coefficients C_k of t^k for k = -top, -top+2, ..., top.
struct MatrixCoeffSeq {
  int top = 0;
  std::vector<Mat2> coeffs;  ///< coeffs[i] multiplies t^{-top + 2i}
  Real out_of_band;          ///< largest entry among the discarded frequencies
  Real delta;                ///< additive error budget of every coefficient

  Mat2& at(int k) { return coeffs[static_cast<std::size_t>((k + top) / 2)]; }
  const Mat2& at(int k) const { return coeffs[static_cast<std::size_t>((k + top) / 2)]; }
};

/// C_{2j} = (1/D) sum_k F(z_k) z_k^{-j} for |j| <= n. Frequencies outside [-n, n] vanish
/// in exact arithmetic and must stay under 16 times the coefficient error budget.
inline MatrixCoeffSeq matrix_fft(const MatrixTable& table, int n, const PrecisionContext& ctx) {
  const std::size_t d = table.size();
  if (!detail::is_power_of_two(d) || d <= static_cast<std::size_t>(2 * n)) {
    throw DomainError("table size must be a power of two above 2n");
  }
  PrecisionScope scope(ctx.bits);
  auto roots = unit_roots(d);
  MatrixCoeffSeq seq;
  seq.top = 2 * n;
  seq.coeffs.assign(static_cast<std::size_t>(2 * n + 1), Mat2::zero());
  seq.out_of_band = 0;
  seq.delta = ctx.fft_budget();
  const long dd = static_cast<long>(d);
  const long shift = std::countr_zero(d);  // divide by D exactly
  for (std::size_t e = 0; e < 4; ++e) {
    std::vector<Complex> x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = table[k].e[e];
    fft(x, roots, false);
    for (long idx = 0; idx < dd; ++idx) {
      long j = idx <= dd / 2 ? idx : idx - dd;
      const Complex& raw = x[static_cast<std::size_t>(idx)];
      Complex v(ldexp(raw.re, -shift), ldexp(raw.im, -shift));
      if (j >= -n && j <= n) {
        seq.coeffs[static_cast<std::size_t>(j + n)].e[e] = std::move(v);
      } else {
        seq.out_of_band = max(seq.out_of_band, abs(v));
      }
    }
  }
  PrecisionScope coarse(64);
  if (seq.out_of_band > Real(16) * seq.delta) {
    throw PrecisionInsufficient("out-of-band Fourier content " + to_string(seq.out_of_band, 4) + " exceeds " +
                                to_string(Real(16) * seq.delta, 4));
  }
  return seq;
}

}  // namespace qsp
