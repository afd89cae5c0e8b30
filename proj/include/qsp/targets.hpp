#pragma once

/**
 * @file targets.hpp
 * @brief Input generators: the Jacobi-Anger partial sum of e^{i tau sin(phi)} and a bounded
 *        polynomial approximation to 1/(kappa sin(phi)) for matrix inversion.
 */

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsp/errors.hpp"
#include "qsp/ingest.hpp"
#include "qsp/poly.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"

namespace qsp {

namespace detail {
// x rounded up to an integer, forgiving values that overshoot an integer by rounding noise
inline long tolerant_ceil(const Real& x) {
  PrecisionScope s(std::max<Bits>(x.precision(), 64));
  Real nudged = x - pow2(-40) * max(Real(1), abs(x));
  return nudged.to_long_ceil();
}

// bits at which generated coefficients are printed: the ingest precision plus a margin
inline Bits generator_bits(int n, const Real& eps) {
  PrecisionScope s(64);
  Real v = 2 * log2(Real(100 * std::max(n, 1)) / eps);
  return std::max<Bits>(64, static_cast<Bits>(v.to_long_ceil())) + 32;
}
}  // namespace detail

/// J_k(tau) = sum_m (-1)^m (tau/2)^{2m+|k|} / (m! (m+|k|)!), with J_{-k} = (-1)^k J_k.
/// Summed with ceil(|tau| log2 e) + 32 guard bits against cancellation and rounded to R.
inline Real bessel_j(long k, const Real& tau, const PrecisionContext& ctx) {
  long ak = std::labs(k);
  Bits guard;
  {
    PrecisionScope s(64);
    guard = static_cast<Bits>((abs(tau) * log2(exp(Real(1)))).to_long_ceil()) + 32;
  }
  Bits work = ctx.bits + guard;
  PrecisionScope scope(work);
  Real half = ldexp(Real(tau), -1);
  Real term = 1;
  for (long j = 1; j <= ak; ++j) term = term * half / Real(j);
  if (term.is_zero()) return rounded(term, ctx.bits);
  Real minus_sq = -sqr(half);
  Real sum = term;
  // relative to the leading term, so tiny J_k keep their digits too
  Real floor_term = abs(term) * pow2(-ctx.bits - 32);
  for (long m = 1;; ++m) {
    term = term * minus_sq / Real(m * (m + ak));
    sum += term;
    // past the peak the terms shrink monotonically
    bool decreasing = sqr(half) < Real(m + 1) * Real(m + 1 + ak);
    if (decreasing && abs(term) < floor_term) break;
  }
  if (k < 0 && (ak % 2 == 1)) sum = -sum;
  return rounded(sum, ctx.bits);
}

struct JacobiAngerSpec {
  std::string tau = "0";
  std::string epsilon = "0.001";
  int n = 0;  ///< truncation degree N
};

/// sum_{|k| > n} |J_k(tau)| <= sum_{k > n} 2 |tau/2|^k / k!
inline Real jacobi_anger_tail(const Real& tau, int n) {
  PrecisionScope s(64);
  Real half = abs(ldexp(Real(tau), -1));
  Real term = 1;
  for (int j = 1; j <= n + 1; ++j) term = term * half / Real(j);
  Real sum = 0;
  for (long k = n + 1;; ++k) {
    sum += 2 * term;
    Real next = term * half / Real(k + 1);
    if (half < Real(k + 1) && next < sum * pow2(-60)) break;
    term = next;
    if (term.is_zero()) break;
  }
  return sum;
}

/// N = ceil(1.36 |tau| + 2.30 log10(1/eps)), raised until the coefficient tail is at most eps.
inline JacobiAngerSpec jacobi_anger_spec(const std::string& tau, const std::string& epsilon) {
  PrecisionScope s(128);
  Real t = Real::parse(tau, 128);
  Real eps = Real::parse(epsilon, 128);
  if (!(eps > Real(0) && eps < Real(1))) throw ValidationError("epsilon must lie in (0, 1), got " + epsilon);
  JacobiAngerSpec spec{tau, epsilon, 0};
  Real guess = Real(1.36) * abs(t) + Real(2.30) * log10(Real(1) / eps);
  spec.n = static_cast<int>(std::max(0L, detail::tolerant_ceil(guess)));
  while (jacobi_anger_tail(t, spec.n) > eps) ++spec.n;
  return spec;
}

/// zeta_k = J_k(tau) for |k| <= N: A = J_0 + sum_{even k} J_k (z^k + z^-k) is even, the odd
/// terms form i B.
inline TargetSpec jacobi_anger(const JacobiAngerSpec& ja) {
  Real eps = Real::parse(ja.epsilon, 128);
  Bits bits = detail::generator_bits(ja.n, eps);
  PrecisionContext ctx(bits, eps, ja.n);
  Real tau = Real::parse(ja.tau, bits + 64);
  TargetSpec spec;
  spec.epsilon = ja.epsilon;
  spec.parity_re = Parity::even;
  spec.parity_im = Parity::odd;
  int digits = round_trip_digits(bits);
  for (int k = -ja.n; k <= ja.n; ++k) {
    Real j = bessel_j(k, tau, ctx);
    spec.coefficients.push_back({k, j.is_zero() ? "0" : to_string(j, digits), "0"});
  }
  return spec;
}

struct InverseSpec {
  std::string kappa = "1";
  std::string epsilon = "0.001";
  long b = 1;
  long b_prime = 1;
};

/// b = ceil(kappa^2 ln(2/eps)), b' = min(b, ceil(sqrt(b ln(8/eps)))).
inline InverseSpec inverse_params(const Real& kappa, const Real& epsilon) {
  PrecisionScope s(std::max<Bits>({kappa.precision(), epsilon.precision(), 128}));
  if (kappa < Real(1)) throw ValidationError("kappa must be at least 1");
  if (!(epsilon > Real(0) && epsilon < Real(1))) throw ValidationError("epsilon must lie in (0, 1)");
  InverseSpec out;
  out.kappa = to_string(kappa, round_trip_digits(kappa.precision()));
  out.epsilon = to_string(epsilon, round_trip_digits(epsilon.precision()));
  out.b = std::max(1L, detail::tolerant_ceil(sqr(kappa) * log(Real(2) / epsilon)));
  long bp = detail::tolerant_ceil(sqrt(Real(out.b) * log(Real(8) / epsilon)));
  out.b_prime = std::clamp(bp, 1L, out.b);
  return out;
}

inline InverseSpec inverse_params(const std::string& kappa, const std::string& epsilon) {
  InverseSpec out = inverse_params(Real::parse(kappa, 128), Real::parse(epsilon, 128));
  out.kappa = kappa;
  out.epsilon = epsilon;
  return out;
}

/// f(z) = -(2i / (4^b kappa)) sum_{k=1}^{b'} C(2b, b+k) (z^k - z^-k) G_k(z),
/// G_k = z^{k-1} + z^{k-3} + ... + z^{1-k}. Only odd exponents |j| <= 2b'-1 occur, with
/// integer weight S_j = sign(j) sum_{k >= (|j|+1)/2} C(2b, b+k).
inline ComplexPoly inverse_function(const InverseSpec& spec, Bits bits) {
  if (spec.b < 1 || spec.b_prime < 1 || spec.b_prime > spec.b) throw DomainError("need b >= b' >= 1");
  PrecisionScope scope(bits);
  Real kappa = Real::parse(spec.kappa, bits);
  std::vector<mpz_class> binom(static_cast<std::size_t>(spec.b_prime) + 1);
  for (long k = 1; k <= spec.b_prime; ++k) {
    mpz_bin_uiui(binom[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(2 * spec.b),
                 static_cast<unsigned long>(spec.b + k));
  }
  // 2 / (4^b kappa)
  Real scale = ldexp(Real(1), 1 - 2 * spec.b) / kappa;
  ComplexPoly f;
  mpz_class suffix = 0;
  for (long k = spec.b_prime; k >= 1; --k) {
    suffix += binom[static_cast<std::size_t>(k)];
    Real w = scale * Real(suffix);
    // j = 2k-1 and its mirror; coefficient -i w sign(j)
    int j = static_cast<int>(2 * k - 1);
    f.set(j, Complex(Real(0), -w));
    f.set(-j, Complex(Real(0), w));
  }
  return f;
}

/// ln(8/eps) rounded upward at `bits`.
inline Real inverse_normalizer(const Real& epsilon, Bits bits) {
  Real out = Real::with_precision(bits);
  Real ratio = Real::with_precision(bits + 32);
  mpfr_ui_div(ratio.get(), 8, epsilon.get(), MPFR_RNDU);
  mpfr_log(out.get(), ratio.get(), MPFR_RNDU);
  return out;
}

/// f / ln(8/eps) as a target. A = f is real on the circle and odd; B = 0.
inline TargetSpec inverse_poly(const InverseSpec& spec) {
  int n = static_cast<int>(2 * spec.b_prime - 1);
  Real eps = Real::parse(spec.epsilon, 128);
  Bits bits = detail::generator_bits(n, eps);
  PrecisionScope scope(bits);
  ComplexPoly f = inverse_function(spec, bits + 32);
  Real norm_value = inverse_normalizer(Real::parse(spec.epsilon, bits + 32), bits);
  int digits = round_trip_digits(bits);

  // |f| <= 2 b' / kappa on the circle
  {
    PrecisionScope coarse(64);
    Real bound = Real(2 * spec.b_prime) / Real::parse(spec.kappa, 64);
    Real peak = detail::max_on_circle(detail::grid_points_at_least(16 * static_cast<std::size_t>(n + 1)),
                                      [&](const Complex& z) { return abs(evaluate(f, z)); });
    if (peak > bound * (Real(1) + pow2(-40))) {
      throw DomainError("inverse approximant exceeds its magnitude bound: " + to_string(peak, 6));
    }
  }

  TargetSpec out;
  out.epsilon = spec.epsilon;
  out.parity_re = Parity::odd;
  out.parity_im = Parity::even;
  out.normalizer = to_string(norm_value, digits);
  // round_trip_digits makes the recorded decimal parse back to the same upward-rounded value
  Real used = Real::parse(*out.normalizer, bits);
  for (int j = -n; j <= n; j += 2) {
    Real im = f.coeff(j).im / used;
    out.coefficients.push_back({j, "0", to_string(im, digits)});
  }
  return out;
}

}  // namespace qsp
