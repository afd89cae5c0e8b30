#pragma once

/**
 * @file precision.hpp
 * @brief Working precision R and the worst-case error budgets derived from it.
 */

#include <algorithm>
#include <cmath>

#include "qsp/real.hpp"

namespace qsp {

struct PrecisionContext {
  Bits bits = 64;        ///< R
  Real epsilon = 0.01;   ///< target accuracy
  int degree_bound = 1;  ///< N, at least 1

  PrecisionContext() = default;
  PrecisionContext(Bits r, Real eps, int n)
      : bits(r), epsilon(std::move(eps)), degree_bound(std::max(n, 1)) {}

  /// 2^{-R}
  Real unit() const { return pow2(-bits); }

  /// Additive error budget of the Fourier coefficients: 400 N^3 eps^{-1} 2^{-R}.
  Real fft_budget() const {
    PrecisionScope scope(64);
    Real n = degree_bound;
    return Real(400) * n * n * n / epsilon * unit();
  }

  /// Worst-case Gamma = 400 N^3 eps^{-1} (76 N eps^{-1})^{2N} 2^{-R}.
  Real gamma_budget() const {
    PrecisionScope scope(64);
    Real growth = Real(76) * Real(degree_bound) / epsilon;
    return fft_budget() * pow(growth, 2L * degree_bound);
  }

  /// (2N+1) 2 Gamma (1 + 2 Gamma)^{2N+1} <= eps: the a priori sufficient precision condition.
  bool worst_case_sufficient() const {
    PrecisionScope scope(64);
    Real g = gamma_budget();
    long terms = 2L * degree_bound + 1;
    Real lhs = Real(terms) * 2 * g * pow(Real(1) + 2 * g, terms);
    return lhs <= epsilon;
  }

  /// ceil(2 N log2(N / eps)) + 64, the largest precision the adaptive driver will try.
  static Bits worst_case_cap(int n, const Real& eps) {
    PrecisionScope scope(64);
    int nn = std::max(n, 1);
    Real ratio = Real(nn) / eps;
    Real bits = Real(2 * nn) * log2(max(ratio, Real(1)));
    return static_cast<Bits>(bits.to_long_ceil()) + 64;
  }

  /// Bits used for final output: ceil(log2(20 N / eps)).
  static Bits output_bits(int n, const Real& eps) {
    PrecisionScope scope(64);
    Real v = log2(Real(20 * std::max(n, 1)) / eps);
    return std::max<Bits>(static_cast<Bits>(v.to_long_ceil()), 8);
  }
};

}  // namespace qsp
