#pragma once

/**
 * @file roots.hpp
 * @brief All roots of a real polynomial with exact dyadic coefficients, to a certified
 *        additive accuracy.
 *
 * Aberth-Ehrlich iteration in double precision locates every root from Newton-polygon
 * starting points; the same iteration then polishes at multiprecision, doubling the
 * working bits up to target + guard. Each final approximation z_i carries the inclusion
 * radius n |q(z_i)| / |q'(z_i)| (inflated by a rounding bound), and the discs are checked
 * to be pairwise disjoint, so every true root sits in exactly one disc.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qsp/dyadic.hpp"
#include "qsp/errors.hpp"
#include "qsp/real.hpp"

namespace qsp {

struct RootFinderOptions {
  Bits guard_bits = 64;
  int double_iterations = 500;
  int iterations_per_level = 40;
};

struct CertifiedRoots {
  std::vector<Complex> roots;
  std::vector<Real> radii;  ///< true root within radii[i] of roots[i]
  Real max_radius;          ///< largest inclusion radius
  Bits bits = 0;            ///< precision the roots are stored at
};

namespace detail {

using cd = std::complex<double>;

// Starting points on circles whose radii come from the upper convex hull of
// (j, log|q_j|); each hull edge of width k contributes k points.
inline std::vector<cd> newton_polygon_start(const std::vector<double>& q) {
  int n = static_cast<int>(q.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg(q.size());
  for (int j = 0; j <= n; ++j) {
    lg[static_cast<std::size_t>(j)] =
        q[static_cast<std::size_t>(j)] != 0 ? std::log(std::abs(q[static_cast<std::size_t>(j)]))
                                            : -std::numeric_limits<double>::infinity();
  }
  for (int j = 0; j <= n; ++j) {
    if (std::isinf(lg[static_cast<std::size_t>(j)])) continue;
    while (idx.size() >= 2) {
      int a = idx[idx.size() - 2];
      int b = idx.back();
      double cross = (b - a) * (lg[static_cast<std::size_t>(j)] - lg[static_cast<std::size_t>(a)]) -
                     (j - a) * (lg[static_cast<std::size_t>(b)] - lg[static_cast<std::size_t>(a)]);
      if (cross >= 0) {
        idx.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(j);
  }
  std::vector<cd> z;
  z.reserve(static_cast<std::size_t>(n));
  const double two_pi = 2 * std::numbers::pi;
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    int k = idx[e + 1] - idx[e];
    double u = std::exp((lg[static_cast<std::size_t>(idx[e])] - lg[static_cast<std::size_t>(idx[e + 1])]) / k);
    for (int t = 0; t < k; ++t) {
      double angle = two_pi * t / k + two_pi * static_cast<double>(e) / n + 0.7;
      z.push_back(std::polar(u, angle));
    }
  }
  return z;
}

// q(z), q'(z) and a Horner error bound; for |z| > 1 the reversed polynomial is used and
// the returned pair is (rev(y), n rev(y) - y rev'(y)) with y = 1/z, whose ratio times z
// equals q/q'.
struct DoubleEval {
  cd ratio;        // q(z)/q'(z)
  bool small;      // |value| within rounding of zero
};

inline DoubleEval eval_double(const std::vector<double>& q, cd z) {
  int n = static_cast<int>(q.size()) - 1;
  constexpr double u = std::numeric_limits<double>::epsilon();
  if (std::abs(z) <= 1) {
    cd p = q[static_cast<std::size_t>(n)];
    cd dp = 0;
    double bound = std::abs(q[static_cast<std::size_t>(n)]);
    double az = std::abs(z);
    for (int j = n - 1; j >= 0; --j) {
      dp = dp * z + p;
      p = p * z + q[static_cast<std::size_t>(j)];
      bound = bound * az + std::abs(q[static_cast<std::size_t>(j)]);
    }
    return {p / dp, std::abs(p) <= 4 * (n + 1) * u * bound};
  }
  cd y = 1.0 / z;
  double ay = std::abs(y);
  cd r = q[0];
  cd dr = 0;
  double bound = std::abs(q[0]);
  for (int j = 1; j <= n; ++j) {
    dr = dr * y + r;
    r = r * y + q[static_cast<std::size_t>(j)];
    bound = bound * ay + std::abs(q[static_cast<std::size_t>(j)]);
  }
  cd den = static_cast<double>(n) * r - y * dr;
  return {z * r / den, std::abs(r) <= 4 * (n + 1) * u * bound};
}

inline std::vector<cd> aberth_double(const std::vector<double>& q, int max_iter) {
  std::vector<cd> z = newton_polygon_start(q);
  std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iter; ++it) {
    bool active = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      DoubleEval ev = eval_double(q, z[i]);
      if (ev.small) {
        done[i] = true;
        continue;
      }
      active = true;
      cd s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      cd w = ev.ratio / (1.0 - ev.ratio * s);
      z[i] -= w;
      if (std::abs(w) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[i]))) done[i] = true;
    }
    if (!active) break;
  }
  return z;
}

struct MpEval {
  Complex value;  // q(z)
  Complex deriv;  // q'(z)
  Real bound;     // sum |q_j| |z|^j
};

inline MpEval eval_mp(const std::vector<Real>& q, const Complex& z) {
  int n = static_cast<int>(q.size()) - 1;
  Complex p(q[static_cast<std::size_t>(n)]);
  Complex dp;
  Real az = abs(z);
  Real bound = abs(q[static_cast<std::size_t>(n)]);
  for (int j = n - 1; j >= 0; --j) {
    dp = dp * z + p;
    p = p * z + Complex(q[static_cast<std::size_t>(j)]);
    bound = bound * az + abs(q[static_cast<std::size_t>(j)]);
  }
  return {p, dp, bound};
}

// Newton ratio q/q' at multiprecision, reversing the polynomial outside the unit disk.
inline Complex newton_ratio_mp(const std::vector<Real>& q, const std::vector<Real>& rev, const Complex& z) {
  if (abs(z) <= Real(1)) {
    MpEval ev = eval_mp(q, z);
    return ev.value / ev.deriv;
  }
  Complex y = reciprocal(z);
  MpEval ev = eval_mp(rev, y);
  long n = static_cast<long>(q.size()) - 1;
  Complex den = Real(n) * ev.value - y * ev.deriv;
  return z * ev.value / den;
}

inline Complex to_low(const Complex& z, Bits bits) {
  PrecisionScope s(bits);
  return Complex(rounded(z.re, bits), rounded(z.im, bits));
}

}  // namespace detail

/// Roots of sum_j coeffs[j] w^j, stored at target_bits + guard bits. Each true root lies
/// within radii[i] of roots[i]; the caller compares max_radius against its accuracy goal.
/// coeffs[0] and coeffs.back() must be nonzero.
inline CertifiedRoots aberth_roots(const std::vector<Dyadic>& coeffs, Bits target_bits,
                                   const RootFinderOptions& opt = {}) {
  CertifiedRoots out;
  out.max_radius = 0;
  if (coeffs.size() <= 1) {
    out.bits = target_bits + opt.guard_bits;
    return out;
  }
  if (coeffs.front().is_zero() || coeffs.back().is_zero()) {
    throw DomainError("root finder needs nonzero constant and leading coefficients");
  }
  const std::size_t n = coeffs.size() - 1;

  std::vector<double> qd(coeffs.size());
  {
    PrecisionScope s(64);
    for (std::size_t j = 0; j <= n; ++j) qd[j] = coeffs[j].to_real().to_double();
  }
  std::vector<detail::cd> start = detail::aberth_double(qd, opt.double_iterations);
  for (const auto& z : start) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PrecisionInsufficient("double-precision root iteration diverged");
    }
  }

  std::vector<Complex> z(n);
  Bits final_bits = target_bits + opt.guard_bits;
  std::vector<Bits> ladder;
  for (Bits b = 128; b < final_bits; b *= 2) ladder.push_back(b);
  ladder.push_back(final_bits);

  bool first = true;
  constexpr Bits sum_bits = 128;
  for (Bits level : ladder) {
    PrecisionScope scope(level);
    std::vector<Real> q(n + 1);
    std::vector<Real> rev(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      q[j] = coeffs[j].to_real();
      rev[n - j] = q[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (first) {
        z[i] = Complex(Real(start[i].real()), Real(start[i].imag()));
      } else {
        z[i] = Complex(rounded(z[i].re, level), rounded(z[i].im, level));
      }
    }
    first = false;

    // the Aberth sum only steers; near convergence its error enters at second order
    std::vector<Complex> low(n);
    for (std::size_t i = 0; i < n; ++i) low[i] = detail::to_low(z[i], std::min(level, sum_bits));
    std::vector<bool> done(n, false);
    Real target = pow2(-(level - 24));
    Real prev_max;
    for (int it = 0; it < opt.iterations_per_level; ++it) {
      Real max_step = 0;
      bool active = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        active = true;
        Complex r = detail::newton_ratio_mp(q, rev, z[i]);
        Complex s;
        {
          PrecisionScope lo(std::min(level, sum_bits));
          for (std::size_t j = 0; j < n; ++j) {
            if (j != i) s += reciprocal(low[i] - low[j]);
          }
        }
        Complex w = r / (Complex(1) - r * s);
        z[i] -= w;
        low[i] = detail::to_low(z[i], std::min(level, sum_bits));
        Real step = abs(w) / max(Real(1), abs(z[i]));
        if (step <= target) done[i] = true;
        max_step = max(max_step, step);
      }
      if (!active) break;
      // stagnation: rounding noise, not convergence, now limits the step
      if (it >= 2 && !prev_max.is_zero() && max_step > ldexp(prev_max, -2)) break;
      prev_max = max_step;
    }
  }

  // certification at the final level
  PrecisionScope scope(final_bits);
  std::vector<Real> q(n + 1);
  for (std::size_t j = 0; j <= n; ++j) q[j] = coeffs[j].to_real();
  Real unit = pow2(-final_bits);
  Real slack = Real(static_cast<long>(4 * n + 8)) * unit;
  out.radii.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::MpEval ev = detail::eval_mp(q, z[i]);
    Real err = slack * ev.bound;
    Real dabs = abs(ev.deriv) - Real(static_cast<long>(n)) * err;
    if (dabs.sign() <= 0) {
      out.radii[i] = Real(1);  // no usable bound
    } else {
      out.radii[i] = Real(static_cast<long>(n)) * (abs(ev.value) + err) / dabs;
    }
    out.max_radius = max(out.max_radius, out.radii[i]);
  }
  // disjoint discs: each holds exactly one root
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dre = z[i].re.to_double() - z[j].re.to_double();
      double dim = z[i].im.to_double() - z[j].im.to_double();
      if (std::hypot(dre, dim) > 1e-6) continue;
      if (abs(z[i] - z[j]) <= out.radii[i] + out.radii[j]) {
        out.max_radius = max(out.max_radius, Real(1));
      }
    }
  }
  out.roots = std::move(z);
  out.bits = final_bits;
  return out;
}

}  // namespace qsp
