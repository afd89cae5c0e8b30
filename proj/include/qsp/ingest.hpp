#pragma once

/**
 * @file ingest.hpp
 * @brief Target validation and the scaled dyadic truncation that yields exact a(z), b(z).
 *
 * The target is A(z) + i B(z) = sum_k zeta_k z^k with A, B real on the unit circle and of
 * definite parity in phi (z = e^{i phi}). Coefficients of (1 - 10 eps) A and (1 - 10 eps) B
 * are truncated toward zero to ceil(log2(N/eps)) fractional bits; only nonnegative exponents
 * are truncated and the negative ones are mirrored, so the parities survive exactly.
 */

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsp/dyadic.hpp"
#include "qsp/errors.hpp"
#include "qsp/poly.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"

namespace qsp {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct TargetCoefficient {
  int k = 0;
  std::string re = "0";
  std::string im = "0";
};

/// Input of the decomposition: Fourier coefficients given as decimal strings.
struct TargetSpec {
  std::string epsilon = "0.001";
  Parity parity_re = Parity::even;
  Parity parity_im = Parity::odd;
  std::vector<TargetCoefficient> coefficients;
  /// Set by generators that divided the target by a constant (recorded so callers can undo it).
  std::optional<std::string> normalizer;

  /// N: the largest |k| present in the coefficient list.
  int degree_bound() const {
    int n = 0;
    for (const auto& c : coefficients) n = std::max(n, std::abs(c.k));
    return n;
  }
  Real epsilon_value(Bits bits = 128) const { return Real::parse(epsilon, bits); }
};

/// Bits at which decimal inputs are read: 2 log2(100 N / eps), at least 64.
inline Bits input_bits(const TargetSpec& spec) {
  PrecisionScope scope(64);
  Real eps = spec.epsilon_value();
  int n = std::max(spec.degree_bound(), 1);
  Real v = 2 * log2(Real(100 * n) / eps);
  return std::max<Bits>(64, static_cast<Bits>(v.to_long_ceil()));
}

/// sum_k zeta_k z^k with coefficients parsed at `bits`.
inline ComplexPoly target_poly(const TargetSpec& spec, Bits bits) {
  PrecisionScope scope(bits);
  ComplexPoly p;
  for (const auto& c : spec.coefficients) {
    p.add_to(c.k, Complex(Real::parse(c.re, bits), Real::parse(c.im, bits)));
  }
  return p;
}

/// A and B with A + iB = target and both real on the unit circle:
/// A_k = (zeta_k + conj zeta_{-k})/2, B_k = (zeta_k - conj zeta_{-k})/(2i).
inline std::pair<ComplexPoly, ComplexPoly> real_imag_parts(const ComplexPoly& target) {
  ComplexPoly a;
  ComplexPoly b;
  std::set<int> exponents;
  for (const auto& [k, c] : target.terms()) {
    exponents.insert(k);
    exponents.insert(-k);
  }
  for (int k : exponents) {
    Complex zk = target.coeff(k);
    Complex mirror = conj(target.coeff(-k));
    a.set(k, halved(zk + mirror));
    b.set(k, -mul_i(halved(zk - mirror)));
  }
  return {a, b};
}

namespace detail {
inline std::size_t grid_points_at_least(std::size_t minimum) {
  std::size_t g = 16;
  while (g < minimum) g *= 2;
  return g;
}

// max over z = e^{2 pi i j / G} of f(z)
template <class F>
Real max_on_circle(std::size_t grid, F&& f) {
  Real best = -1;
  Real two_pi = 2 * Real::pi();
  for (std::size_t j = 0; j < grid; ++j) {
    Complex z = Complex::polar(two_pi * Real(static_cast<long>(j)) / Real(static_cast<long>(grid)));
    best = max(best, f(z));
  }
  return best;
}

inline void require_parity(const ComplexPoly& p, Parity parity, const Real& tol, const char* name) {
  for (const auto& [k, c] : p.terms()) {
    Complex mirror = p.coeff(-k);
    Complex diff = parity == Parity::even ? c - mirror : c + mirror;
    if (abs(diff) > tol) {
      throw ValidationError(std::string(name) + " does not have the declared " + to_string(parity) +
                            " parity at exponent " + std::to_string(k));
    }
  }
}
}  // namespace detail

/// Rejects targets that break the input contract. |A + iB|^2 may exceed 1 by at most eps,
/// which covers truncated series such as the Jacobi-Anger partial sums.
inline void validate(const TargetSpec& spec) {
  Real eps = spec.epsilon_value();
  // 1/100 itself is accepted: the reference examples run there
  if (!(eps > Real(0) && eps <= Real::parse("0.01", eps.precision()))) {
    throw ValidationError("epsilon must lie in (0, 1/100], got " + spec.epsilon);
  }
  if (spec.coefficients.empty()) throw ValidationError("target has no coefficients");
  std::set<int> seen;
  for (const auto& c : spec.coefficients) {
    if (!seen.insert(c.k).second) {
      throw ValidationError("duplicate coefficient for k = " + std::to_string(c.k));
    }
  }

  Bits bits = input_bits(spec);
  PrecisionScope scope(bits);
  int n = std::max(spec.degree_bound(), 1);
  ComplexPoly target = target_poly(spec, bits);
  auto [a, b] = real_imag_parts(target);
  Real tol = eps / Real(100 * n);
  detail::require_parity(a, spec.parity_re, tol, "real part A");
  detail::require_parity(b, spec.parity_im, tol, "imaginary part B");

  PrecisionScope coarse(64);
  Real peak = detail::max_on_circle(detail::grid_points_at_least(8 * static_cast<std::size_t>(n)),
                                    [&](const Complex& z) { return norm(evaluate(target, z)); });
  if (peak > Real(1) + eps) {
    throw ValidationError("|A + iB| exceeds 1 on the unit circle (max |A+iB|^2 = " +
                          to_string(peak, 8) + ")");
  }
}

/// Exact a(z), b(z) after scaling and truncation, plus the bookkeeping later steps need.
struct TruncatedPair {
  DyadicPoly a;
  DyadicPoly b;
  int n = 0;             ///< max(deg a, deg b)
  int degree_bound = 1;  ///< N of the input, at least 1
  Real epsilon;
  Parity parity_re = Parity::even;
  Parity parity_im = Parity::odd;
  long fraction_bits = 0;  ///< every coefficient is a multiple of 2^{-fraction_bits}
};

namespace detail {
// Truncated (1 - 10 eps) * part, or zero when below eps/N; `imaginary` selects which
// component carries the value.
inline ComplexDyadic truncate_coefficient(const Complex& value, bool imaginary, const Real& scale,
                                          long fraction_bits, const Real& floor) {
  Real x = (imaginary ? value.im : value.re) * scale;
  Dyadic t = Dyadic::truncate(x, fraction_bits);
  if (t.is_zero() || abs(t.to_real_exact()) < floor) return ComplexDyadic();
  return imaginary ? ComplexDyadic(Dyadic(), t) : ComplexDyadic(t);
}

inline DyadicPoly truncate_part(const ComplexPoly& part, Parity parity, const Real& scale,
                                long fraction_bits, const Real& floor) {
  DyadicPoly out;
  // even parity + real on circle => real coefficients; odd => imaginary ones
  bool imaginary = parity == Parity::odd;
  for (const auto& [k, c] : part.terms()) {
    if (k < 0 || (k == 0 && parity == Parity::odd)) continue;
    ComplexDyadic t = truncate_coefficient(c, imaginary, scale, fraction_bits, floor);
    if (t.is_zero()) continue;
    out.set(k, t);
    if (k > 0) out.set(-k, parity == Parity::even ? t : -t);
  }
  return out;
}
}  // namespace detail

/// Largest value of a^2 + b^2 on `grid` equispaced points of the unit circle.
inline Real max_modulus_squared(const TruncatedPair& pair, std::size_t grid) {
  ComplexPoly a = to_complex_poly(pair.a);
  ComplexPoly b = to_complex_poly(pair.b);
  return detail::max_on_circle(grid, [&](const Complex& z) {
    return sqr(evaluate(a, z).re) + sqr(evaluate(b, z).re);
  });
}

inline TruncatedPair truncate(const TargetSpec& spec) {
  validate(spec);
  Bits bits = input_bits(spec);
  PrecisionScope scope(bits + 64);

  TruncatedPair pair;
  pair.degree_bound = std::max(spec.degree_bound(), 1);
  pair.epsilon = spec.epsilon_value(bits + 64);
  pair.parity_re = spec.parity_re;
  pair.parity_im = spec.parity_im;

  Real n = pair.degree_bound;
  Real floor = pair.epsilon / n;
  pair.fraction_bits = log2(n / pair.epsilon).to_long_ceil();
  Real scale = Real(1) - Real(10) * pair.epsilon;

  auto [a, b] = real_imag_parts(target_poly(spec, bits));
  pair.a = detail::truncate_part(a, spec.parity_re, scale, pair.fraction_bits, floor);
  pair.b = detail::truncate_part(b, spec.parity_im, scale, pair.fraction_bits, floor);
  if (pair.a.is_zero() && pair.b.is_zero()) {
    throw DegenerateInput("every coefficient truncated to zero; nothing to decompose");
  }
  pair.n = std::max(pair.a.degree(), pair.b.degree());

  PrecisionScope coarse(64);
  Real peak = max_modulus_squared(pair, detail::grid_points_at_least(16 * static_cast<std::size_t>(pair.degree_bound)));
  if (peak > Real(1) - pair.epsilon) {
    throw ValidationError("truncated a^2 + b^2 exceeds 1 - eps on the unit circle");
  }
  return pair;
}

}  // namespace qsp
