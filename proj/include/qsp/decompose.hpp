#pragma once

/**
 * @file decompose.hpp
 * @brief Peeling primitive factors E_P(t) = t P + t^{-1} (I - P) off a matrix Laurent
 *        polynomial, highest exponent first.
 *
 * With C_m the top and C_{-m} the bottom coefficient, P = C_m^dag C_m / Tr(C_m^dag C_m)
 * and Q = C_{-m}^dag C_{-m} / Tr(...). Multiplying on the right by E_P(t)^{-1} =
 * t^{-1} P + t Q lowers the degree by one:
 *   C'_k = C_{k-1} Q + C_{k+1} P.
 * What is left at degree zero is E_0.
 */

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qsp/errors.hpp"
#include "qsp/fourier.hpp"
#include "qsp/mat2.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"

namespace qsp {

/// Rank-one projector (I + px X + py Y + pz Z)/2 with its Bloch vector.
struct Projector2 {
  Mat2 matrix;
  std::array<Real, 3> bloch;

  static Projector2 from_bloch(Real px, Real py, Real pz) {
    Projector2 p;
    p.matrix = bloch_projector(px, py, pz);
    p.bloch = {std::move(px), std::move(py), std::move(pz)};
    return p;
  }
  /// Bloch components read off a Hermitian matrix: px = Re(P01 + P10), py = Im(P10 - P01),
  /// pz = Re(P00 - P11).
  static Projector2 from_matrix(const Mat2& m) {
    Projector2 p;
    p.matrix = m;
    p.bloch = {(m.e[1] + m.e[2]).re, (m.e[2] - m.e[1]).im, (m.e[0] - m.e[3]).re};
    return p;
  }
  /// e^{iZ phi/2} |+><+| e^{-iZ phi/2} = (I + cos(phi) X - sin(phi) Y)/2
  static Projector2 from_angle(const Real& phi) { return from_bloch(cos(phi), -sin(phi), Real(0)); }

  const Real& px() const { return bloch[0]; }
  const Real& py() const { return bloch[1]; }
  const Real& pz() const { return bloch[2]; }
};

struct Decomposition {
  Mat2 e0;
  std::vector<Projector2> projectors;      ///< P_1 ... P_{2n}, leftmost first
  std::optional<std::vector<Real>> angles; ///< phi_0 ... phi_{2n} when Tr(Z P_j) = 0
  Bits output_precision_bits = 0;
  Bits precision_bits = 0;  ///< working precision R of the run that produced it
};

/// E_0 = e^{iZ phi_0/2}
inline Mat2 e0_from_angle(const Real& phi0) {
  Complex w = Complex::polar(ldexp(phi0, -1));
  return {w, Complex(0), Complex(0), conj(w)};
}

struct ExtractOptions {
  Real min_leading_norm;  ///< ||C_{+-m}|| below this aborts the run
  Real delta_seed;        ///< error budget of the input coefficients
  Real delta_limit;       ///< tracked budget may not exceed this
  bool enforce_tracking = true;

  /// eps/(2N) guard and limit, seeded with the Fourier budget 400 N^3 eps^{-1} 2^{-R}.
  static ExtractOptions from_context(const PrecisionContext& ctx) {
    PrecisionScope s(64);
    ExtractOptions o;
    o.min_leading_norm = ctx.epsilon / Real(2 * ctx.degree_bound);
    o.delta_seed = ctx.fft_budget();
    o.delta_limit = o.min_leading_norm;
    return o;
  }
};

/// Per-iteration record, index 0 for the first peeled factor (m = top).
struct ExtractionLog {
  std::vector<Real> norm_top;
  std::vector<Real> norm_bottom;
  std::vector<Real> tracked_delta;  ///< delta_{m-1} after iteration m
  std::vector<Real> beta;
  std::vector<Real> residual;       ///< max(||C_m Q||, ||C_{-m} P||), zero in exact arithmetic
  Real max_growth;                  ///< max delta_{m-1} / delta_m
  bool tracking_valid = true;
};

/// E_0 and P_1..P_top with E_0 prod_j E_{P_j}(t) = sum_k C_k t^k.
inline Decomposition extract_factors(MatrixCoeffSeq seq, const ExtractOptions& opt, ExtractionLog* log = nullptr) {
  Bits bits = seq.coeffs.empty() ? working_precision() : seq.coeffs.front().e[0].re.precision();
  PrecisionScope scope(bits);
  std::vector<Mat2> c = std::move(seq.coeffs);
  const int top = seq.top;
  Decomposition out;
  out.precision_bits = bits;
  out.projectors.resize(static_cast<std::size_t>(top));

  Real min_trace;
  {
    PrecisionScope s(64);
    min_trace = sqr(opt.min_leading_norm);
  }
  Real delta = opt.delta_seed;
  Real growth = 0;
  bool valid = true;
  for (int m = top; m >= 1; --m) {
    const Mat2& hi = c[static_cast<std::size_t>(m)];
    const Mat2& lo = c[0];
    Real t_hi = frobenius_norm_squared(hi);
    Real t_lo = frobenius_norm_squared(lo);
    if (t_hi < min_trace || t_lo < min_trace) {
      throw PrecisionInsufficient("leading coefficient norm fell below eps/(2N) at m = " + std::to_string(m));
    }
    Mat2 p = (Real(1) / t_hi) * (dagger(hi) * hi);
    Mat2 q = (Real(1) / t_lo) * (dagger(lo) * lo);

    Real n_hi = operator_norm(hi);
    Real n_lo = operator_norm(lo);
    if (log) {
      PrecisionScope s(64);
      log->norm_top.push_back(rounded(n_hi, 64));
      log->norm_bottom.push_back(rounded(n_lo, 64));
      log->residual.push_back(rounded(max(operator_norm(hi * q), operator_norm(lo * p)), 64));
    }
    {
      // delta_{m-1} = 2 (2 delta_m + beta_m), beta_m = 36 delta_m / nu
      PrecisionScope s(64);
      Real nu = min(n_hi, n_lo) - delta;
      Real beta = nu.sign() > 0 ? Real(36) * delta / nu : Real(1);
      Real next = Real(2) * (Real(2) * delta + beta);
      if (nu.sign() <= 0 || next > opt.delta_limit) valid = false;
      if (!delta.is_zero()) growth = max(growth, next / delta);
      if (log) {
        log->beta.push_back(beta);
        log->tracked_delta.push_back(next);
      }
      delta = next;
    }

    std::vector<Mat2> next(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      next[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * q + c[static_cast<std::size_t>(i + 1)] * p;
    }
    out.projectors[static_cast<std::size_t>(m - 1)] = Projector2::from_matrix(p);
    c = std::move(next);
  }
  out.e0 = c.front();
  if (log) {
    log->max_growth = growth;
    log->tracking_valid = valid;
  }
  if (!valid && opt.enforce_tracking) {
    throw PrecisionInsufficient("tracked coefficient error exceeded eps/(2N)");
  }
  return out;
}

inline Decomposition extract_factors(MatrixCoeffSeq seq, const PrecisionContext& ctx) {
  return extract_factors(std::move(seq), ExtractOptions::from_context(ctx));
}

/// Every number rounded to ceil(log2(20N/eps)) significant bits; projector matrices are
/// rebuilt from the rounded Bloch vectors.
inline Decomposition quantize_output(const Decomposition& d, int n, const Real& epsilon) {
  Bits b = PrecisionContext::output_bits(n, epsilon);
  PrecisionScope scope(b);
  Decomposition out;
  out.precision_bits = d.precision_bits;
  out.output_precision_bits = b;
  for (std::size_t i = 0; i < 4; ++i) out.e0.e[i] = rounded(d.e0.e[i], b);
  out.projectors.reserve(d.projectors.size());
  for (const auto& p : d.projectors) {
    out.projectors.push_back(Projector2::from_bloch(rounded(p.px(), b), rounded(p.py(), b), rounded(p.pz(), b)));
  }
  if (d.angles) {
    std::vector<Real> a;
    a.reserve(d.angles->size());
    for (const auto& phi : *d.angles) a.push_back(rounded(phi, b));
    out.angles = std::move(a);
  }
  return out;
}

/// phi_j = atan2(-py, px) for every projector and phi_0 = 2 arg(E0_00). Throws
/// NotParityConstrained when some |Tr(Z P_j)| or E0's off-diagonal exceeds `tolerance`,
/// or when the angles fail to reproduce the matrices to `tolerance`.
inline Decomposition to_angles(const Decomposition& d, const Real& tolerance) {
  PrecisionScope scope(std::max<Bits>(d.e0.e[0].re.precision(), 64));
  Decomposition out = d;
  std::vector<Real> angles;
  angles.reserve(d.projectors.size() + 1);
  if (abs(d.e0.e[1]) > tolerance || abs(d.e0.e[2]) > tolerance) {
    throw NotParityConstrained("E0 is not diagonal within tolerance");
  }
  Real phi0 = 2 * arg(d.e0.e[0]);
  Mat2 e0 = e0_from_angle(phi0);
  Mat2 diff0 = e0 - d.e0;
  if (operator_norm(diff0) > tolerance) throw NotParityConstrained("E0 is not of the form e^{iZ phi/2}");
  angles.push_back(std::move(phi0));
  for (std::size_t j = 0; j < d.projectors.size(); ++j) {
    const auto& p = d.projectors[j];
    if (abs(p.pz()) > tolerance) {
      throw NotParityConstrained("projector " + std::to_string(j + 1) + " has |Tr(Z P)| = " + to_string(abs(p.pz()), 4));
    }
    Real phi = atan2(-p.py(), p.px());
    if (operator_norm(Projector2::from_angle(phi).matrix - p.matrix) > tolerance) {
      throw NotParityConstrained("angle form does not reproduce projector " + std::to_string(j + 1));
    }
    angles.push_back(std::move(phi));
  }
  out.angles = std::move(angles);
  return out;
}

/// The matrices implied by the angle list, evaluated 32 bits beyond the angles' own
/// precision so the result depends on the angles alone.
inline Decomposition from_angles(const std::vector<Real>& angles) {
  if (angles.empty()) throw DomainError("angle list needs at least phi_0");
  Bits bits = 0;
  for (const auto& a : angles) bits = std::max(bits, a.precision());
  PrecisionScope scope(bits + 32);
  Decomposition d;
  d.e0 = e0_from_angle(angles.front());
  for (std::size_t j = 1; j < angles.size(); ++j) d.projectors.push_back(Projector2::from_angle(angles[j]));
  d.angles = angles;
  return d;
}

}  // namespace qsp
