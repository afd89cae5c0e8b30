#pragma once

/**
 * @file verify.hpp
 * @brief Reconstruction <+|E_0 E_1(t) ... E_2n(t)|+>, the grid check against A + iB, and the
 *        precision-doubling driver that reruns the whole pipeline until the check passes.
 */

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsp/completion.hpp"
#include "qsp/decompose.hpp"
#include "qsp/errors.hpp"
#include "qsp/fourier.hpp"
#include "qsp/ingest.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"

namespace qsp {

/// <+| E_0 E_{P_1}(t) ... E_{P_m}(t) |+>, applying factors to |+> from the right with
/// E_P(t) v = t^{-1} v + (t - t^{-1}) P v.
inline Complex reconstruct(const Decomposition& d, const Complex& t) {
  Complex inv = reciprocal(t);
  Complex diff = t - inv;
  Real h = sqrt(Real(2)) / 2;
  Complex v0(h), v1(h);
  for (auto it = d.projectors.rbegin(); it != d.projectors.rend(); ++it) {
    const Mat2& p = it->matrix;
    Complex w0 = p.e[0] * v0 + p.e[1] * v1;
    Complex w1 = p.e[2] * v0 + p.e[3] * v1;
    v0 = inv * v0 + diff * w0;
    v1 = inv * v1 + diff * w1;
  }
  Complex u0 = d.e0.e[0] * v0 + d.e0.e[1] * v1;
  Complex u1 = d.e0.e[2] * v0 + d.e0.e[3] * v1;
  return (u0 + u1) * Complex(h);
}

struct VerifyReport {
  Real max_error;
  std::size_t grid_size = 0;
  bool passed = false;
  Bits r_used = 0;
};

/// Smallest power of two >= 4N.
inline std::size_t default_grid_size(int n) {
  std::size_t g = 1;
  while (g < 4 * static_cast<std::size_t>(std::max(n, 1))) g *= 2;
  return g;
}

/// max over t = e^{i pi k / G} of |A(t^2) + i B(t^2) - reconstruct(d, t)|, at
/// ceil(log2(20N/eps)) + 32 bits. Passes iff the maximum is at most 30 eps.
inline VerifyReport check(const Decomposition& d, const TargetSpec& spec, std::size_t grid_size) {
  int n = std::max(spec.degree_bound(), 1);
  if (grid_size < 4 * static_cast<std::size_t>(n)) throw DomainError("verification grid needs at least 4N points");
  Real eps = spec.epsilon_value();
  Bits bits = PrecisionContext::output_bits(n, eps) + 32;
  PrecisionScope scope(bits);
  ComplexPoly target = target_poly(spec, bits);
  VerifyReport out;
  out.grid_size = grid_size;
  out.r_used = d.precision_bits;
  out.max_error = 0;
  Real step = Real::pi() / Real(static_cast<long>(grid_size));
  for (std::size_t k = 0; k < grid_size; ++k) {
    Complex t = Complex::polar(step * Real(static_cast<long>(k)));
    Complex err = evaluate(target, t * t) - reconstruct(d, t);
    out.max_error = max(out.max_error, abs(err));
  }
  PrecisionScope coarse(64);
  out.max_error = rounded(out.max_error, 64);
  out.passed = out.max_error <= Real(30) * eps;
  return out;
}

/// What one round of the pipeline measured.
struct RoundRecord {
  Bits bits = 0;
  std::string outcome;  ///< "passed", "failed check" or the error that stopped the round
  double seconds = 0;
  std::optional<Real> max_error;
  Real fft_budget;                        ///< delta_{2n}
  std::optional<Real> out_of_band;        ///< aliasing seen by the coefficient FFT
  std::optional<Real> root_accuracy;      ///< certified root radius
  std::optional<Real> pairing_error;
  std::optional<Real> min_circle_distance;
  std::optional<Real> tracked_delta;      ///< last tracked delta_m
  std::optional<Real> min_leading_norm;   ///< smallest ||C_{+-m}|| seen while peeling
};

struct PipelineResult {
  Decomposition decomposition;  ///< quantized output, angles filled in when they exist
  Decomposition full;           ///< the same before quantization
  VerifyReport report;
  Bits r_used = 0;
  ExtractionLog extraction;
  std::vector<RoundRecord> history;
};

struct AdaptiveOptions {
  Bits initial_bits = 64;
  std::optional<Bits> max_bits;     ///< defaults to the worst-case cap
  std::optional<Bits> fixed_bits;   ///< one round at exactly this precision
  std::optional<std::size_t> grid_size;
  bool emit_angles = true;
};

namespace detail {
inline std::string describe(const RoundRecord& r) {
  std::ostringstream os;
  os << "R=" << r.bits << ": " << r.outcome << " (" << r.seconds << " s)";
  auto field = [&](const char* name, const std::optional<Real>& v) {
    if (v) os << ", " << name << "=" << to_string(*v, 4);
  };
  os << ", delta_2n=" << to_string(r.fft_budget, 4);
  field("max_error", r.max_error);
  field("out_of_band", r.out_of_band);
  field("root_radius", r.root_accuracy);
  field("pairing", r.pairing_error);
  field("circle_distance", r.min_circle_distance);
  field("tracked_delta", r.tracked_delta);
  field("min_leading_norm", r.min_leading_norm);
  return os.str();
}
}  // namespace detail

/// Steps 2-6 at a single precision on an already truncated target. Throws
/// PrecisionInsufficient when some stage cannot certify its result at `bits`; `record`
/// collects whatever was measured before that.
inline PipelineResult run_pipeline(const TargetSpec& spec, const TruncatedPair& pair, Bits bits,
                                   const AdaptiveOptions& opt, RoundRecord& record) {
  PrecisionContext ctx(bits, pair.epsilon, pair.degree_bound);
  record.bits = bits;
  record.fft_budget = ctx.fft_budget();

  auto half = half_degree_reduce(build_real_poly(pair));
  RootList all = find_roots(half.g, ctx);
  all.half_degree = half.applied;
  record.root_accuracy = all.certified_accuracy;
  record.pairing_error = all.pairing_error;
  record.min_circle_distance = all.min_circle_distance;
  RootList inner = select_inner(all);
  ComplementGrid grid = complement_on_grid(pair, inner, grid_size_for(pair.n), ctx, convention_for(pair));
  MatrixCoeffSeq seq = matrix_fft(assemble_F(pair, grid), pair.n, ctx);
  record.out_of_band = seq.out_of_band;

  PipelineResult out;
  ExtractOptions eo = ExtractOptions::from_context(ctx);
  eo.enforce_tracking = false;
  Decomposition full = extract_factors(std::move(seq), eo, &out.extraction);
  if (!out.extraction.tracked_delta.empty()) {
    record.tracked_delta = out.extraction.tracked_delta.back();
    Real least = out.extraction.norm_top.front();
    for (std::size_t i = 0; i < out.extraction.norm_top.size(); ++i) {
      least = min(least, min(out.extraction.norm_top[i], out.extraction.norm_bottom[i]));
    }
    record.min_leading_norm = least;
  }
  if (!out.extraction.tracking_valid) {
    throw PrecisionInsufficient("tracked coefficient error exceeded eps/(2N)");
  }
  full.precision_bits = bits;
  if (opt.emit_angles) {
    PrecisionScope s(64);
    try {
      full = to_angles(full, pow2(-bits / 4));
    } catch (const NotParityConstrained&) {
      // matrix form only
    }
  }
  Decomposition q = quantize_output(full, pair.degree_bound, pair.epsilon);
  if (q.angles) {
    // what gets emitted is the angle list, so that is what gets checked
    Decomposition from = from_angles(*q.angles);
    from.output_precision_bits = q.output_precision_bits;
    from.precision_bits = q.precision_bits;
    q = std::move(from);
  }
  out.full = std::move(full);
  out.decomposition = std::move(q);
  out.r_used = bits;
  out.report = check(out.decomposition, spec, opt.grid_size.value_or(default_grid_size(spec.degree_bound())));
  out.report.r_used = bits;
  record.max_error = out.report.max_error;
  record.outcome = out.report.passed ? "passed" : "failed check";
  return out;
}

/// R = 64, 128, 256, ... (the last round clamped to the cap) until the check passes. Never
/// returns a failing decomposition: exhausting the schedule throws PrecisionCapExceeded.
inline PipelineResult run_adaptive(const TargetSpec& spec, const AdaptiveOptions& opt = {}) {
  // truncation does not depend on R, so every round shares it
  TruncatedPair pair = truncate(spec);
  int n = std::max(spec.degree_bound(), 1);
  Bits cap = opt.max_bits.value_or(PrecisionContext::worst_case_cap(n, spec.epsilon_value()));
  std::vector<Bits> schedule;
  if (opt.fixed_bits) {
    schedule.push_back(*opt.fixed_bits);
  } else {
    for (Bits r = std::max<Bits>(opt.initial_bits, 2); r < cap; r *= 2) schedule.push_back(r);
    schedule.push_back(cap);
  }
  std::vector<RoundRecord> history;
  for (Bits r : schedule) {
    RoundRecord record;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    try {
      PipelineResult res = run_pipeline(spec, pair, r, opt, record);
      record.seconds = elapsed();
      history.push_back(record);
      if (res.report.passed) {
        res.history = std::move(history);
        return res;
      }
    } catch (const PrecisionInsufficient& e) {
      record.bits = r;
      record.outcome = e.what();
      record.seconds = elapsed();
      history.push_back(record);
    }
  }
  std::string diag;
  for (const auto& h : history) diag += detail::describe(h) + "\n";
  throw PrecisionCapExceeded("no passing decomposition up to R = " + std::to_string(schedule.back()) + " bits", diag);
}

}  // namespace qsp
