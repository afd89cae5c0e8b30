#pragma once

/**
 * @file completion.hpp
 * @brief Complementary polynomials: given exact a(z), b(z), values of c(z), d(z) on the
 *        FFT grid with a^2 + b^2 + c^2 + d^2 = 1 on the unit circle.
 *
 * p = 1 - a^2 - b^2 is real, reciprocal and positive on the circle, so its roots pair up as
 * (r, 1/r). With e(z) built from the roots inside the disk, p = alpha e(z) e(1/z) and
 * c, d are the reciprocal and anti-reciprocal parts of sqrt(alpha) e(z). Nothing is expanded
 * into coefficients: e is evaluated in product form at each grid point.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "qsp/dyadic.hpp"
#include "qsp/errors.hpp"
#include "qsp/ingest.hpp"
#include "qsp/poly.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"
#include "qsp/roots.hpp"
#include "qsp/twiddle.hpp"

namespace qsp {

/// 1 - a^2 - b^2 with exact dyadic coefficients.
inline DyadicPoly one_minus_squares(const DyadicPoly& a, const DyadicPoly& b) {
  return DyadicPoly::constant(ComplexDyadic(1)) - a * a - b * b;
}

inline DyadicPoly build_real_poly(const TruncatedPair& pair) { return one_minus_squares(pair.a, pair.b); }

struct HalfDegree {
  DyadicPoly g;
  bool applied = false;
};

/// g with g(z^2) = p(z) when p has no odd exponents; p itself otherwise.
inline HalfDegree half_degree_reduce(const DyadicPoly& p) {
  for (const auto& term : p.terms()) {
    if (term.first % 2 != 0) return {p, false};
  }
  HalfDegree out;
  out.applied = true;
  for (const auto& [k, c] : p.terms()) out.g.set(k / 2, c);
  return out;
}

struct RootList {
  std::vector<Complex> roots;
  int n_prime = 0;            ///< Laurent degree of the root-found polynomial
  bool half_degree = false;   ///< roots live in w = z^2
  Real certified_accuracy;    ///< every root is within this of a true root
  Real min_circle_distance;   ///< min over roots of ||r| - 1|
  Real separation_bound;      ///< eps / (4 d^2), d the degree of the root-found polynomial
  Real pairing_error;         ///< worst |s - 1/r| / max(1, |s|) over matched pairs
  Bits bits = 0;
};

/// All 2n' roots of w^{n'} p(w), certified to 2^{-R} and checked to pair as (r, 1/r).
inline RootList find_roots(const DyadicPoly& p, const PrecisionContext& ctx) {
  auto parity = check_parity(p);
  if (parity.reciprocity != Reciprocity::reciprocal || !is_real_on_circle(p)) {
    throw DomainError("root finding needs a real reciprocal polynomial");
  }
  RootList out;
  out.n_prime = p.degree();
  out.bits = ctx.bits;
  PrecisionScope scope(64);
  out.certified_accuracy = 0;
  out.min_circle_distance = 1;
  out.pairing_error = 0;
  {
    long d = 2L * out.n_prime;
    out.separation_bound = d == 0 ? Real(1) : ctx.epsilon / Real(4 * d * d);
  }
  if (out.n_prime == 0) return out;

  std::vector<Dyadic> q(static_cast<std::size_t>(2 * out.n_prime + 1));
  for (const auto& [k, c] : p.terms()) q[static_cast<std::size_t>(k + out.n_prime)] = c.re;
  CertifiedRoots found = aberth_roots(q, ctx.bits);
  Real limit = ctx.unit();
  if (found.max_radius > limit) {
    throw PrecisionInsufficient("root certification reached " + to_string(found.max_radius, 4) +
                                ", needed " + to_string(limit, 4));
  }
  out.certified_accuracy = found.max_radius;

  PrecisionScope work(found.bits);
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
  Real one = 1;
  Real closest = 1;
  for (std::size_t i = 0; i < found.roots.size(); ++i) {
    Real dist = abs(abs(found.roots[i]) - one);
    if (dist <= found.radii[i]) {
      throw PrecisionInsufficient("a root cannot be placed inside or outside the unit circle");
    }
    closest = min(closest, dist);
    (abs(found.roots[i]) < one ? inner : outer).push_back(i);
  }
  if (inner.size() != outer.size()) {
    throw PrecisionInsufficient("roots do not split evenly across the unit circle (" +
                                std::to_string(inner.size()) + " inside, " + std::to_string(outer.size()) +
                                " outside)");
  }
  // reciprocal pairing, greedy nearest match
  Real worst = 0;
  std::vector<bool> used(outer.size(), false);
  for (std::size_t i : inner) {
    Complex inv = reciprocal(found.roots[i]);
    std::size_t best = outer.size();
    Real best_dist;
    for (std::size_t j = 0; j < outer.size(); ++j) {
      if (used[j]) continue;
      Real dist = abs(found.roots[outer[j]] - inv);
      if (best == outer.size() || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    used[best] = true;
    worst = max(worst, best_dist / max(one, abs(found.roots[outer[best]])));
  }
  Real pair_limit = pow2(-ctx.bits + 40);
  if (worst > pair_limit) {
    throw PrecisionInsufficient("reciprocal root pairing failed (" + to_string(worst, 4) + ")");
  }
  out.pairing_error = worst;
  out.min_circle_distance = closest;
  out.roots = std::move(found.roots);
  return out;
}

/// The n' roots inside the unit disk.
inline RootList select_inner(const RootList& all) {
  RootList out = all;
  out.roots.clear();
  PrecisionScope scope(all.roots.empty() ? Bits(64) : all.roots.front().re.precision());
  Real one = 1;
  for (const auto& r : all.roots) {
    if (abs(r) < one) out.roots.push_back(r);
  }
  if (static_cast<int>(out.roots.size()) != all.n_prime) {
    throw PrecisionInsufficient("expected " + std::to_string(all.n_prime) + " roots inside the unit disk, found " +
                                std::to_string(out.roots.size()));
  }
  // closed under conjugation
  Real tol = 2 * all.certified_accuracy + pow2(-all.bits);
  for (const auto& r : out.roots) {
    Complex c = conj(r);
    bool matched = false;
    for (const auto& s : out.roots) {
      if (abs(s - c) <= tol) {
        matched = true;
        break;
      }
    }
    if (!matched) throw PrecisionInsufficient("inner roots are not closed under conjugation");
  }
  return out;
}

/// Which of c, d is taken as the reciprocal part of sqrt(alpha) e(z).
enum class ComplementConvention {
  c_reciprocal,  ///< c = (e(z) + e(1/z))/2 scaled, d anti-reciprocal
  d_reciprocal,  ///< roles swapped; gives Tr(Z P) = 0 when a is reciprocal and b anti-reciprocal
};

/// d_reciprocal exactly when a is reciprocal and b anti-reciprocal (or zero).
inline ComplementConvention convention_for(const TruncatedPair& pair) {
  bool angles_possible = pair.parity_re == Parity::even && (pair.parity_im == Parity::odd || pair.b.is_zero());
  return angles_possible ? ComplementConvention::d_reciprocal : ComplementConvention::c_reciprocal;
}

struct ComplementGrid {
  std::size_t size = 0;  ///< D
  std::vector<Real> c;   ///< c(z_k), z_k = e^{2 pi i k / D}
  std::vector<Real> d;
  Real alpha;
  ComplementConvention convention = ComplementConvention::c_reciprocal;
  Real max_imaginary;  ///< largest discarded imaginary part of c or d (should be rounding)
};

/// Smallest power of two strictly greater than 2n + 1.
inline std::size_t grid_size_for(int n) {
  std::size_t d = 1;
  while (d <= static_cast<std::size_t>(2 * n + 1)) d *= 2;
  return d;
}

inline ComplementGrid complement_on_grid(const TruncatedPair& pair, const RootList& inner, std::size_t grid,
                                         const PrecisionContext& ctx, ComplementConvention convention) {
  if (!detail::is_power_of_two(grid) || grid <= static_cast<std::size_t>(2 * pair.n + 1)) {
    throw DomainError("grid size must be a power of two above 2n+1");
  }
  {
    PrecisionScope s(64);
    Real n = ctx.degree_bound;
    if (Real(24) * n * n * ctx.unit() / ctx.epsilon > Real(1) / (Real(16) * n)) {
      throw PrecisionInsufficient("precision too low for the product-form evaluation of e(z)");
    }
  }
  PrecisionScope scope(ctx.bits);
  const long dd = static_cast<long>(grid);
  std::vector<Complex> z = unit_roots(grid);

  // e(z_k) in factored form
  std::vector<Complex> e(grid);
  long shift = inner.n_prime / 2;
  for (long k = 0; k < dd; ++k) {
    const Complex& zk = z[static_cast<std::size_t>(k)];
    Complex acc(1);
    if (inner.half_degree) {
      const Complex& zinv = z[static_cast<std::size_t>((dd - k) % dd)];
      for (const auto& r : inner.roots) acc *= zk - r * zinv;
    } else {
      for (const auto& r : inner.roots) acc *= zk - r;
      long idx = ((-shift * k) % dd + dd) % dd;
      acc *= z[static_cast<std::size_t>(idx)];
    }
    e[static_cast<std::size_t>(k)] = std::move(acc);
  }

  // alpha = p(1) / e(1)^2, p(1) exact
  ComplexDyadic a1;
  ComplexDyadic b1;
  for (const auto& [k, c] : pair.a.terms()) a1 += c;
  for (const auto& [k, c] : pair.b.terms()) b1 += c;
  Dyadic p1 = Dyadic(1L) - a1.re * a1.re - b1.re * b1.re;
  Real e1 = e[0].re;
  ComplementGrid out;
  out.size = grid;
  out.convention = convention;
  out.alpha = p1.to_real() / sqr(e1);
  if (out.alpha.sign() <= 0 || e1.is_zero()) {
    throw PrecisionInsufficient("normalizer alpha is not positive");
  }
  Real root_alpha = sqrt(out.alpha);
  out.c.resize(grid);
  out.d.resize(grid);
  out.max_imaginary = 0;
  for (long k = 0; k < dd; ++k) {
    const Complex& ez = e[static_cast<std::size_t>(k)];
    const Complex& einv = e[static_cast<std::size_t>((dd - k) % dd)];
    Complex plus = halved(ez + einv) * root_alpha;
    Complex minus = -mul_i(halved(ez - einv)) * root_alpha;  // (.)/(2i)
    out.max_imaginary = max(out.max_imaginary, max(abs(plus.im), abs(minus.im)));
    bool swap = convention == ComplementConvention::d_reciprocal;
    out.c[static_cast<std::size_t>(k)] = swap ? minus.re : plus.re;
    out.d[static_cast<std::size_t>(k)] = swap ? plus.re : minus.re;
  }
  return out;
}

}  // namespace qsp
