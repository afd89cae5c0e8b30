#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsp/decompose.hpp"

using namespace qsp;

namespace {
Mat2 plus_projector() { return bloch_projector(Real(1), Real(0), Real(0)); }

// the oracle's map of coefficients turned into the extractor's input
MatrixCoeffSeq to_seq(const oracle::MatrixPoly& m, int top) {
  MatrixCoeffSeq seq;
  seq.top = top;
  seq.coeffs.assign(static_cast<std::size_t>(top + 1), Mat2::zero());
  for (const auto& [k, c] : m) seq.at(k) = c;
  seq.out_of_band = 0;
  seq.delta = 0;
  return seq;
}

ExtractOptions loose(Bits r) {
  ExtractOptions o;
  o.min_leading_norm = pow2(-r / 4);
  o.delta_seed = pow2(-r);
  o.delta_limit = 1;
  o.enforce_tracking = false;
  return o;
}

Real gap(const Mat2& a, const Mat2& b) { return operator_norm(a - b); }
}  // namespace

TEST(Projector2, FromMatrixAndBloch) {
  PrecisionScope s(128);
  auto p = Projector2::from_matrix(Mat2::identity() - (Real(0.5) * (Mat2::identity() - Mat2::pauli_y())));
  // (I + Y)/2
  EXPECT_LT(abs(p.px()), pow2(-120));
  EXPECT_LT(abs(p.py() - Real(1)), pow2(-120));
  EXPECT_LT(abs(p.pz()), pow2(-120));
  auto q = Projector2::from_bloch(Real(0), Real(0), Real(1));
  EXPECT_LT(gap(q.matrix, Mat2(Complex(1), Complex(0), Complex(0), Complex(0))), pow2(-120));
  // P^2 = P, Tr P = 1
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    auto r = Projector2::from_matrix(oracle::random_projector(rng));
    EXPECT_LT(gap(r.matrix * r.matrix, r.matrix), pow2(-64));
    EXPECT_LT(abs(trace(r.matrix) - Complex(1)), pow2(-64));
    EXPECT_LT(abs(sqr(r.px()) + sqr(r.py()) + sqr(r.pz()) - Real(1)), pow2(-64));
  }
}

TEST(Extract, SinglePrimitive) {
  Bits r = 128;
  PrecisionScope s(r);
  Mat2 p = plus_projector();
  auto d = extract_factors(to_seq({{1, p}, {-1, Mat2::identity() - p}}, 1), loose(r));
  ASSERT_EQ(d.projectors.size(), 1u);
  EXPECT_LT(gap(d.projectors[0].matrix, p), pow2(-r + 4));
  EXPECT_LT(gap(d.e0, Mat2::identity()), pow2(-r + 4));
}

TEST(Extract, RepeatedPrimitive) {
  Bits r = 128;
  PrecisionScope s(r);
  Mat2 p = plus_projector();
  for (int n : {1, 2, 5}) {
    int top = 2 * n;
    auto d = extract_factors(to_seq({{top, p}, {-top, Mat2::identity() - p}}, top), loose(r));
    ASSERT_EQ(d.projectors.size(), static_cast<std::size_t>(top));
    for (const auto& q : d.projectors) EXPECT_LT(gap(q.matrix, p), pow2(-r + 8));
    EXPECT_LT(gap(d.e0, Mat2::identity()), pow2(-r + 8));
  }
}

TEST(Extract, RandomProductsMatchGenerators) {
  Bits r = 192;
  PrecisionScope s(r);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Mat2 e0 = oracle::random_su2(rng);
    std::vector<Mat2> ps;
    for (int j = 0; j < 6; ++j) ps.push_back(oracle::random_projector(rng));
    ExtractionLog log;
    auto d = extract_factors(to_seq(oracle::forward_product(e0, ps), 6), loose(r), &log);
    ASSERT_EQ(d.projectors.size(), 6u);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_LT(gap(d.projectors[j].matrix, ps[j]), pow2(-r / 4)) << trial << " " << j;
    EXPECT_LT(gap(d.e0, e0), pow2(-r / 4));
    EXPECT_LT(abs(det(d.e0) - Complex(1)), pow2(-r / 2));
    // out-of-range products vanish and the log has one row per factor
    ASSERT_EQ(log.residual.size(), 6u);
    for (const auto& res : log.residual) EXPECT_LT(res, pow2(-r / 2));
    // leading norms of a product of unitary-on-the-circle factors never shrink
    for (std::size_t i = 1; i < log.norm_top.size(); ++i) {
      EXPECT_GE(log.norm_top[i], log.norm_top[0] * (Real(1) - pow2(-r / 2)));
      EXPECT_GE(log.norm_bottom[i], log.norm_bottom[0] * (Real(1) - pow2(-r / 2)));
    }
  }
}

TEST(Extract, GuardsAndTracking) {
  Bits r = 128;
  PrecisionScope s(r);
  Mat2 p = plus_projector();
  auto seq = to_seq({{2, p}, {-2, Mat2::identity() - p}}, 2);
  seq.at(2) = pow2(-60) * p;
  EXPECT_THROW(extract_factors(seq, loose(r)), PrecisionInsufficient);

  // a seed larger than the limit invalidates the run only when enforced
  auto opt = loose(r);
  opt.delta_seed = Real(1e-3);
  opt.delta_limit = Real(1e-3);
  auto ok = to_seq({{2, p}, {-2, Mat2::identity() - p}}, 2);
  ExtractionLog log;
  EXPECT_NO_THROW(extract_factors(ok, opt, &log));
  EXPECT_FALSE(log.tracking_valid);
  ASSERT_EQ(log.tracked_delta.size(), 2u);
  // delta' = 2 (2 delta + 36 delta / (1 - delta))
  Real d0(1e-3);
  Real expect = Real(2) * (Real(2) * d0 + Real(36) * d0 / (Real(1) - d0));
  EXPECT_LT(abs(log.tracked_delta[0] - expect), Real(1e-12));
  opt.enforce_tracking = true;
  EXPECT_THROW(extract_factors(ok, opt), PrecisionInsufficient);
}

TEST(Quantize, Examples) {
  PrecisionScope s(256);
  Decomposition d;
  d.e0 = Mat2::identity();
  d.projectors.push_back(Projector2::from_bloch(Real(1), Real(0), Real(0)));
  Real thirds = Real(1) / Real(3);
  Real rest = sqrt(Real(1) - Real(2) * sqr(thirds));
  d.projectors.push_back(Projector2::from_bloch(thirds, thirds, rest));
  Real eps(1e-4);
  auto q = quantize_output(d, 1, eps);
  Bits b = PrecisionContext::output_bits(1, eps);
  EXPECT_EQ(q.output_precision_bits, b);
  EXPECT_EQ(b, 18);  // ceil(log2(20 / 1e-4)) = ceil(17.61)
  EXPECT_EQ(gap(q.e0, Mat2::identity()), Real(0));
  EXPECT_EQ(q.projectors[0].px(), Real(1));
  EXPECT_EQ(gap(q.projectors[0].matrix, d.projectors[0].matrix), Real(0));
  EXPECT_GT(abs(q.projectors[1].px() - thirds), Real(0));
  EXPECT_LE(abs(q.projectors[1].px() - thirds), pow2(-b));
  EXPECT_LE(q.projectors[1].px().precision(), b);
}

TEST(Angles, Examples) {
  PrecisionScope s(128);
  Real tol = pow2(-32);
  Decomposition d;
  d.e0 = Mat2::identity();
  d.projectors.push_back(Projector2::from_bloch(Real(1), Real(0), Real(0)));
  d.projectors.push_back(Projector2::from_bloch(Real(0), Real(-1), Real(0)));
  d.projectors.push_back(Projector2::from_bloch(Real(0), Real(1), Real(0)));
  auto a = to_angles(d, tol);
  ASSERT_TRUE(a.angles.has_value());
  const auto& phi = *a.angles;
  ASSERT_EQ(phi.size(), 4u);
  EXPECT_LT(abs(phi[0]), pow2(-120));
  EXPECT_LT(abs(phi[1]), pow2(-120));
  // e^{iZ pi/4} |+><+| e^{-iZ pi/4} = (I - Y)/2 with Y = [[0, -i], [i, 0]]
  EXPECT_LT(abs(phi[2] - Real::pi() / 2), pow2(-120));
  EXPECT_LT(abs(phi[3] + Real::pi() / 2), pow2(-120));
  Mat2 u = e0_from_angle(Real::pi() / 2);
  Mat2 conjugated = u * plus_projector() * dagger(u);
  EXPECT_LT(gap(conjugated, d.projectors[1].matrix), pow2(-120));

  // matrices round-trip through the angle form
  auto back = from_angles(phi);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(gap(back.projectors[j].matrix, d.projectors[j].matrix), pow2(-120));

  d.projectors.push_back(Projector2::from_bloch(Real(0.6), Real(0), Real(0.8)));
  EXPECT_THROW(to_angles(d, tol), NotParityConstrained);
  Decomposition off;
  off.e0 = Mat2::pauli_x();
  EXPECT_THROW(to_angles(off, tol), NotParityConstrained);
}

TEST(Angles, DiagonalPhaseOfE0) {
  PrecisionScope s(128);
  Decomposition d;
  d.e0 = e0_from_angle(Real(2.5));
  auto a = to_angles(d, pow2(-64));
  EXPECT_LT(abs((*a.angles)[0] - Real(2.5)), pow2(-120));
  d.e0 = e0_from_angle(Real(-5));
  a = to_angles(d, pow2(-64));
  EXPECT_LT(gap(e0_from_angle((*a.angles)[0]), d.e0), pow2(-120));
}

TEST(Angles, EquatorialProductsKeepParity) {
  // products of equatorial projectors with diagonal E0 decompose into equatorial factors
  Bits r = 192;
  PrecisionScope s(r);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Mat2 e0 = e0_from_angle(Real(0.3 * trial));
    std::vector<Mat2> ps;
    for (int j = 0; j < 8; ++j) ps.push_back(oracle::random_projector(rng, true));
    auto d = extract_factors(to_seq(oracle::forward_product(e0, ps), 8), loose(r));
    auto a = to_angles(d, pow2(-r / 4));
    auto back = from_angles(*a.angles);
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LT(gap(back.projectors[j].matrix, ps[j]), pow2(-r / 4));
    EXPECT_LT(gap(back.e0, e0), pow2(-r / 4));
  }
}
