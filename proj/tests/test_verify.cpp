#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsp/targets.hpp"
#include "qsp/verify.hpp"

using namespace qsp;

namespace {
Decomposition from_generators(const Mat2& e0, const std::vector<Mat2>& ps) {
  Decomposition d;
  d.e0 = e0;
  for (const auto& p : ps) d.projectors.push_back(Projector2::from_matrix(p));
  return d;
}

Complex plus_element(const Mat2& m) {
  return (m.e[0] + m.e[1] + m.e[2] + m.e[3]) * Complex(Real(0.5));
}

TargetSpec identity_target(const std::string& eps) {
  TargetSpec spec;
  spec.epsilon = eps;
  spec.coefficients.push_back({0, "1", "0"});
  return spec;
}
}  // namespace

TEST(Reconstruct, Examples) {
  PrecisionScope s(128);
  Decomposition empty;
  empty.e0 = Mat2::identity();
  Mat2 plus = bloch_projector(Real(1), Real(0), Real(0));
  Decomposition two = from_generators(Mat2::identity(), {plus, plus});
  for (double theta : {0.0, 0.7, 2.0, -3.0}) {
    Complex t = Complex::polar(Real(theta / 2));
    EXPECT_LT(abs(reconstruct(empty, t) - Complex(1)), pow2(-120));
    EXPECT_LT(abs(reconstruct(two, t) - Complex::polar(Real(theta))), pow2(-120));
  }
}

TEST(Reconstruct, MatchesForwardOracle) {
  Bits r = 160;
  PrecisionScope s(r);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    Mat2 e0 = oracle::random_su2(rng);
    std::vector<Mat2> ps;
    for (int j = 0; j < 6; ++j) ps.push_back(oracle::random_projector(rng));
    auto poly = oracle::forward_product(e0, ps);
    auto d = from_generators(e0, ps);
    for (double phi : {0.1, 1.3, 2.9, 4.4}) {
      Complex t = Complex::polar(Real(phi));
      EXPECT_LT(abs(reconstruct(d, t) - plus_element(oracle::evaluate(poly, t))), pow2(-r / 4));
    }
  }
}

TEST(Check, ExactRoundTrip) {
  // the target is read off the decomposition's own <+|C_k|+> coefficients
  PrecisionScope s(192);
  std::mt19937_64 rng(12);
  Mat2 e0 = oracle::random_su2(rng);
  std::vector<Mat2> ps;
  for (int j = 0; j < 6; ++j) ps.push_back(oracle::random_projector(rng));
  auto poly = oracle::forward_product(e0, ps);
  TargetSpec spec;
  spec.epsilon = "1e-12";
  for (const auto& [k, c] : poly) {
    Complex v = plus_element(c);
    spec.coefficients.push_back({k / 2, to_string(v.re, 60), to_string(v.im, 60)});
  }
  auto rep = check(from_generators(e0, ps), spec, default_grid_size(spec.degree_bound()));
  EXPECT_EQ(rep.grid_size, 16u);
  EXPECT_LE(rep.max_error, pow2(-192 / 4));
  EXPECT_TRUE(rep.passed);
  EXPECT_THROW(check(from_generators(e0, ps), spec, 8), DomainError);
}

TEST(Adaptive, IdentityTarget) {
  auto res = run_adaptive(identity_target("0.01"));
  EXPECT_TRUE(res.report.passed);
  EXPECT_LE(res.report.max_error, Real(0.3));
  EXPECT_EQ(res.r_used, 64);
  EXPECT_EQ(res.history.size(), 1u);
  EXPECT_TRUE(res.decomposition.projectors.empty());
  // the (1 - 10 eps) ingest scaling leaves E0 close to, but not exactly, the identity
  PrecisionScope s(64);
  EXPECT_LT(operator_norm(res.full.e0 - Mat2::identity()), sqrt(Real(30) * Real(0.01)));
}

TEST(Adaptive, JacobiAngerTauTen) {
  auto ja = jacobi_anger_spec("10", "1e-4");
  auto spec = jacobi_anger(ja);
  auto res = run_adaptive(spec);
  PrecisionScope s(64);
  EXPECT_TRUE(res.report.passed);
  EXPECT_LE(res.report.max_error, Real(3e-3));
  Bits cap = PrecisionContext::worst_case_cap(ja.n, Real(1e-4));
  EXPECT_LE(res.r_used, cap);
  long rounds = static_cast<long>(std::ceil(std::log2(static_cast<double>(cap) / 64))) + 1;
  EXPECT_LE(static_cast<long>(res.history.size()), rounds);
  EXPECT_EQ(res.history.back().outcome, "passed");

  // parity: every projector is equatorial and the angle list is present
  ASSERT_TRUE(res.decomposition.angles.has_value());
  EXPECT_EQ(res.decomposition.angles->size(), res.full.projectors.size() + 1);
  for (const auto& p : res.full.projectors) EXPECT_LE(abs(p.pz()), pow2(-res.r_used / 4));
  EXPECT_LT(abs(det(res.full.e0) - Complex(1)), pow2(-res.r_used / 2));

  // dropping the last factor breaks the reconstruction
  Decomposition cut = res.decomposition;
  cut.projectors.pop_back();
  EXPECT_FALSE(check(cut, spec, res.report.grid_size).passed);

  // the check is deterministic
  auto again = check(res.decomposition, spec, res.report.grid_size);
  EXPECT_EQ(again.max_error, res.report.max_error);

  // half the precision either fails or still passes; nothing failing is ever returned
  AdaptiveOptions half;
  half.fixed_bits = res.r_used / 2;
  try {
    auto lower = run_adaptive(spec, half);
    EXPECT_TRUE(lower.report.passed);
  } catch (const PrecisionCapExceeded& e) {
    EXPECT_FALSE(e.diagnostics().empty());
  }
}

TEST(Adaptive, CapExceededCarriesDiagnostics) {
  auto spec = jacobi_anger(jacobi_anger_spec("10", "1e-4"));
  AdaptiveOptions opt;
  opt.max_bits = 128;
  try {
    run_adaptive(spec, opt);
    FAIL() << "expected PrecisionCapExceeded";
  } catch (const PrecisionCapExceeded& e) {
    std::string d = e.diagnostics();
    EXPECT_NE(d.find("R=64"), std::string::npos);
    EXPECT_NE(d.find("R=128"), std::string::npos);
    EXPECT_NE(d.find("delta_2n"), std::string::npos);
  }
}

TEST(Adaptive, RejectsInvalidTargets) {
  TargetSpec big = identity_target("0.001");
  big.coefficients[0].re = "1.5";
  EXPECT_THROW(run_adaptive(big), ValidationError);
}

TEST(Adaptive, RandomTargetsPass) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    auto spec = oracle::random_target(rng, 2 + 3 * trial, "0.001", trial % 2 == 0);
    auto res = run_adaptive(spec);
    EXPECT_TRUE(res.report.passed) << trial;
    EXPECT_LE(res.report.max_error, Real(0.03));
  }
}
