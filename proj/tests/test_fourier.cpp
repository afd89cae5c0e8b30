#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsp/fourier.hpp"

using namespace qsp;

namespace {
Real max_entry_error(const Mat2& a, const Mat2& b) {
  Real worst = 0;
  for (std::size_t i = 0; i < 4; ++i) worst = max(worst, abs(a.e[i] - b.e[i]));
  return worst;
}

ComplementGrid flat_grid(std::size_t size, double c, double d) {
  ComplementGrid g;
  g.size = size;
  g.c.assign(size, Real(c));
  g.d.assign(size, Real(d));
  return g;
}
}  // namespace

TEST(Fft, MatchesDirectSum) {
  PrecisionScope s(192);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t d : {1u, 2u, 8u, 32u}) {
    std::vector<Complex> x(d);
    for (auto& v : x) v = Complex(u(rng), u(rng));
    auto y = x;
    fft(y, unit_roots(d));
    for (std::size_t j = 0; j < d; ++j) {
      Complex ref = oracle::direct_dft(x, static_cast<long>(j)) * Complex(Real(static_cast<long>(d)));
      EXPECT_LT(abs(y[j] - ref), pow2(-180)) << d << " " << j;
    }
    fft(y, unit_roots(d), true);
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_LT(abs(y[k] / Real(static_cast<long>(d)) - x[k]), pow2(-180));
    }
  }
  std::vector<Complex> bad(6);
  EXPECT_THROW(fft(bad, unit_roots(8)), DomainError);
}

TEST(AssembleF, Examples) {
  PrecisionScope s(128);
  TruncatedPair one;
  one.a.set(0, ComplexDyadic(1));
  auto t = assemble_F(one, flat_grid(4, 0, 0));
  for (const auto& m : t) EXPECT_LT(max_entry_error(m, Mat2::identity()), pow2(-120));

  TruncatedPair half;
  half.a.set(0, ComplexDyadic(Dyadic(mpz_class(1), -1)));
  Real root = sqrt(Real(0.75));
  ComplementGrid g = flat_grid(4, 0, 0);
  for (auto& c : g.c) c = root;
  auto h = assemble_F(half, g);
  Mat2 expected(Complex(0.5), Complex(root), Complex(-root), Complex(0.5));
  for (const auto& m : h) {
    EXPECT_LT(max_entry_error(m, expected), pow2(-120));
    EXPECT_LT(abs(det(m) - Complex(1)), pow2(-120));
  }
}

TEST(MatrixFft, ConstantAndShift) {
  Bits r = 128;
  PrecisionContext ctx(r, Real(0.001), 2);
  PrecisionScope s(r);
  MatrixTable id(8, Mat2::identity());
  auto c = matrix_fft(id, 2, ctx);
  EXPECT_EQ(c.top, 4);
  ASSERT_EQ(c.coeffs.size(), 5u);
  EXPECT_LT(max_entry_error(c.at(0), Mat2::identity()), pow2(-r + 4));
  for (int k : {-4, -2, 2, 4}) EXPECT_LT(max_entry_error(c.at(k), Mat2::zero()), pow2(-r + 4));

  // z I has its only coefficient at t^2
  auto z = unit_roots(8);
  MatrixTable shifted(8);
  for (std::size_t k = 0; k < 8; ++k) shifted[k] = z[k] * Mat2::identity();
  auto cs = matrix_fft(shifted, 2, ctx);
  EXPECT_LT(max_entry_error(cs.at(2), Mat2::identity()), pow2(-r + 4));
  for (int k : {-4, -2, 0, 4}) EXPECT_LT(max_entry_error(cs.at(k), Mat2::zero()), pow2(-r + 4));
  EXPECT_LT(cs.out_of_band, pow2(-r + 4));
}

TEST(MatrixFft, RejectsAliasedContent) {
  Bits r = 128;
  PrecisionContext ctx(r, Real(0.001), 1);
  PrecisionScope s(r);
  auto z = unit_roots(8);
  MatrixTable t(8);
  // z^3 lies outside [-1, 1]
  for (std::size_t k = 0; k < 8; ++k) t[k] = (z[k] * z[k] * z[k]) * Mat2::identity();
  EXPECT_THROW(matrix_fft(t, 1, ctx), PrecisionInsufficient);
  EXPECT_THROW(matrix_fft(MatrixTable(6), 1, ctx), DomainError);
  EXPECT_THROW(matrix_fft(MatrixTable(4), 2, ctx), DomainError);
}

TEST(MatrixFft, RandomDegreeThreeAgainstDirectSum) {
  Bits r = 160;
  PrecisionContext ctx(r, Real(0.001), 3);
  PrecisionScope s(r + 32);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::size_t d = 8;
  auto z = unit_roots(d);
  // random matrix polynomial in z of degree 3
  std::vector<Mat2> coeffs(7);
  for (auto& m : coeffs)
    for (auto& e : m.e) e = Complex(u(rng), u(rng));
  MatrixTable table(d, Mat2::zero());
  for (std::size_t k = 0; k < d; ++k) {
    for (int j = -3; j <= 3; ++j) {
      Complex w(1);
      Complex base = j >= 0 ? z[k] : conj(z[k]);
      for (int i = 0; i < std::abs(j); ++i) w *= base;
      table[k] += w * coeffs[static_cast<std::size_t>(j + 3)];
    }
  }
  auto seq = matrix_fft(table, 3, ctx);
  for (int j = -3; j <= 3; ++j) {
    for (std::size_t e = 0; e < 4; ++e) {
      std::vector<Complex> x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = table[k].e[e];
      Complex ref = oracle::direct_dft(x, (j + static_cast<long>(d)) % static_cast<long>(d));
      EXPECT_LT(abs(seq.at(2 * j).e[e] - ref), pow2(-r / 2));
      EXPECT_LT(abs(seq.at(2 * j).e[e] - coeffs[static_cast<std::size_t>(j + 3)].e[e]), pow2(-r / 2));
    }
  }
}

TEST(MatrixFft, Linearity) {
  Bits r = 128;
  PrecisionContext ctx(r, Real(0.001), 2);
  PrecisionScope s(r);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  auto z = unit_roots(8);
  auto random_table = [&] {
    MatrixTable t(8, Mat2::zero());
    for (int j = -2; j <= 2; ++j) {
      Mat2 m;
      for (auto& e : m.e) e = Complex(u(rng), u(rng));
      for (std::size_t k = 0; k < 8; ++k) {
        Complex w(1);
        for (int i = 0; i < std::abs(j); ++i) w *= j > 0 ? z[k] : conj(z[k]);
        t[k] += w * m;
      }
    }
    return t;
  };
  auto f = random_table(), g = random_table();
  Real alpha(0.375);
  MatrixTable h(8);
  for (std::size_t k = 0; k < 8; ++k) h[k] = f[k] + alpha * g[k];
  auto cf = matrix_fft(f, 2, ctx), cg = matrix_fft(g, 2, ctx), ch = matrix_fft(h, 2, ctx);
  for (int k = -4; k <= 4; k += 2) EXPECT_LT(max_entry_error(ch.at(k), cf.at(k) + alpha * cg.at(k)), pow2(-r + 8));
}

TEST(MatrixFft, CompletedTargetsAreUnitary) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    int degree = 1 + trial;
    auto spec = oracle::random_target(rng, degree, "0.0001");
    TruncatedPair pair = truncate(spec);
    Bits r = 256;
    PrecisionContext ctx(r, pair.epsilon, pair.degree_bound);
    auto half = half_degree_reduce(build_real_poly(pair));
    auto all = find_roots(half.g, ctx);
    all.half_degree = half.applied;
    auto grid = complement_on_grid(pair, select_inner(all), grid_size_for(pair.n), ctx, convention_for(pair));
    auto table = assemble_F(pair, grid);
    PrecisionScope s(r);
    for (const auto& m : table) EXPECT_LT(abs(det(m) - Complex(1)), pow2(-r / 2)) << trial;
    auto seq = matrix_fft(table, pair.n, ctx);
    // C_{+-2n} carry the rank-one leading terms; the top one must be nonzero
    EXPECT_GT(frobenius_norm_squared(seq.at(seq.top)), pow2(-r / 2));
  }
}
