#include <gtest/gtest.h>

#include "qsp/ingest.hpp"

using namespace qsp;

namespace {
TargetSpec spec_of(std::string eps, Parity re, Parity im, std::vector<TargetCoefficient> coeffs) {
  TargetSpec s;
  s.epsilon = std::move(eps);
  s.parity_re = re;
  s.parity_im = im;
  s.coefficients = std::move(coeffs);
  return s;
}

// cos(phi)/2 + i sin(3 phi)/3 written as Fourier coefficients
TargetSpec mixed_target() {
  return spec_of("0.001", Parity::even, Parity::odd,
                 {{1, "0.25", "0"}, {-1, "0.25", "0"}, {3, "0.1666666666666666666666", "0"},
                  {-3, "-0.1666666666666666666666", "0"}});
}
}  // namespace

TEST(Truncate, IdentityTargetOracle) {
  auto pair = truncate(spec_of("0.01", Parity::even, Parity::odd, {{0, "1", "0"}}));
  // oracle: floor(0.9 * 2^7) / 2^7 with 7 = ceil(log2(1/0.01))
  EXPECT_EQ(pair.fraction_bits, 7);
  ASSERT_EQ(pair.a.size(), 1u);
  Dyadic a0 = pair.a.coeff(0).re;
  EXPECT_EQ(a0, Dyadic(mpz_class(115), -7));
  PrecisionScope s(64);
  EXPECT_GE(a0.to_real(), Real(0.89));
  EXPECT_LE(a0.to_real(), Real(0.9));
  EXPECT_TRUE(pair.b.is_zero());
  EXPECT_EQ(pair.n, 0);
}

TEST(Truncate, SmallCoefficientsBecomeZero) {
  // eps/N = 0.001/2; (1 - 10 eps) * 0.0004 is below it
  auto pair = truncate(spec_of("0.001", Parity::even, Parity::odd,
                               {{0, "0.5", "0"}, {2, "0.0004", "0"}, {-2, "0.0004", "0"}}));
  EXPECT_TRUE(pair.a.has(0));
  EXPECT_FALSE(pair.a.has(2));
  EXPECT_FALSE(pair.a.has(-2));
  EXPECT_EQ(pair.n, 0);
}

TEST(Truncate, EvenPartIsExactlyReciprocal) {
  auto pair = truncate(mixed_target());
  auto ra = check_parity(pair.a);
  EXPECT_EQ(ra.reciprocity, Reciprocity::reciprocal);
  EXPECT_EQ(ra.exponents, ExponentParity::odd);
  EXPECT_TRUE(is_real_on_circle(pair.a));
  EXPECT_TRUE(is_real_on_circle(pair.b));
  // the odd part arrives as imaginary anti-reciprocal coefficients
  EXPECT_EQ(check_parity(pair.b).reciprocity, Reciprocity::anti_reciprocal);
  EXPECT_TRUE(pair.b.coeff(3).re.is_zero());
  EXPECT_EQ(pair.n, 3);
}

TEST(Truncate, StepOneConditions) {
  TargetSpec spec = mixed_target();
  auto pair = truncate(spec);
  PrecisionScope s(128);
  Real eps = spec.epsilon_value();
  Real floor = eps / Real(pair.degree_bound);
  for (const auto* part : {&pair.a, &pair.b}) {
    for (const auto& [k, c] : part->terms()) {
      EXPECT_GE(abs(c.to_complex()), floor);                         // (iv)
      EXPECT_LE(c.re.denominator_bits(), pair.fraction_bits);        // dyadic bound
      EXPECT_LE(c.im.denominator_bits(), pair.fraction_bits);
    }
  }
  ComplexPoly target = target_poly(spec, 128);
  ComplexPoly a = to_complex_poly(pair.a);
  ComplexPoly b = to_complex_poly(pair.b);
  std::size_t grid = 16 * static_cast<std::size_t>(pair.degree_bound);
  for (std::size_t j = 0; j < grid; ++j) {
    Complex z = Complex::polar(2 * Real::pi() * Real(static_cast<long>(j)) / Real(static_cast<long>(grid)));
    Real av = evaluate(a, z).re;
    Real bv = evaluate(b, z).re;
    EXPECT_LE(sqr(av) + sqr(bv), Real(1) - eps);                                  // (iii)
    EXPECT_LE(abs(Complex(av, bv) - evaluate(target, z)), Real(26) * eps);        // (ii)
  }
}

TEST(Validate, RejectsBadInputs) {
  EXPECT_THROW(validate(spec_of("0.5", Parity::even, Parity::odd, {{0, "0.5", "0"}})), ValidationError);
  EXPECT_THROW(validate(spec_of("0", Parity::even, Parity::odd, {{0, "0.5", "0"}})), ValidationError);
  EXPECT_THROW(validate(spec_of("0.001", Parity::even, Parity::odd, {{0, "0.5", "0"}, {0, "0.1", "0"}})),
               ValidationError);
  // A = 1/2 is even, declared odd
  EXPECT_THROW(validate(spec_of("0.001", Parity::odd, Parity::odd, {{0, "0.5", "0"}})), ValidationError);
  // zeta_1 = 1/2, zeta_-1 = 1/10 splits into 0.6 cos + 0.4 i sin, which is fine
  EXPECT_NO_THROW(validate(spec_of("0.001", Parity::even, Parity::odd, {{1, "0.5", "0"}, {-1, "0.1", "0"}})));
  // |A| = 1.5 somewhere
  EXPECT_THROW(validate(spec_of("0.001", Parity::even, Parity::odd, {{1, "0.75", "0"}, {-1, "0.75", "0"}})),
               ValidationError);
  EXPECT_THROW(validate(spec_of("0.001", Parity::even, Parity::odd, {{0, "x", "0"}})), ValidationError);
  EXPECT_NO_THROW(validate(mixed_target()));
}

TEST(Truncate, AllZeroIsDegenerate) {
  EXPECT_THROW(truncate(spec_of("0.001", Parity::even, Parity::odd, {{0, "0.0001", "0"}})), DegenerateInput);
}

TEST(RealImagParts, SplitsJacobiAngerStyleInput) {
  PrecisionScope s(128);
  // zeta_1 = 0.3, zeta_-1 = -0.3: A = 0, B = 0.6 sin(phi)
  ComplexPoly target{{1, Complex(0.3, 0)}, {-1, Complex(-0.3, 0)}};
  auto [a, b] = real_imag_parts(target);
  EXPECT_TRUE(a.is_zero() || abs(a.coeff(1)) < pow2(-120));
  EXPECT_LT(abs(b.coeff(1) - Complex(Real(0), Real(-0.3))), pow2(-120));
  EXPECT_LT(abs(b.coeff(-1) - Complex(Real(0), Real(0.3))), pow2(-120));
}
