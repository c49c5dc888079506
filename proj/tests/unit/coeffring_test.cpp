#include <gtest/gtest.h>

#include <random>

#include "nhtwist/coeffring.hpp"
#include "nhtwist/errors.hpp"
#include "random_values.hpp"

using namespace nhtwist;
using nhtwist::fuzz::random_coeff;

namespace {

const Geometry kHyp = Geometry::hyperbolic;
const Geometry kTrig = Geometry::trigonometric;
const Geometry kFlat = Geometry::flat;

CoeffFunction num(Geometry g, long v) { return CoeffFunction::constant(g, Scalar(v)); }
CoeffFunction C(Geometry g) { return CoeffFunction::cosine(g); }
CoeffFunction S(Geometry g) { return CoeffFunction::sine(g); }
CoeffFunction tau(Geometry g, int e = 1) { return CoeffFunction::tau(g, e); }

} // namespace

TEST(Scalar, GaussianArithmetic) {
  const Scalar i = Scalar::imag_unit();
  EXPECT_EQ(i * i, Scalar(-1));
  EXPECT_EQ(imag_power(3), -i);
  EXPECT_EQ(imag_power(4), Scalar(1));
  EXPECT_EQ(Scalar::fraction(2, 4), Scalar(Rational(1, 2)));
  EXPECT_EQ(to_string(Scalar(0, 1)), "i");
}

TEST(CoeffRing, SineSquaredHyperbolic) { EXPECT_EQ(S(kHyp) * S(kHyp), C(kHyp) * C(kHyp) - num(kHyp, 1)); }

TEST(CoeffRing, SineSquaredTrigonometric) {
  EXPECT_EQ(S(kTrig) * S(kTrig), num(kTrig, 1) - C(kTrig) * C(kTrig));
}

TEST(CoeffRing, AdditiveInverseIsEmpty) {
  const CoeffFunction a = tau(kHyp, 2) * C(kHyp);
  const CoeffFunction z = a + (-a);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.size(), 0u);
  EXPECT_EQ(to_string(CoeffFunction(kHyp)), "0");
}

TEST(CoeffRing, SineExponentNormalized) {
  const CoeffFunction s5 = power(S(kHyp), 5);
  for (const auto& [m, c] : s5.terms()) EXPECT_LE(m.s, 1);
}

TEST(CoeffRing, GeometryMismatchThrows) {
  EXPECT_THROW((void)(C(kHyp) + C(kTrig)), GeometryError);
  EXPECT_THROW((void)C(kFlat), GeometryError);
}

TEST(CoeffRing, TimeDerivatives) {
  EXPECT_EQ(d_dt(C(kHyp)), tau(kHyp, -1) * S(kHyp));
  EXPECT_EQ(d_dt(tau(kTrig, 2) * (C(kTrig) - num(kTrig, 1))), -(tau(kTrig) * S(kTrig)));
  EXPECT_EQ(d_dt(CoeffFunction::time(kFlat, 2)), num(kFlat, 2) * CoeffFunction::time(kFlat));
  EXPECT_EQ(d_dt(S(kTrig)), tau(kTrig, -1) * C(kTrig));
}

TEST(CoeffRing, TauLimits) {
  const CoeffFunction cm1 = C(kHyp) - num(kHyp, 1);
  EXPECT_EQ(limit_tau_infinity(num(kHyp, 4) * tau(kHyp, 4) * cm1 * cm1),
            CoeffFunction::time(kFlat, 4));
  EXPECT_EQ(limit_tau_infinity(tau(kHyp) * S(kHyp)), CoeffFunction::time(kFlat));
  EXPECT_EQ(limit_tau_infinity(tau(kTrig) * S(kTrig)), CoeffFunction::time(kFlat));
  EXPECT_EQ(limit_tau_infinity(C(kTrig)), num(kFlat, 1));
  EXPECT_THROW((void)limit_tau_infinity(tau(kHyp, 2) * C(kHyp)), DivergentLimitError);
  EXPECT_EQ(limit_tau_infinity(tau(kHyp, -2)), CoeffFunction(kFlat));
}

TEST(CoeffRing, BetaGrading) {
  const CoeffFunction b = CoeffFunction::beta(kFlat, "beta5_1_2");
  const CoeffFunction x = num(kFlat, 3) + b * b * CoeffFunction::time(kFlat) + b;
  EXPECT_EQ(x.max_beta_degree(), 2);
  EXPECT_EQ(x.beta_component(1), b);
  EXPECT_EQ(x.truncate_beta(1), num(kFlat, 3) + b);
  EXPECT_EQ(drop_betas(x), num(kFlat, 3));
  EXPECT_FALSE(x.is_beta_free());
}

TEST(CoeffRing, CanonicalText) {
  const CoeffFunction x = num(kHyp, 2) * Scalar::imag_unit() * tau(kHyp, 2) * C(kHyp) -
                          num(kHyp, 2) * Scalar::imag_unit() * tau(kHyp, 2);
  EXPECT_EQ(to_string(x), "-2*i*tau^2 + 2*i*tau^2*C");
}

class RingAxioms : public ::testing::TestWithParam<Geometry> {};

TEST_P(RingAxioms, RandomizedLaws) {
  std::mt19937 rng(1234 + static_cast<int>(GetParam()));
  const Geometry g = GetParam();
  const CoeffFunction one = num(g, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const CoeffFunction a = random_coeff(rng, g);
    const CoeffFunction b = random_coeff(rng, g);
    const CoeffFunction c = random_coeff(rng, g);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * one, a);
    ASSERT_TRUE((a - a).is_zero());
    ASSERT_EQ(d_dt(a * b), d_dt(a) * b + a * d_dt(b));
    ASSERT_EQ(d_dt(a + b), d_dt(a) + d_dt(b));
  }
}

INSTANTIATE_TEST_SUITE_P(AllGeometries, RingAxioms,
                         ::testing::Values(Geometry::hyperbolic, Geometry::trigonometric,
                                           Geometry::flat));
