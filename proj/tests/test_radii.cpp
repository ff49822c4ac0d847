#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "berlab/harness.hpp"
#include "berlab/radii.hpp"
#include "oracles.hpp"

using namespace berlab;

TEST(NumericalRadius, Examples) {
  EXPECT_NEAR(numerical_radius(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}).value, 1.0, 1e-9);
  EXPECT_NEAR(numerical_radius(ComplexMatrix::identity(3)).value, 1.0, 1e-12);
  EXPECT_NEAR(numerical_radius(ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}}).value, 2.5 + std::sqrt(8.5), 1e-9);
  const RadiusEstimate z = numerical_radius(ComplexMatrix(2, 2));
  EXPECT_EQ(z.value, 0.0);
}

TEST(NumericalRadius, ThetaInRangeAndAttained) {
  oracle::Gauss g(31);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = g.matrix(4, 4);
    const RadiusEstimate w = numerical_radius(a);
    EXPECT_GE(w.theta, 0.0);
    EXPECT_LT(w.theta, 2 * std::numbers::pi);
    EXPECT_NEAR(real_part_max(a, w.theta), w.value, 1e-12);
  }
}

TEST(NumericalRadius, MatchesSweepOracleOn2x2) {
  oracle::Gauss g(32);
  for (int k = 0; k < 30; ++k) {
    const ComplexMatrix a = g.matrix(2, 2);
    const double sweep = oracle::w2_sweep(a);
    const double w = numerical_radius(a).value;
    EXPECT_GE(w, sweep - 1e-12);
    EXPECT_NEAR(w, sweep, 1e-7);
  }
}

TEST(NumericalRadius, NormalMatricesGiveMaxModulus) {
  oracle::Gauss g(33);
  for (std::uint64_t k = 0; k < 50; ++k) {
    InstanceSpec spec{.seed = k, .dim = 5, .kind = OperatorKind::Unitary};
    const ComplexMatrix u = gen_operator(spec);
    CVector d(5);
    double best = 0.0;
    for (cplx& e : d) {
      e = g.c();
      best = std::max(best, std::abs(e));
    }
    const ComplexMatrix a = u * ComplexMatrix::diagonal(std::span<const cplx>(d)) * adjoint(u);
    EXPECT_NEAR(numerical_radius(a).value, best, 1e-6);
  }
}

TEST(NumericalRadius, RefinementNeverLosesTheSweepMaximum) {
  oracle::Gauss g(34);
  for (int k = 0; k < 30; ++k) {
    const ComplexMatrix a = g.matrix(3, 3);
    const RadiusEstimate coarse = numerical_radius(a, {.sweep = 360, .refine = 0});
    EXPECT_GE(numerical_radius(a).value, coarse.value);
  }
}

TEST(HalfNormCheck, HoldsOnRandomMatrices) {
  oracle::Gauss g(35);
  for (int k = 0; k < 100; ++k) {
    const CheckReport rep = half_norm_check(g.matrix(1 + k % 6, 1 + k % 6));
    EXPECT_TRUE(rep.all_pass()) << rep.label << " slack " << rep.slack;
  }
  // [[0, 2], [0, 0]]: ||A|| / 2 = w = 1, equality
  const CheckReport eq = half_norm_check(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}});
  EXPECT_NEAR(eq.slack, 0.0, 1e-9);
}
