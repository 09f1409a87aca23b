#include <gtest/gtest.h>

#include <cmath>

#include "jacobi_riesz/quadrature.hpp"
#include "jacobi_riesz/special_functions.hpp"

using namespace jacobi_riesz;

TEST(GammaLn, KnownValues) {
  EXPECT_NEAR(gamma_ln(1.0), 0.0, 1e-15);
  EXPECT_NEAR(gamma_ln(0.5), 0.5723649429247001, 1e-13);
  EXPECT_NEAR(gamma_ln(10.0), std::log(362880.0), 1e-12);
  EXPECT_THROW(gamma_ln(0.0), DomainError);
  EXPECT_THROW(gamma_ln(-1.0), DomainError);
}

TEST(JacobiPoly, SmallDegrees) {
  EXPECT_DOUBLE_EQ(jacobi_poly(0, {2.0, -0.3}, 0.3), 1.0);
  EXPECT_NEAR(jacobi_poly(1, {0.0, 0.0}, 0.7), 0.7, 1e-15);
  EXPECT_NEAR(jacobi_poly(2, {1.0, 0.0}, 1.0), 3.0, 1e-14);
  EXPECT_THROW(jacobi_poly(2, {0.0, 0.0}, 1.5), DomainError);
}

// Rodrigues-form oracle for n = 2: explicit coefficients
TEST(JacobiPoly, DegreeTwoExplicit) {
  for (double a : {-0.4, 0.0, 1.3})
    for (double b : {-0.2, 0.5, 2.0})
      for (double x : {-0.9, -0.1, 0.4, 1.0}) {
        const double c = a + b;
        const double want = 0.125 * ((c + 3) * (c + 4) * (x - 1) * (x - 1)) + 0.5 * (a + 2) * (c + 3) * (x - 1) +
                            0.5 * (a + 1) * (a + 2);
        EXPECT_NEAR(jacobi_poly(2, {a, b}, x), want, 1e-12);
      }
}

TEST(JacobiPoly, ValueAtOne) {
  for (int n = 0; n < 12; ++n) {
    const JacobiParams p(0.7, 1.1);
    EXPECT_NEAR(jacobi_poly(n, p, 1.0), jacobi_at_one(n, p), 1e-10 * jacobi_at_one(n, p));
  }
}

TEST(Normalizer, KnownValues) {
  EXPECT_NEAR(normalizer(0, {0.0, 0.0}), 1.0, 1e-14);
  EXPECT_NEAR(normalizer(3, {0.0, 0.0}), std::sqrt(7.0), 1e-13);
  EXPECT_NEAR(normalizer(0, {0.5, 0.5}), std::sqrt(8.0 / pi), 1e-13);
  // large n and parameters stay finite
  EXPECT_TRUE(std::isfinite(normalizer(400, {30.0, 25.0})));
}

TEST(TrigPoly, Values) {
  EXPECT_NEAR(trig_poly(0, {0.0, 0.0}, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(trig_poly(1, {0.0, 0.0}, pi / 2), 0.0, 1e-14);
  EXPECT_NEAR(trig_poly(1, {0.0, 0.0}, 0.4), std::sqrt(3.0) * std::cos(0.4), 1e-14);
  EXPECT_THROW(trig_poly(1, {0.0, 0.0}, 0.0), DomainError);
  EXPECT_THROW(trig_poly(1, {0.0, 0.0}, pi), DomainError);
}

TEST(TrigPoly, DerivativeMatchesFiniteDifference) {
  const double h = 1e-6;
  for (const JacobiParams& p : {JacobiParams(0.0, 0.0), JacobiParams(1.5, -0.3), JacobiParams(-0.4, 2.5)})
    for (int n = 0; n <= 8; ++n)
      for (double th : {0.3, pi / 2, 2.7}) {
        const double fd = (trig_poly(n, p, th + h) - trig_poly(n, p, th - h)) / (2 * h);
        EXPECT_NEAR(trig_poly_derivative(n, p, th), fd, 1e-8 * std::max(1.0, std::abs(fd)));
      }
  EXPECT_EQ(trig_poly_derivative(0, {1.0, 1.0}, 1.0), 0.0);
}

TEST(TrigPoly, Orthonormal) {
  for (const JacobiParams& p : {JacobiParams(-0.4, 0.5), JacobiParams(2.5, 1.0)}) {
    const auto rule = theta_rule(p, 40);
    for (int n = 0; n <= 15; ++n)
      for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (int i = 0; i < rule.order; ++i)
          s += rule.weights[i] * trig_poly(n, p, rule.nodes[i]) * trig_poly(m, p, rule.nodes[i]);
        EXPECT_NEAR(s, n == m ? 1.0 : 0.0, 1e-12);
      }
  }
}

TEST(Eigen, Values) {
  EXPECT_NEAR(eigenvalue(0, {0.0, 0.0}), 0.25, 1e-15);
  EXPECT_NEAR(eigenvalue(3, {1.0, 2.0}), 25.0, 1e-13);
  EXPECT_NEAR(eigenvalue(0, {-0.3, -0.7}), 0.0, 1e-15);
}

TEST(Eigen, OperatorResidual) {
  const JacobiParams p(0.5, 1.0);
  for (int n = 0; n <= 20; ++n)
    for (double th : {0.2, 1.0, 2.9})
      EXPECT_NEAR(jacobi_operator_apply(n, p, th), eigenvalue(n, p) * trig_poly(n, p, th),
                  1e-9 * eigenvalue(n, p) * std::max(1.0, std::abs(trig_poly(n, p, th))));
}

TEST(Measure, Density) {
  EXPECT_NEAR(measure_density({-0.5, -0.5}, 1.2), 1.0, 1e-15);
  EXPECT_NEAR(measure_density({0.0, 0.0}, pi / 2), 0.5, 1e-15);
  EXPECT_EQ(measure_density({0.5, 0.0}, 0.0), 0.0);
  EXPECT_THROW(measure_density({-0.7, 0.0}, 0.0), DomainError);
  const auto rule = gauss_jacobi_rule(40, 0.0, 0.0);
  const double total = rule.integrate([](double x) { return 0.5 * pi * measure_density({0.0, 0.0}, 0.5 * pi * (x + 1)); });
  // density sin(t/2) cos(t/2) = sin(t)/2, so the total mass is 1 and P_0 = d_0 = 1 has unit norm
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(GaussJacobi, Rules) {
  const auto r1 = gauss_jacobi_rule(1, 0.0, 0.0);
  ASSERT_EQ(r1.nodes.size(), 1u);
  EXPECT_NEAR(r1.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(r1.weights[0], 2.0, 1e-14);
  EXPECT_NEAR(gauss_jacobi_rule(5, 0.0, 0.0).integrate([](double x) { return std::pow(x, 8); }), 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(gauss_jacobi_rule(8, 0.5, 0.5).integrate([](double) { return 1.0; }), pi / 2, 1e-13);
  EXPECT_THROW(gauss_jacobi_rule(4, -1.0, 0.0), DomainError);
}

TEST(GammaRatio, Limits) {
  EXPECT_NEAR(gamma_ratio_check(1e6, 1.0, 0.0), 1.0, 1e-5);
  const double r = gamma_ratio_check(10.0, 0.5, 0.0);
  EXPECT_GE(r, 0.9);
  EXPECT_LE(r, 1.1);
}

TEST(Params, Ranges) {
  EXPECT_THROW(JacobiParams(-1.0, 0.0), DomainError);
  EXPECT_NO_THROW(JacobiParams(0.0, 0.0).require_kernel_range("x"));
  EXPECT_THROW(JacobiParams(-0.5, 1.0).require_kernel_range("x"), UnsupportedRangeError);
}
