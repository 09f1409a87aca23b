#include <gtest/gtest.h>

#include <cmath>

#include "jacobi_riesz/kernel_lab.hpp"

using namespace jacobi_riesz;

TEST(Geometry, DerivativeSpecialCases) {
  IntegrandGeometry g{1.0, 1.0, 2.0, 0.5};
  EXPECT_NEAR(dz_dtheta(g), 0.5 * std::sin(0.75), 1e-15);
  IntegrandGeometry d{0.3, 0.3, 1.2, 1.2};
  EXPECT_NEAR(dz_dtheta(d), 0.0, 1e-15);
  // finite difference of 1 - z
  IntegrandGeometry a{0.2, -0.4, 1.1, 2.3}, b = a;
  const double h = 1e-6;
  a.theta += h;
  b.theta -= h;
  EXPECT_NEAR(dz_dtheta({0.2, -0.4, 1.1, 2.3}), (a.one_minus_z() - b.one_minus_z()) / (2 * h), 1e-9);
}

TEST(Kernel, DiagonalThrows) {
  EXPECT_THROW(riesz_kernel(JacobiParams(0.0, 0.0), 1.0, 1.0), DiagonalError);
  EXPECT_THROW(t_kernel(JacobiParams(0.0, 0.0), ManifoldParams::sphere(3), 1.0, 1.0), DiagonalError);
  EXPECT_THROW(riesz_kernel(JacobiParams(-0.5, 0.0), 1.0, 2.0), UnsupportedRangeError);
}

// the Riesz kernel is the theta derivative of the time-integrated Poisson kernel
TEST(Kernel, RieszIsThetaDerivative) {
  KernelOptions opt;
  opt.rel_tol = 1e-12;
  const double h = 1e-4;
  for (const JacobiParams& p : {JacobiParams(0.0, 0.0), JacobiParams(1.0, 0.0), JacobiParams(0.5, 1.5)})
    for (auto [th, ph] : {std::pair{1.0, 2.0}, std::pair{0.3, 0.9}, std::pair{2.8, 1.4}}) {
      const double k = riesz_kernel(p, th, ph, opt);
      const double fd =
          (time_integrated_kernel(p, th + h, ph, opt) - time_integrated_kernel(p, th - h, ph, opt)) / (2 * h);
      EXPECT_NEAR(k, fd, 1e-5 * std::abs(k));
    }
  // with R = d/dtheta J^{-1/2} the kernel points toward the pole at varphi
  EXPECT_GT(riesz_kernel(JacobiParams(0.0, 0.0), 1.0, 2.0), 0.0);
  EXPECT_LT(riesz_kernel(JacobiParams(0.0, 0.0), 2.0, 1.0), 0.0);
}

// independent route: numerical t-integration of the Poisson double integral, then a difference in theta
TEST(Kernel, RieszAgainstNumericTimeIntegral) {
  const JacobiParams p(0.0, 0.0);
  const double h = 1e-3;
  const double fd = (time_integrated_numeric(p, 1.0 + h, 2.0, 40.0, 1e-12).value -
                     time_integrated_numeric(p, 1.0 - h, 2.0, 40.0, 1e-12).value) /
                    (2 * h);
  const double k = riesz_kernel(p, 1.0, 2.0);
  EXPECT_NEAR(k, fd, 1e-5 * std::abs(k));
}

TEST(Kernel, GradientsMatchFiniteDifferences) {
  const JacobiParams p(0.5, 1.5);
  const auto mp = ManifoldParams::complex_projective(2);
  KernelOptions opt;
  opt.rel_tol = 1e-12;
  const double th = 0.8, ph = 2.1, h = 1e-4;
  const auto g = riesz_kernel_gradient(p, th, ph, opt);
  EXPECT_NEAR(g.d_theta, (riesz_kernel(p, th + h, ph, opt) - riesz_kernel(p, th - h, ph, opt)) / (2 * h),
              1e-5 * std::abs(g.d_theta));
  EXPECT_NEAR(g.d_varphi, (riesz_kernel(p, th, ph + h, opt) - riesz_kernel(p, th, ph - h, opt)) / (2 * h),
              1e-5 * std::abs(g.d_varphi));
  const auto tg = t_kernel_gradient(p, mp, th, ph, opt);
  EXPECT_NEAR(tg.d_theta, (t_kernel(p, mp, th + h, ph, opt) - t_kernel(p, mp, th - h, ph, opt)) / (2 * h),
              1e-5 * std::abs(tg.d_theta));
}

TEST(Kernel, TimeIntegralCrossCheck) {
  for (const JacobiParams& p : {JacobiParams(0.0, 0.0), JacobiParams(2.5, -0.4)}) {
    const auto n = time_integrated_numeric(p, 0.7, 2.2);
    const double c = time_integrated_kernel(p, 0.7, 2.2);
    EXPECT_NEAR(n.value, c, 1e-6 * std::abs(c));
  }
}

TEST(Kernel, TKernelScalesBySqrtRho) {
  const JacobiParams p(1.0, 0.5);
  const auto mp = ManifoldParams::sphere(3);
  EXPECT_NEAR(t_kernel(p, mp, 1.2, 2.0), mp.sqrt_rho(1.2) * time_integrated_kernel(p, 1.2, 2.0), 1e-12);
}

TEST(BallMeasure, Basics) {
  const auto z = ball_measure(JacobiParams(0.0, 0.0), 1.0, 1.0);
  EXPECT_EQ(z.exact, 0.0);
  EXPECT_EQ(z.surrogate, 0.0);
  // alpha = beta = 0: mu(0, b) = sin^2(b/2)
  EXPECT_NEAR(interval_measure(JacobiParams(0.0, 0.0), 0.0, 1.3), std::pow(std::sin(0.65), 2), 1e-14);
  EXPECT_NEAR(interval_measure(JacobiParams(0.0, 0.0), 0.0, pi), 1.0, 1e-14);
  EXPECT_NEAR(interval_measure(JacobiParams(1.5, 0.5), 0.2, 3.0) + interval_measure(JacobiParams(1.5, 0.5), 3.0, pi),
              interval_measure(JacobiParams(1.5, 0.5), 0.2, pi), 1e-14);
}

TEST(Lemma0, ClosedFormAndBound) {
  const auto r = lemma0_check(0.5, 1.0, 1.0, 2.0, 1.0);
  EXPECT_NEAR(r.integral, 0.125, 1e-12);
  EXPECT_LE(r.integral, r.bound);
  EXPECT_THROW(lemma0_check(-0.5, 1.0, 1.0, 2.0, 1.0), DomainError);
  EXPECT_THROW(lemma0_check(0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_FALSE(lemma0_check(0.0, 0.0, 1.0, 2.0, 1.0).constant_known);
}

TEST(Identities, JacobiRecurrenceIdentity) {
  const auto r = jacobi_identity_check(2, JacobiParams(1.0, 0.5), 0.4);
  EXPECT_LE(std::max({r.identity, r.a_n, r.b_n, r.l2_form}), 1e-12);
  const auto aux = aux_inequalities_check(100);
  EXPECT_TRUE(aux.h_bound_holds);
  EXPECT_LE(aux.identity_max_residual, 1e-14);
}

TEST(Sweep, SmallGridRuns) {
  SweepConfig c;
  c.J = 2;
  c.grid_size = 8;
  c.modes = {SweepMode::RieszGrowth, SweepMode::TSmooth};
  const auto rep = weighted_kernel_sweep(c);
  ASSERT_EQ(rep.stats.size(), 2u);
  for (const auto& s : rep.stats) {
    EXPECT_TRUE(std::isfinite(s.max_sup));
    EXPECT_GE(s.max_over_median, 1.0);
  }
  // j = 0 is skipped for T modes
  int t_rows = 0;
  for (const auto& s : rep.summary) t_rows += s.mode == SweepMode::TSmooth;
  EXPECT_EQ(t_rows, 2);
  EXPECT_THROW(parse_mode("nope"), ConfigurationError);
  EXPECT_EQ(parse_mode("t_growth_sphere"), SweepMode::TGrowthSphere);
}

TEST(Sweep, Grid) {
  const auto g = centered_grid(4);
  EXPECT_NEAR(g[0], pi / 8, 1e-15);
  for (auto [a, b] : off_diagonal_pairs(g, 0.05)) EXPECT_GE(std::abs(a - b), 0.05);
  EXPECT_DOUBLE_EQ(median_of({3.0, 1.0, 2.0}), 2.0);
}
