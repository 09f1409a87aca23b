#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jacobi_riesz/jacobi_transforms.hpp"

using namespace jacobi_riesz;

TEST(Analyze, SingleModeAndZero) {
  const JacobiParams p(0.5, 1.5);
  const auto s = analyze([&](double th) { return trig_poly(3, p, th); }, p, 10);
  for (int n = 0; n <= 10; ++n) EXPECT_NEAR(s.coeffs[n], n == 3 ? 1.0 : 0.0, 1e-13);
  const auto z = analyze([](double) { return 0.0; }, p, 5);
  for (double c : z.coeffs) EXPECT_EQ(c, 0.0);
  EXPECT_THROW(analyze([](double) { return 1.0; }, p, 100, 50), ConfigurationError);
}

// c_1 of cos(theta) at alpha = beta = 0 against a midpoint sum with 10^6 points
TEST(Analyze, CosineAgainstMidpointSum) {
  const JacobiParams p(0.0, 0.0);
  const auto s = analyze([](double th) { return std::cos(th); }, p, 4);
  const int M = 1000000;
  double c1 = 0.0;
  for (int i = 0; i < M; ++i) {
    const double th = pi * (i + 0.5) / M;
    c1 += std::cos(th) * trig_poly(1, p, th) * measure_density(p, th) * pi / M;
  }
  EXPECT_NEAR(s.coeffs[1], c1, 1e-8);
  EXPECT_NEAR(s.coeffs[1], 1.0 / std::sqrt(3.0), 1e-13);
}

TEST(Synthesize, RoundTripAndParseval) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N01;
  const JacobiParams p(-0.4, 2.5);
  Spectrum s{p, std::vector<double>(21)};
  for (auto& c : s.coeffs) c = N01(rng);
  const auto back = analyze([&](double th) { return synthesize(s, th); }, p, 20);
  for (int n = 0; n <= 20; ++n) EXPECT_NEAR(back.coeffs[n], s.coeffs[n], 1e-10);
  const auto rule = theta_rule(p, 30);
  double l2 = 0.0, sq = 0.0;
  for (int i = 0; i < rule.order; ++i) l2 += rule.weights[i] * std::pow(synthesize(s, rule.nodes[i]), 2);
  for (double c : s.coeffs) sq += c * c;
  EXPECT_NEAR(l2, sq, 1e-8 * sq);
  Spectrum e{p, std::vector<double>(6, 0.0)};
  e.coeffs[5] = 1.0;
  EXPECT_NEAR(synthesize(e, 1.1), trig_poly(5, p, 1.1), 1e-14);
}

TEST(Riesz, ConstantIsKilled) {
  Spectrum s{JacobiParams(1.0, 0.0), {2.5}};
  EXPECT_EQ(riesz_transform(s, 0.7), 0.0);
}

TEST(Riesz, SingleModeIsScaledDerivative) {
  Spectrum s{JacobiParams(0.0, 0.0), {0.0, 1.0}};
  const double want = -0.5 * std::sqrt(2.0) / 1.5 * std::sin(pi / 2) * trig_poly(0, JacobiParams(1.0, 1.0), pi / 2);
  EXPECT_NEAR(riesz_transform(s, pi / 2), want, 1e-14);
  for (const JacobiParams& p : {JacobiParams(0.5, 1.5), JacobiParams(2.0, -0.3)})
    for (int n = 1; n <= 6; ++n) {
      Spectrum m{p, std::vector<double>(n + 1, 0.0)};
      m.coeffs[n] = 1.0;
      for (double th : {0.4, 1.9})
        EXPECT_NEAR(riesz_transform(m, th), trig_poly_derivative(n, p, th) / (n + p.half_sum()), 1e-12);
    }
}

TEST(TOperator, Values) {
  const auto mp = ManifoldParams::complex_projective(2);
  Spectrum s{JacobiParams(0.0, 0.0), {1.0}};
  for (double th : {0.5, 2.0}) EXPECT_NEAR(t_operator(s, mp, th), 2.0 / std::sin(0.5 * th), 1e-13);
  Spectrum z{JacobiParams(0.0, 0.0), {0.0, 0.0}};
  EXPECT_EQ(t_operator(z, mp, 1.0), 0.0);
}

TEST(Manifold, Eigenvalues) {
  // sphere S^d: base params ((d-2)/2, (d-2)/2), eigenvalue (n + (d-1)/2)^2
  for (int d : {2, 3, 5}) {
    const auto mp = ManifoldParams::sphere(d);
    EXPECT_NEAR(eigenvalue(2, mp.params()), std::pow(2 + 0.5 * (d - 1), 2), 1e-12);
  }
  EXPECT_THROW(ManifoldParams::complex_projective(1), DomainError);
}

TEST(Poisson, SeriesAgainstIntegral) {
  const auto s = poisson_series(1.0, 1.0, 2.0, JacobiParams(0.0, 0.0), 60);
  const double c = poisson_integral(1.0, 1.0, 2.0, JacobiParams(0.0, 0.0));
  EXPECT_NEAR(s.value, c, 1e-8 * std::abs(c));
  EXPECT_LT(s.truncation_bound, 1e-12);
  for (const JacobiParams& p : {JacobiParams(1.0, 0.0), JacobiParams(0.5, 1.5), JacobiParams(2.5, -0.4)})
    for (double t : {0.5, 2.0}) {
      const double a = poisson_series(t, 0.3, 2.8, p, 200).value;
      const double b = poisson_integral(t, 0.3, 2.8, p);
      EXPECT_NEAR(a, b, 1e-9 * std::abs(b));
    }
}

TEST(Poisson, Errors) {
  EXPECT_THROW(poisson_series(0.0, 1.0, 2.0, JacobiParams(0.0, 0.0)), DomainError);
  EXPECT_THROW(poisson_integral(1.0, 1.0, 2.0, JacobiParams(-0.5, 0.0)), UnsupportedRangeError);
  EXPECT_THROW(poisson_integral(1.0, 1.0, 2.0, JacobiParams(0.0, -0.7)), UnsupportedRangeError);
}
