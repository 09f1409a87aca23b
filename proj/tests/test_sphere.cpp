#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "jacobi_riesz/sphere.hpp"

using namespace jacobi_riesz;

TEST(Harmonics, Counts) {
  EXPECT_EQ(harmonic_count(1, 0), 1);
  EXPECT_EQ(harmonic_count(1, 5), 2);
  for (int j = 0; j < 8; ++j) EXPECT_EQ(harmonic_count(2, j), 2 * j + 1);
  EXPECT_EQ(harmonic_count(3, 2), 9);
}

TEST(Harmonics, OrthonormalOnS2) {
  const auto c = sphere2_grid(8, 15);
  for (int j = 0; j <= 4; ++j)
    for (int k = 1; k <= 2 * j + 1; ++k)
      for (int j2 = 0; j2 <= j; ++j2)
        for (int k2 = 1; k2 <= 2 * j2 + 1; ++k2) {
          double s = 0.0;
          for (std::size_t x = 0; x < c.size(); ++x)
            s += c.weights[x] * cross_harmonic(2, j, k, c.vartheta[x], c.phi[x]).y *
                 cross_harmonic(2, j2, k2, c.vartheta[x], c.phi[x]).y;
          EXPECT_NEAR(s, (j == j2 && k == k2) ? 1.0 : 0.0, 1e-13);
        }
}

TEST(Harmonics, GradientMatchesFiniteDifference) {
  const double h = 1e-6, vt = 1.1, ph = 0.7;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 2 * j + 1; ++k) {
      const auto v = cross_harmonic(2, j, k, vt, ph);
      const double d1 = (cross_harmonic(2, j, k, vt + h, ph).y - cross_harmonic(2, j, k, vt - h, ph).y) / (2 * h);
      const double d2 = (cross_harmonic(2, j, k, vt, ph + h).y - cross_harmonic(2, j, k, vt, ph - h).y) / (2 * h);
      EXPECT_NEAR(v.g1, d1, 1e-8);
      EXPECT_NEAR(v.g2, d2 / std::sin(vt), 1e-8);
    }
}

TEST(Analyze, SingleHarmonicProfile) {
  const auto layout = make_field(ManifoldParams::sphere(3), 4, 8);
  const auto g = make_product_grid(layout);
  auto prof = [](double t) { return std::sin(t) * std::sin(t) * (1.0 + std::cos(t)); };
  const auto f = harmonic_analyze(g, sample(g, [&](double t, double vt, double ph) {
                                    return prof(t) * cross_harmonic(2, 2, 1, vt, ph).y;
                                  }));
  const std::size_t want = f.profile_index(2, 1);
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (std::size_t t = 0; t < f.theta.size(); ++t)
      EXPECT_NEAR(f.profiles[i][t], i == want ? prof(f.theta[t]) : 0.0, 1e-12);
}

TEST(Analyze, ConstantHasOnlyDegreeZero) {
  const auto layout = make_field(ManifoldParams::sphere(3), 3, 6);
  const auto g = make_product_grid(layout);
  const auto f = harmonic_analyze(g, sample(g, [](double, double, double) { return 1.0; }));
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (double v : f.profiles[i]) EXPECT_NEAR(v, i == 0 ? std::sqrt(4.0 * pi) : 0.0, 1e-12);
}

TEST(Analyze, Errors) {
  const auto layout = make_field(ManifoldParams::sphere(3), 4, 8);
  const auto coarse = make_product_grid(layout, 2);
  EXPECT_THROW(harmonic_analyze(coarse, std::vector<double>(coarse.size(), 0.0)), ConfigurationError);
  const auto g = make_product_grid(layout);
  EXPECT_THROW(harmonic_analyze(g, std::vector<double>(3, 0.0)), ShapeError);
  EXPECT_THROW(make_field(ManifoldParams::sphere(3), 9, 8), ConfigurationError);
  EXPECT_THROW(mixed_norm(layout, 0.5), DomainError);
}

TEST(Norms, MixedL2EqualsL2AndCoefficientSum) {
  std::mt19937_64 rng(11);
  const auto layout = make_field(ManifoldParams::sphere(3), 5, 10);
  const auto f = random_field(layout, rng);
  const auto g = make_product_grid(layout);
  const double l2 = product_lp_l2(g, synthesize(f, g.cross), 2.0);
  EXPECT_NEAR(mixed_norm(f, 2.0), l2, 1e-11 * l2);
  double sq = 0.0;
  for (const auto& c : radial_coefficients(f))
    for (double v : c) sq += v * v;
  EXPECT_NEAR(sq, l2 * l2, 1e-9 * sq);
}

TEST(Operators, InverseSqrtLaplacianScalesBasis) {
  const auto layout = make_field(ManifoldParams::sphere(3), 2, 6);
  std::vector<std::vector<double>> c(layout.labels.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i].assign(layout.radial_count(layout.labels[i].first), 0.0);
  const std::size_t i = layout.profile_index(2, 3);
  c[i][1] = 1.0;
  const auto f = field_from_coefficients(layout, c);
  const auto g = inverse_sqrt_laplacian(f);
  // on S^3 the shift for degree j is j + 1, so n = 1, j = 2 gives eigenvalue index 4
  for (std::size_t t = 0; t < f.theta.size(); ++t) EXPECT_NEAR(g.profiles[i][t], f.profiles[i][t] / 4.0, 1e-12);
}

TEST(Operators, EvenProjection) {
  const auto layout = make_field(ManifoldParams::sphere(3), 2, 6);
  std::vector<std::vector<double>> odd(layout.labels.size()), even(layout.labels.size());
  for (std::size_t i = 0; i < odd.size(); ++i) {
    const int j = layout.labels[i].first;
    odd[i].assign(layout.radial_count(j), 0.0);
    even[i].assign(layout.radial_count(j), 0.0);
    for (std::size_t n = 0; n < odd[i].size(); ++n) ((n + j) % 2 ? odd : even)[i][n] = 1.0 + n;
  }
  const auto fo = even_projection(field_from_coefficients(layout, odd));
  const auto fe = field_from_coefficients(layout, even);
  const auto pe = even_projection(fe);
  for (std::size_t i = 0; i < fo.labels.size(); ++i)
    for (std::size_t t = 0; t < fo.theta.size(); ++t) {
      EXPECT_NEAR(fo.profiles[i][t], 0.0, 1e-11);
      EXPECT_NEAR(pe.profiles[i][t], fe.profiles[i][t], 1e-11);
    }
  EXPECT_THROW(even_projection(make_field(ManifoldParams::complex_projective(2), 1, 3)), DomainError);
}

TEST(Riesz, ConstantGivesZero) {
  const auto layout = make_field(ManifoldParams::sphere(3), 2, 4);
  const auto g = make_product_grid(layout);
  const auto f = harmonic_analyze(g, sample(g, [](double, double, double) { return 3.0; }));
  const auto r = riesz_sphere(f, 2.0);
  EXPECT_NEAR(r.output_norm, 0.0, 1e-12);
  EXPECT_NEAR(r.ratio, 0.0, 1e-12);
}

TEST(Riesz, L2Contraction) {
  std::mt19937_64 rng(4);
  const auto layout = make_field(ManifoldParams::sphere(3), 6, 12);
  for (int i = 0; i < 5; ++i) EXPECT_LE(riesz_sphere(random_field(layout, rng), 2.0).ratio, 1.0 + 1e-8);
}

TEST(Projective, PipelineAndErrors) {
  EXPECT_THROW(ManifoldParams::quaternionic_projective(1), DomainError);
  std::mt19937_64 rng(2);
  const auto mp = ManifoldParams::quaternionic_projective(2);
  const auto f = random_projective_field(mp, 3, 6, rng);
  const auto out = projective_radial_pipeline(f);
  EXPECT_TRUE(std::isfinite(out.output_norm(2.0)));
  for (double v : out.t_part.profiles[f.profile_index(0, 1)]) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(projective_radial_pipeline(make_field(ManifoldParams::sphere(3), 1, 2)), DomainError);
}

TEST(Csv, FieldHeader) {
  std::ostringstream os;
  write_field_csv(os, make_field(ManifoldParams::sphere(2), 1, 2));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "j,k,theta_index,value");
}
