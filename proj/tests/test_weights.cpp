#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jacobi_riesz/weights.hpp"

using namespace jacobi_riesz;

namespace {
GridFunction random_grid(const JacobiParams& p, int n, unsigned seed, double shift = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto g = GridFunction::uniform(p, n);
  for (auto& v : g.values) v = U(rng) - shift;
  return g;
}
}  // namespace

TEST(Grid, MassesSumToTotal) {
  const auto g = GridFunction::uniform(JacobiParams(0.0, 0.0), 37);
  double s = 0.0;
  for (double m : g.masses) s += m;
  EXPECT_NEAR(s, 1.0, 1e-13);
  EXPECT_THROW(GridFunction::uniform(JacobiParams(0.0, 0.0), 0), DomainError);
  EXPECT_THROW(g.with_values({1.0}), ShapeError);
}

TEST(Grid, CellAveragesOfSingularFunction) {
  // theta^{-1.5} is integrable against dmu_{0,0} ~ theta dtheta near 0
  const JacobiParams p(0.0, 0.0);
  const auto g = GridFunction::from_function(p, 20, [](double t) { return std::pow(t, -1.5); });
  for (double v : g.values) EXPECT_TRUE(std::isfinite(v));
  const auto one = GridFunction::from_function(p, 20, [](double) { return 1.0; });
  for (double v : one.values) EXPECT_NEAR(v, 1.0, 1e-11);
}

TEST(Maximal, ConstantIsFixed) {
  auto g = GridFunction::uniform(JacobiParams(1.0, 0.5), 40);
  for (auto& v : g.values) v = 2.5;
  for (double v : maximal_function(g).values) EXPECT_NEAR(v, 2.5, 1e-12);
  GridFunction empty;
  EXPECT_THROW(maximal_function(empty), DomainError);
}

TEST(Maximal, DominatesAndIsSublinear) {
  const JacobiParams p(0.5, -0.3);
  const auto f = random_grid(p, 50, 1, 0.4), g = random_grid(p, 50, 2);
  const auto mf = maximal_function(f), mg = maximal_function(g);
  auto h = f;
  for (std::size_t i = 0; i < h.size(); ++i) h.values[i] = f.values[i] + g.values[i];
  const auto mh = maximal_function(h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_GE(mf.values[i], std::abs(f.values[i]));
    EXPECT_LE(mh.values[i], mf.values[i] + mg.values[i] + 1e-12);
  }
}

TEST(Maximal, DetailedIntervalsAttainTheValue) {
  const auto f = random_grid(JacobiParams(0.0, 0.0), 30, 5);
  const auto r = maximal_function_detailed(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    ASSERT_LE(r.left[i], i);
    ASSERT_GE(r.right[i], i);
    double s = 0.0, m = 0.0;
    for (std::size_t k = r.left[i]; k <= r.right[i]; ++k) {
      s += f.values[k] * f.masses[k];
      m += f.masses[k];
    }
    EXPECT_NEAR(s / m, r.value.values[i], 1e-12);
  }
}

TEST(Maximal, NormEstimate) {
  const auto e = maximal_norm_estimate(JacobiParams(0.0, 0.0), 100, 2.0);
  EXPECT_TRUE(e.stabilized);
  EXPECT_GT(e.norm, 1.0);
  EXPECT_THROW(maximal_norm_estimate(JacobiParams(0.0, 0.0), 10, 1.0), DomainError);
}

TEST(Ap, ConstantsAndErrors) {
  const JacobiParams p(0.0, 0.0);
  auto one = GridFunction::uniform(p, 50);
  for (auto& v : one.values) v = 1.0;
  EXPECT_NEAR(ap_constant(one, 2.0).constant, 1.0, 1e-12);
  auto bad = one;
  bad.values[3] = 0.0;
  EXPECT_THROW(ap_constant(bad, 2.0), DomainError);
  // growth toward the gamma = 2 boundary
  double prev = 0.0;
  for (double gam : {0.0, 1.0, 1.8}) {
    const double c = ap_constant(GridFunction::from_function(p, 100, power_weight(gam, 0.0)), 2.0).constant;
    EXPECT_GE(c, prev);
    prev = c;
  }
  EXPECT_GT(prev, 2.0);
}

TEST(Rdf, Properties) {
  const auto f = random_grid(JacobiParams(0.0, 0.0), 80, 9);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = rubio_de_francia_weight(f, p, 30);
    const auto c = check_rdf(f, r, p);
    EXPECT_TRUE(c.dominates);
    EXPECT_TRUE(c.norm_ok) << c.norm_ratio;
    EXPECT_TRUE(c.a1_ok) << c.a1_worst;
  }
  EXPECT_THROW(rubio_de_francia_weight(f, 2.0, 0), DomainError);
  const auto neg = random_grid(JacobiParams(0.0, 0.0), 10, 1, 0.5);
  EXPECT_THROW(rubio_de_francia_weight(neg, 2.0), DomainError);
}

TEST(Harness, IdentityAndShapes) {
  const JacobiParams p(0.0, 0.0);
  std::vector<FunctionPair> fam;
  for (unsigned s = 0; s < 4; ++s) {
    const auto f = random_grid(p, 30, s, 0.5);
    fam.push_back({f, f});
  }
  auto w = GridFunction::from_function(p, 30, power_weight(0.5, 0.0));
  for (const auto& row : vector_valued_harness(fam, 2.0, {1.5, 2.0, 3.0}, {{"pw", w}}))
    EXPECT_NEAR(row.ratio, 1.0, 1e-14);
  const auto other = GridFunction::uniform(p, 31);
  EXPECT_THROW(vector_valued_harness(fam, 2.0, {2.0}, {{"bad", other}}), ShapeError);
  fam.push_back({fam[0].f, other});
  EXPECT_THROW(vector_valued_harness(fam, 2.0, {2.0}, {}), ShapeError);
}
