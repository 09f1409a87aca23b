#pragma once

// Verification suites. Each returns pass/fail, the first failure and CSV tables;
// the CLI and the acceptance binary both run these.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "jacobi_transforms.hpp"
#include "kernel_lab.hpp"
#include "special_functions.hpp"
#include "sphere.hpp"
#include "weights.hpp"

namespace jacobi_riesz {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string first_failure;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, CsvTable>> tables;  // file stem, table

  void expect(bool ok, const std::string& what) {
    if (!ok && passed) first_failure = what;
    if (!ok) passed = false;
  }
  void note(const std::string& s) { notes.push_back(s); }
  void absorb(SuiteResult o) {
    if (!o.passed && passed) first_failure = o.first_failure;
    passed = passed && o.passed;
    for (auto& n : o.notes) notes.push_back(std::move(n));
    for (auto& t : o.tables) tables.push_back(std::move(t));
  }
};

namespace suites {

inline std::string pstr(const JacobiParams& p) { return "(" + fmt(p.alpha) + "," + fmt(p.beta) + ")"; }

inline std::vector<JacobiParams> param_square(const std::vector<double>& v) {
  std::vector<JacobiParams> out;
  for (double a : v)
    for (double b : v) out.emplace_back(a, b);
  return out;
}

// ---------------------------------------------------------------------------

inline SuiteResult orthonormality(const RunConfig& cfg) {
  SuiteResult r{"orthonormality"};
  const int N = cfg.integer("N", 40);
  const double tol = cfg.tol("tol", 1e-9);
  CsvTable t{{"alpha", "beta", "N", "max_gram_deviation"}};
  for (const auto& p : param_square(cfg.list("alphas", {-0.4, 0.0, 0.5, 1.0, 2.5}))) {
    const auto rule = theta_rule(p, N + 8);
    std::vector<std::vector<double>> P;
    for (double th : rule.nodes) P.push_back(trig_poly_sequence(N, p, th));
    double dev = 0.0;
    for (int n = 0; n <= N; ++n)
      for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (int i = 0; i < rule.order; ++i) s += rule.weights[i] * P[i][n] * P[i][m];
        dev = std::max(dev, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    t.add(p.alpha, p.beta, N, dev);
    r.expect(dev <= tol, "Gram deviation " + fmt(dev) + " at " + pstr(p));
  }
  r.tables.emplace_back("gram", std::move(t));
  return r;
}

inline SuiteResult eigen(const RunConfig& cfg) {
  SuiteResult r{"eigen"};
  const int N = cfg.integer("N", 40);
  const double tol = cfg.tol("tol", 1e-7);
  const int pts = cfg.integer("points", 64);
  CsvTable t{{"alpha", "beta", "n", "relative_residual"}};
  double worst = 0.0;
  for (const auto& p : param_square(cfg.list("alphas", {-0.4, 0.0, 0.5, 1.0, 2.5})))
    for (int n = 0; n <= N; ++n) {
      double res = 0.0, big = 0.0;
      for (int i = 0; i < pts; ++i) {
        const double th = 0.1 + (pi - 0.2) * i / (pts - 1);
        const double v = trig_poly(n, p, th);
        res = std::max(res, std::abs(jacobi_operator_apply(n, p, th) - eigenvalue(n, p) * v));
        big = std::max(big, std::abs(v));
      }
      const double rel = res / (eigenvalue(n, p) * big);
      worst = std::max(worst, rel);
      t.add(p.alpha, p.beta, n, rel);
      r.expect(rel <= tol, "eigen residual " + fmt(rel) + " at n=" + std::to_string(n) + " " + pstr(p));
    }
  r.note("eigen: worst relative residual " + fmt(worst));
  r.tables.emplace_back("residuals", std::move(t));
  return r;
}

inline SuiteResult orthonormality_and_eigen(const RunConfig& cfg) {
  auto r = orthonormality(cfg);
  r.absorb(eigen(cfg));
  return r;
}

// Poisson series against the closed-form double integral
inline SuiteResult poisson_dual(const RunConfig& cfg) {
  SuiteResult r{"poisson"};
  const double tol = cfg.tol("poisson_tol", 1e-7);
  const int g = cfg.integer("poisson_grid", 10);
  const auto ts = cfg.list("t", {0.5, 1.0, 2.0});
  const std::vector<JacobiParams> ps{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.5}, {2.5, -0.4}};
  CsvTable t{{"alpha", "beta", "t", "theta", "varphi", "series", "integral", "rel_diff"}};
  double worst = 0.0;
  for (const auto& p : ps)
    for (double tt : ts) {
      if (!(tt >= 0.5)) throw ConfigurationError("poisson: t must be >= 0.5");
      for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) {
          const double th = pi * (i + 0.5) / g, ph = pi * (k + 0.5) / g;
          const auto s = poisson_series(tt, th, ph, p, 200);
          const double c = poisson_integral(tt, th, ph, p);
          const double rel = std::abs(s.value - c) / std::abs(c);
          worst = std::max(worst, rel);
          t.add(p.alpha, p.beta, tt, th, ph, s.value, c, rel);
          r.expect(rel <= tol, "Poisson mismatch " + fmt(rel) + " at " + pstr(p));
        }
    }
  r.note("poisson: worst relative difference " + fmt(worst));
  r.tables.emplace_back("poisson", std::move(t));
  return r;
}

// t-integral of the Poisson kernel against the closed form
inline SuiteResult time_integration(const RunConfig& cfg) {
  SuiteResult r{"time-integration"};
  const double tol = cfg.tol("time_tol", 1e-6);
  const int g = cfg.integer("time_grid", 6);
  const std::vector<JacobiParams> ps{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.5}, {2.5, -0.4}};
  CsvTable t{{"alpha", "beta", "theta", "varphi", "numeric", "closed_form", "rel_diff"}};
  double worst = 0.0;
  for (const auto& p : ps)
    for (int i = 0; i < g; ++i)
      for (int k = 0; k < g; ++k) {
        if (i == k) continue;
        const double th = pi * (i + 0.5) / g, ph = pi * (k + 0.5) / g;
        const auto n = time_integrated_numeric(p, th, ph);
        const double c = time_integrated_kernel(p, th, ph);
        const double rel = std::abs(n.value - c) / std::abs(c);
        worst = std::max(worst, rel);
        t.add(p.alpha, p.beta, th, ph, n.value, c, rel);
        r.expect(rel <= tol, "time integration mismatch " + fmt(rel) + " at " + pstr(p));
      }
  r.note("time integration: worst relative difference " + fmt(worst));
  r.tables.emplace_back("time_integration", std::move(t));
  return r;
}

inline SuiteResult t_kernel(const RunConfig& cfg) {
  auto r = poisson_dual(cfg);
  r.absorb(time_integration(cfg));
  r.name = "t-kernel";
  return r;
}

inline SuiteResult lemma0(const RunConfig& cfg) {
  SuiteResult r{"lemma0"};
  const int trials = cfg.integer("trials", 1000);
  std::mt19937_64 rng(cfg.seed());
  std::uniform_real_distribution<double> U(0.0, 1.0);
  CsvTable t{{"trial", "c", "d", "lambda", "A", "B", "integral", "bound", "ratio"}};
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double c = -0.5 + 1e-3 + 4.0 * U(rng);
    const double d = 1e-3 + 4.0 * U(rng);
    const double lam = 1e-3 + 4.0 * U(rng);
    const double A = std::exp(-3.0 + 6.0 * U(rng));
    const double B = A * (1e-3 + 0.998 * U(rng));
    const auto res = lemma0_check(c, d, lam, A, B);
    const double ratio = res.integral / res.bound;
    worst = std::max(worst, ratio);
    if (!(res.integral <= res.bound)) ++violations;
    t.add(i, c, d, lam, A, B, res.integral, res.bound, ratio);
  }
  r.expect(violations == 0, std::to_string(violations) + " violations of integral <= bound");
  r.note("lemma0: " + std::to_string(violations) + " violations in " + std::to_string(trials) +
         " tuples, worst integral/bound " + fmt(worst));
  // closed form at c = 1/2, d = 1, lambda = 1, A = 2, B = 1: int_0^1 (1-s)(2-s)^{-3} ds = 1/8
  const auto ex = lemma0_check(0.5, 1.0, 1.0, 2.0, 1.0);
  r.expect(std::abs(ex.integral - 0.125) <= 1e-12, "lemma0 closed form " + fmt(ex.integral) + " != 1/8");
  // d = 0: empirical constant
  double cmax = 0.0;
  for (double c : {-0.4, 0.0, 0.5, 2.0})
    for (double lam : {0.1, 0.5, 1.0, 3.0})
      for (double A : {0.5, 1.0, 5.0})
        for (double f : {0.01, 0.5, 0.99}) {
          const auto z = lemma0_check(c, 0.0, lam, A, f * A);
          cmax = std::max(cmax, z.integral / z.bound);
        }
  r.note("lemma0: d = 0 empirical constant " + fmt(cmax));
  r.tables.emplace_back("tuples", std::move(t));
  return r;
}

inline SuiteResult identities(const RunConfig& cfg) {
  SuiteResult r{"identities"};
  const auto aux = aux_inequalities_check(cfg.integer("grid", 200));
  r.expect(aux.h_bound_holds, "h bound violated, worst ratio " + fmt(aux.h_worst_ratio));
  r.expect(aux.identity_max_residual <= 1e-14, "trig identity residual " + fmt(aux.identity_max_residual));
  r.expect(aux.cos_cos.min_ratio >= 0.05 && aux.cos_cos.max_ratio <= 1.3,
           "1 - cos cos comparability outside [0.05, 1.3]");
  CsvTable c{{"quantity", "min_ratio", "max_ratio"}};
  c.add("one_minus_cos_cos_vs_sum_sq", aux.cos_cos.min_ratio, aux.cos_cos.max_ratio);
  c.add("one_minus_sin_sin_vs_sum_sq_from_pi", aux.sin_sin.min_ratio, aux.sin_sin.max_ratio);
  c.add("two_sin_sq_quarter_diff_vs_diff_sq", aux.difference.min_ratio, aux.difference.max_ratio);
  r.tables.emplace_back("comparability", std::move(c));

  // Jacobi identity and the A_n, B_n relations at random points
  const double tol = cfg.tol("tol", 1e-10);
  std::mt19937_64 rng(cfg.seed());
  std::uniform_real_distribution<double> U(0.0, 1.0);
  CsvTable t{{"n", "alpha", "beta", "x", "identity", "a_n", "b_n", "l2_form"}};
  double worst = 0.0;
  for (int i = 0; i < cfg.integer("trials", 200); ++i) {
    const int n = 1 + static_cast<int>(U(rng) * 30.0);
    const double a = 5.0 * (1.0 - U(rng));           // (0, 5]
    const double b = -0.5 + 5.5 * (1.0 - U(rng));    // (-1/2, 5]
    const double x = -1.0 + 2.0 * U(rng);
    const auto res = jacobi_identity_check(std::min(n, 30), JacobiParams(a, b), x);
    const double w = std::max({res.identity, res.a_n, res.b_n, res.l2_form});
    worst = std::max(worst, w);
    t.add(std::min(n, 30), a, b, x, res.identity, res.a_n, res.b_n, res.l2_form);
    r.expect(w <= tol, "Jacobi identity residual " + fmt(w) + " at n=" + std::to_string(n));
  }
  r.note("identities: worst Jacobi identity residual " + fmt(worst));
  r.tables.emplace_back("jacobi_identity", std::move(t));

  // Gamma ratio Gamma(z+r)/Gamma(z+t) z^{t-r} on z + min(r,t) >= 2
  double gmin = 1e300, gmax = 0.0;
  for (int iz = 0; iz <= 40; ++iz) {
    const double z = std::pow(10.0, 4.0 * iz / 40.0);
    for (int ir = 0; ir <= 16; ++ir)
      for (int it = 0; it <= 16; ++it) {
        const double rr = -2.0 + ir * 0.25, tt = -2.0 + it * 0.25;
        if (z + std::min(rr, tt) < 2.0) continue;
        const double v = gamma_ratio_check(z, rr, tt);
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
      }
  }
  const double C = std::max(gmax, 1.0 / gmin);
  r.expect(C <= 3.0, "gamma ratio constant " + fmt(C) + " > 3");
  r.note("identities: gamma ratio constant " + fmt(C));
  return r;
}

inline SuiteResult ball_measure_suite(const RunConfig& cfg) {
  SuiteResult r{"ball-measure"};
  const int n = cfg.integer("grid", 40);
  const double eps = cfg.num("eps", 0.05);
  const double bound = cfg.num("C", 20.0);
  const auto pairs = off_diagonal_pairs(centered_grid(n), eps);
  CsvTable t{{"alpha", "beta", "min_ratio", "max_ratio", "C"}};
  std::vector<JacobiParams> ps{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.5}};
  if (cfg.has("alpha") || cfg.has("beta")) ps = {JacobiParams(cfg.num("alpha", 0.0), cfg.num("beta", 0.0))};
  for (const auto& p : ps) {
    double lo = 1e300, hi = 0.0;
    for (const auto& [th, ph] : pairs) {
      const auto m = ball_measure(p, th, ph);
      const double q = m.exact / m.surrogate;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const double C = std::sqrt(hi / lo);
    t.add(p.alpha, p.beta, lo, hi, C);
    r.note("ball-measure " + pstr(p) + ": C = " + fmt(C));
    r.expect(C <= bound, "ball measure comparability constant " + fmt(C) + " at " + pstr(p));
  }
  r.tables.emplace_back("comparability", std::move(t));
  return r;
}

// ---------------------------------------------------------------------------
// Kernel sweeps

enum class SweepKind { Growth, Smooth, All };

struct SweepCase {
  double a, b;
  JacobiParams base;
};

inline std::vector<SweepCase> sweep_cases(const RunConfig& cfg) {
  std::vector<std::pair<double, double>> ab{{1.0, 1.0}, {2.0, 0.0}};
  std::vector<JacobiParams> bases{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.5}};
  if (cfg.has("a") || cfg.has("b")) ab = {{cfg.num("a", 1.0), cfg.num("b", 1.0)}};
  if (cfg.has("alpha") || cfg.has("beta")) bases = {JacobiParams(cfg.num("alpha", 0.0), cfg.num("beta", 0.0))};
  std::vector<SweepCase> out;
  for (const auto& [a, b] : ab)
    for (const auto& p : bases) out.push_back({a, b, p});
  return out;
}

// modes for one case: T modes with the projective rho always, with the sphere rho only
// where the sphere hypotheses hold (b >= 1, beta > 0)
inline std::vector<SweepMode> sweep_modes(const SweepCase& c, SweepKind k) {
  std::vector<SweepMode> m;
  const bool sphere_ok = c.b >= 1.0 && c.base.beta > 0.0;
  if (k != SweepKind::Smooth) {
    m.push_back(SweepMode::RieszGrowth);
    m.push_back(SweepMode::TGrowth);
    if (sphere_ok) m.push_back(SweepMode::TGrowthSphere);
  }
  if (k != SweepKind::Growth) {
    m.push_back(SweepMode::RieszSmooth);
    m.push_back(SweepMode::TSmooth);
    if (sphere_ok) m.push_back(SweepMode::TSmoothSphere);
  }
  return m;
}

inline SuiteResult kernel_sweeps(const RunConfig& cfg, SweepKind kind) {
  SuiteResult r{kind == SweepKind::Growth ? "kernel-growth" : kind == SweepKind::Smooth ? "kernel-smooth" : "kernel"};
  const double bound = cfg.num("max_over_median", 10.0);
  const bool rows = cfg.integer("rows", 0) != 0;
  CsvTable stats{{"a", "b", "alpha", "beta", "mode", "max_sup", "median_sup", "max_over_median"}};
  for (const auto& c : sweep_cases(cfg)) {
    SweepConfig sc;
    sc.a = c.a;
    sc.b = c.b;
    sc.base = c.base;
    sc.J = cfg.integer("J", 20);
    sc.grid_size = cfg.integer("grid", 40);
    sc.eps = cfg.num("eps", 0.05);
    sc.kernel.rel_tol = cfg.tol("kernel_tol", 1e-8);
    sc.modes = sweep_modes(c, kind);
    sc.threads = static_cast<unsigned>(std::max(0, cfg.integer("threads", 0)));
    const auto rep = weighted_kernel_sweep(sc);
    const std::string stem = "a" + fmt(c.a) + "_b" + fmt(c.b) + "_alpha" + fmt(c.base.alpha) + "_beta" + fmt(c.base.beta);
    CsvTable sum{{"j", "mode", "sup_ratio"}};
    for (const auto& s : rep.summary) sum.add(s.j, mode_name(s.mode), s.sup_ratio);
    r.tables.emplace_back(stem + "_summary", std::move(sum));
    if (rows) {
      CsvTable all{{"j", "theta", "varphi", "mode", "kernel", "ball", "ratio"}};
      for (const auto& row : rep.rows)
        all.add(row.j, row.point.theta, row.point.varphi, mode_name(row.mode), row.point.kernel_value,
                row.point.ball_measure, row.point.ratio);
      r.tables.emplace_back(stem + "_rows", std::move(all));
    }
    for (const auto& st : rep.stats) {
      stats.add(c.a, c.b, c.base.alpha, c.base.beta, mode_name(st.mode), st.max_sup, st.median_sup, st.max_over_median);
      r.note("sweep (a,b)=(" + fmt(c.a) + "," + fmt(c.b) + ") " + pstr(c.base) + " " + mode_name(st.mode) +
             ": max/median " + fmt(st.max_over_median) + ", max sup " + fmt(st.max_sup));
      r.expect(std::isfinite(st.max_sup) && st.max_over_median <= bound,
               std::string("sweep ") + mode_name(st.mode) + " max/median " + fmt(st.max_over_median) + " at (a,b)=(" +
                   fmt(c.a) + "," + fmt(c.b) + ") " + pstr(c.base));
    }
  }
  r.tables.emplace_back("statistics", std::move(stats));
  return r;
}

// ---------------------------------------------------------------------------
// Weights

inline std::vector<double> brute_force_maximal(const GridFunction& f) {
  const std::size_t n = f.size();
  std::vector<double> m(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0, mu = 0.0;
      for (std::size_t k = a; k <= b; ++k) {
        s += std::abs(f.values[k]) * f.masses[k];
        mu += f.masses[k];
      }
      for (std::size_t k = a; k <= b; ++k) m[k] = std::max(m[k], s / mu);
    }
  return m;
}

// random band-limited spectrum sampled at cell midpoints, with its Riesz transform
template <class Rng>
FunctionPair riesz_pair(const JacobiParams& p, int n, int N, Rng& rng) {
  std::normal_distribution<double> N01(0.0, 1.0);
  Spectrum s{p, std::vector<double>(N + 1)};
  for (auto& c : s.coeffs) c = N01(rng);
  auto f = GridFunction::uniform(p, n);
  auto g = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.values[i] = synthesize(s, f.theta[i]);
    g.values[i] = riesz_transform(s, f.theta[i]);
  }
  return {f, g};
}

inline SuiteResult weights_suite(const RunConfig& cfg) {
  SuiteResult r{"weights"};
  const JacobiParams p0(cfg.num("alpha", 0.0), cfg.num("beta", 0.0));
  std::mt19937_64 rng(cfg.seed());
  std::uniform_real_distribution<double> U(0.0, 1.0);

  const auto one = GridFunction::from_function(p0, 50, [](double) { return 1.0; });
  double dev = 0.0;
  for (double v : maximal_function(one).values) dev = std::max(dev, std::abs(v - 1.0));
  r.expect(dev <= 1e-12, "M1 != 1, deviation " + fmt(dev));

  auto f = GridFunction::uniform(p0, 60);
  auto g = f;
  for (auto& v : f.values) v = U(rng) - 0.3;
  for (auto& v : g.values) v = U(rng) * U(rng);
  const auto mf = maximal_function(f), mg = maximal_function(g);
  auto fg = f;
  for (std::size_t i = 0; i < fg.size(); ++i) fg.values[i] = std::abs(f.values[i]) + g.values[i];
  const auto mfg = maximal_function(fg);
  const auto bf = brute_force_maximal(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    r.expect(mf.values[i] >= std::abs(f.values[i]) - 1e-15, "Mf < |f|");
    r.expect(mfg.values[i] <= mf.values[i] + mg.values[i] + 1e-12, "M not sublinear");
    r.expect(std::abs(mf.values[i] - bf[i]) <= 1e-12 * bf[i], "maximal function differs from brute force");
  }
  const auto ind = GridFunction::from_function(p0, 60, [](double t) { return t > 1.0 && t < 1.2 ? 1.0 : 0.0; });
  const auto mi = maximal_function(ind);
  const auto bi = brute_force_maximal(ind);
  double di = 0.0;
  for (std::size_t i = 0; i < ind.size(); ++i) di = std::max(di, std::abs(mi.values[i] - bi[i]));
  r.expect(di <= 1e-12, "indicator maximal function differs from brute force by " + fmt(di));

  CsvTable nt{{"p", "norm_estimate", "iterations", "last_change"}};
  for (double p : cfg.list("p", {1.5, 2.0, 3.0})) {
    const auto e = maximal_norm_estimate(p0, cfg.integer("grid", 200), p);
    nt.add(p, e.norm, e.iterations, e.last_change);
    r.expect(e.stabilized, "power iteration for ||M|| did not stabilize at p=" + fmt(p));
  }
  r.tables.emplace_back("maximal_norm", std::move(nt));

  // A_p constants
  const auto w1 = GridFunction::uniform(p0, 80).with_values(std::vector<double>(80, 1.0));
  r.expect(std::abs(ap_constant(w1, 2.0).constant - 1.0) <= 1e-12, "A_p constant of 1 != 1");
  CsvTable at{{"gamma", "n", "p", "ap_constant"}};
  double prev_gamma = 0.0;
  for (double gam : {0.0, 0.5, 1.0, 1.5, 1.9}) {
    double prev = 0.0;
    for (int n : {50, 100, 200}) {
      const auto w = GridFunction::from_function(p0, n, power_weight(gam, 0.0));
      const auto rep = ap_constant(w, 2.0);
      at.add(gam, n, 2.0, rep.constant);
      r.expect(rep.constant >= 1.0 - 1e-12, "A_p constant below 1");
      r.expect(rep.constant >= prev * (1.0 - 1e-9), "A_p constant decreased under refinement at gamma=" + fmt(gam));
      prev = rep.constant;
      if (n == 200) {
        r.expect(rep.constant >= prev_gamma * (1.0 - 1e-9), "A_p constant not increasing in gamma");
        prev_gamma = rep.constant;
        auto w3 = w;
        for (auto& v : w3.values) v *= 3.7;
        const double c3 = ap_constant(w3, 2.0).constant;
        r.expect(std::abs(c3 - rep.constant) <= 1e-12 * rep.constant, "A_p constant not scale invariant");
      }
    }
  }
  r.tables.emplace_back("ap_power_weights", std::move(at));

  // vector-valued harness
  const int n = cfg.integer("grid", 200);
  std::vector<FunctionPair> ident, riesz;
  for (int i = 0; i < cfg.integer("trials", 10); ++i) {
    auto pr = riesz_pair(p0, n, 16, rng);
    ident.push_back({pr.f, pr.f});
    riesz.push_back(pr);
  }
  std::vector<NamedWeight> ws{{"one", GridFunction::uniform(p0, n).with_values(std::vector<double>(n, 1.0))},
                              {"power_0.5_0.5", GridFunction::from_function(p0, n, power_weight(0.5, 0.5))}};
  const auto ps = cfg.list("p", {1.5, 2.0, 3.0});
  for (const auto& row : vector_valued_harness(ident, 2.0, ps, ws))
    r.expect(std::abs(row.ratio - 1.0) <= 1e-12, "identity harness ratio != 1");
  CsvTable ht{{"p", "weight_id", "lhs", "rhs", "ratio"}};
  double hmax = 0.0;
  for (const auto& row : vector_valued_harness(riesz, 2.0, ps, ws)) {
    ht.add(row.p, row.weight_id, row.lhs, row.rhs, row.ratio);
    hmax = std::max(hmax, row.ratio);
  }
  r.expect(hmax <= cfg.num("harness_bound", 10.0), "Riesz harness ratio " + fmt(hmax));
  r.note("weights: Riesz harness max ratio " + fmt(hmax));
  r.tables.emplace_back("harness", std::move(ht));
  return r;
}

inline SuiteResult rdf_suite(const RunConfig& cfg) {
  SuiteResult r{"rdf"};
  const JacobiParams p0(cfg.num("alpha", 0.0), cfg.num("beta", 0.0));
  std::mt19937_64 rng(cfg.seed());
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = cfg.integer("grid", 200);
  const int K = cfg.integer("K", 30);
  const double tol = cfg.tol("tol", 1e-6);
  CsvTable t{{"trial", "p", "operator_norm", "norm_ratio", "a1_worst", "tail_bound"}};
  for (int trial = 0; trial < cfg.integer("trials", 20); ++trial) {
    auto f = GridFunction::uniform(p0, n);
    // smooth bumps plus noise, so the iterates differ from trial to trial
    const double c = pi * U(rng), w = 0.05 + 0.5 * U(rng), a = U(rng);
    for (std::size_t i = 0; i < f.size(); ++i)
      f.values[i] = std::exp(-std::pow((f.theta[i] - c) / w, 2)) + a * U(rng) * U(rng);
    for (double p : cfg.list("p", {1.5, 2.0, 3.0})) {
      const auto res = rubio_de_francia_weight(f, p, K);
      const auto chk = check_rdf(f, res, p, tol);
      t.add(trial, p, res.operator_norm, chk.norm_ratio, chk.a1_worst, res.tail_bound);
      const std::string at = " (trial " + std::to_string(trial) + ", p=" + fmt(p) + ")";
      r.expect(chk.dominates, "Rf < f" + at);
      r.expect(chk.norm_ok, "||Rf||_p > 2||f||_p" + at);
      r.expect(chk.a1_ok, "M(Rf) > 2||M|| Rf + tail" + at);
    }
  }
  r.tables.emplace_back("rdf", std::move(t));
  return r;
}

// ---------------------------------------------------------------------------
// Sphere and projective pipelines

inline SuiteResult sphere_suite(const RunConfig& cfg) {
  SuiteResult r{"sphere"};
  const int d = cfg.integer("d", 3);
  if (d != 2 && d != 3) throw ConfigurationError("sphere: d must be 2 or 3");
  const auto mp = ManifoldParams::sphere(d);
  const int J = cfg.integer("max_degree", 16), N = cfg.integer("radial_cap", 24);
  const auto layout = make_field(mp, J, N);
  std::mt19937_64 rng(cfg.seed());

  // psi normalization
  double pdev = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (int j = 0; j <= n; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < layout.theta.size(); ++t) {
        const double v = psi(d, n, j, layout.theta[t]);
        s += layout.theta_weights[t] * v * v;
      }
      pdev = std::max(pdev, std::abs(s - 1.0));
    }
  r.expect(pdev <= 1e-9, "psi normalization deviation " + fmt(pdev));

  // basis consistency through an independent Gauss rule for mu_{alpha+j,alpha+j}
  {
    const auto f = random_field(layout, rng);
    const auto c = radial_coefficients(f);
    double worst = 0.0;
    for (int j : {0, 1, 3, 7}) {
      const std::size_t i = f.profile_index(j, 1);
      const JacobiParams q(mp.alpha + j, mp.alpha + j);
      const auto rule = theta_rule(q, N + 8);
      auto F = [&](double th) {
        double v = 0.0;
        for (std::size_t n = 0; n < c[i].size(); ++n) v += c[i][n] * psi(d, static_cast<int>(n) + j, j, th);
        return v;
      };
      for (int n = 0; n + j <= N; n += 3) {
        double rhs = 0.0;
        for (int k = 0; k < rule.order; ++k)
          rhs += rule.weights[k] * F(rule.nodes[k]) / std::pow(std::sin(rule.nodes[k]), j) * trig_poly(n, q, rule.nodes[k]);
        rhs *= std::pow(2.0, j + 0.5 * (d - 1));
        worst = std::max(worst, std::abs(c[i][n] - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
    r.expect(worst <= 1e-8, "basis consistency residual " + fmt(worst));
  }

  // Parseval, L2(L2) = L2 and round trip on the product grid
  {
    const auto grid = make_product_grid(layout);
    const auto f = random_field(layout, rng);
    const auto s = synthesize(f, grid.cross);
    const auto c = radial_coefficients(f);
    double sq = 0.0;
    for (const auto& v : c)
      for (double x : v) sq += x * x;
    const double l2 = product_lp_l2(grid, s, 2.0);
    r.expect(std::abs(sq - l2 * l2) <= 1e-8 * sq, "Parseval mismatch");
    r.expect(std::abs(mixed_norm(f, 2.0) - l2) <= 1e-10 * l2, "mixed L2(L2) norm differs from L2 norm");
    const auto back = synthesize(harmonic_analyze(grid, s), grid.cross);
    double e = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) e = std::max(e, std::abs(back[k] - s[k]));
    r.expect(e <= 1e-8, "analysis round trip error " + fmt(e));
    const auto ev = even_projection(f);
    const auto ev2 = even_projection(ev);
    double ie = 0.0;
    for (std::size_t i = 0; i < ev.profiles.size(); ++i)
      for (std::size_t t = 0; t < ev.theta.size(); ++t) ie = std::max(ie, std::abs(ev.profiles[i][t] - ev2.profiles[i][t]));
    r.expect(ie <= 1e-10, "even projection not idempotent");
  }

  // Riesz ratios
  const auto ps = cfg.list("p", {1.5, 2.0, 3.0});
  const int trials = cfg.integer("trials", 50);
  const double bound = cfg.num("max_over_median", 10.0);
  CsvTable t{{"trial", "p", "input_norm", "output_norm", "ratio"}};
  std::map<double, std::vector<double>> by_p;
  for (int trial = 0; trial < trials; ++trial) {
    const auto f = random_field(layout, rng);
    const auto g = random_field(layout, rng);
    for (double p : ps) {
      const auto res = riesz_sphere(f, p);
      t.add(trial, p, res.input_norm, res.output_norm, res.ratio);
      by_p[p].push_back(res.ratio);
      if (p == 2.0) r.expect(res.ratio <= 1.0 + 1e-8, "L2 Riesz ratio " + fmt(res.ratio) + " > 1");
      auto h = f;
      for (std::size_t i = 0; i < h.profiles.size(); ++i)
        for (std::size_t k = 0; k < h.theta.size(); ++k) h.profiles[i][k] += g.profiles[i][k];
      r.expect(mixed_norm(h, p) <= (mixed_norm(f, p) + mixed_norm(g, p)) * (1.0 + 1e-12), "mixed norm triangle inequality");
    }
  }
  for (auto& [p, v] : by_p) {
    const double mx = *std::max_element(v.begin(), v.end());
    const double md = median_of(v);
    r.note("sphere d=" + std::to_string(d) + " p=" + fmt(p) + ": max ratio " + fmt(mx) + ", max/median " + fmt(mx / md));
    r.expect(mx / md <= bound, "sphere Riesz max/median " + fmt(mx / md) + " at p=" + fmt(p));
  }
  t.comments.push_back("d=" + std::to_string(d));
  r.tables.emplace_back("riesz", std::move(t));
  return r;
}

/// ||alpha T_M f||_2 / ||f||_2 for random spectra, rho = 1/sin^2(theta/2).
inline SuiteResult t_uniformity(const RunConfig& cfg) {
  SuiteResult r{"t-uniformity"};
  const double bound = cfg.num("t_bound", 4.0);
  const int N = cfg.integer("N", 32);
  std::mt19937_64 rng(cfg.seed());
  std::normal_distribution<double> N01(0.0, 1.0);
  const auto mp = ManifoldParams::complex_projective(2);  // only rho is used
  CsvTable t{{"alpha", "beta", "trial", "ratio", "majorant"}};
  double worst = 0.0;
  for (double a : cfg.list("alphas", {1.0, 2.0, 5.0, 10.0, 20.0}))
    for (double b : {0.0, 1.5}) {
      const JacobiParams p(a, b);
      // dmu_{a,b} / sin^2(t/2) = dmu_{a-1,b}, so this rule is exact for |alpha T f|^2
      const auto rule = theta_rule(JacobiParams(a - 1.0, b), N + 4);
      const double maj = t_operator_l2_majorant(p, N);
      for (int trial = 0; trial < cfg.integer("trials", 50); ++trial) {
        Spectrum s{p, std::vector<double>(N + 1)};
        double nf = 0.0;
        for (auto& c : s.coeffs) {
          c = N01(rng);
          nf += c * c;
        }
        double nt = 0.0;
        for (int k = 0; k < rule.order; ++k) {
          const double v = a * t_operator(s, mp, rule.nodes[k]) * std::sin(0.5 * rule.nodes[k]);
          nt += rule.weights[k] * v * v;
        }
        const double ratio = std::sqrt(nt / nf);
        worst = std::max(worst, ratio);
        t.add(a, b, trial, ratio, maj);
        r.expect(ratio <= bound, "alpha T ratio " + fmt(ratio) + " > " + fmt(bound) + " at " + pstr(p));
      }
    }
  r.note("t-uniformity: max ratio " + fmt(worst) + " (constant " + fmt(bound) + ")");
  r.tables.emplace_back("t_uniformity", std::move(t));
  return r;
}

inline SuiteResult projective_suite(const RunConfig& cfg) {
  SuiteResult r{"projective"};
  const int l = cfg.integer("l", 2);
  const std::string kind = cfg.str("kind", "complex");
  ManifoldParams mp;
  if (kind == "complex")
    mp = ManifoldParams::complex_projective(l);
  else if (kind == "quaternionic")
    mp = ManifoldParams::quaternionic_projective(l);
  else if (kind == "cayley")
    mp = ManifoldParams::cayley_plane();
  else
    throw ConfigurationError("projective: kind must be complex, quaternionic or cayley");
  const JacobiParams base = mp.params();
  for (int n = 0; n <= 10; ++n) {
    const double want = std::pow(n + 0.5 * (mp.m + mp.d), 2);
    r.expect(std::abs(eigenvalue(n, base) - want) <= 1e-12 * want, "projective eigenvalue mismatch");
  }
  std::mt19937_64 rng(cfg.seed());
  const int J = cfg.integer("max_degree", 10), N = cfg.integer("radial_cap", 16);
  const double bound = cfg.num("pipeline_bound", 4.0);
  CsvTable t{{"trial", "p", "input_norm", "output_norm", "ratio"}};
  double worst = 0.0;
  for (int trial = 0; trial < cfg.integer("trials", 20); ++trial) {
    const auto f = random_projective_field(mp, J, N, rng);
    const auto out = projective_radial_pipeline(f);
    if (trial == 0) {
      // the j = 0 profile is plain R^{d-1,m}
      const auto c = radial_coefficients(f);
      Spectrum s{base, c[0]};
      for (auto& v : s.coeffs) v /= std::sqrt(mp.c_omega());
      double e = 0.0;
      for (std::size_t k = 0; k < f.theta.size(); ++k)
        e = std::max(e, std::abs(out.riesz_part.profiles[0][k] - riesz_transform(s, f.theta[k])));
      r.expect(e <= 1e-10, "j = 0 pipeline differs from R^{d-1,m}");
    }
    const double in = mixed_norm(f, 2.0), o = out.output_norm(2.0);
    worst = std::max(worst, o / in);
    t.add(trial, 2.0, in, o, o / in);
    r.expect(o / in <= bound, "projective pipeline ratio " + fmt(o / in));
  }
  r.note("projective (" + kind + ", l=" + std::to_string(l) + "): max L2 ratio " + fmt(worst));
  r.tables.emplace_back("pipeline", std::move(t));
  r.absorb(t_uniformity(cfg));
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"orthonormality", "eigen",  "identities", "lemma0",  "ball-measure", "kernel-growth",
                                          "kernel-smooth",  "t-kernel", "weights",  "rdf",     "sphere",       "projective"};
  return n;
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "orthonormality") return orthonormality(cfg);
  if (name == "eigen") return eigen(cfg);
  if (name == "identities") return identities(cfg);
  if (name == "lemma0") return lemma0(cfg);
  if (name == "ball-measure") return ball_measure_suite(cfg);
  if (name == "kernel-growth") return kernel_sweeps(cfg, SweepKind::Growth);
  if (name == "kernel-smooth") return kernel_sweeps(cfg, SweepKind::Smooth);
  if (name == "t-kernel") return t_kernel(cfg);
  if (name == "weights") return weights_suite(cfg);
  if (name == "rdf") return rdf_suite(cfg);
  if (name == "sphere") return sphere_suite(cfg);
  if (name == "projective") return projective_suite(cfg);
  throw ConfigurationError("unknown suite: " + name);
}

}  // namespace suites
}  // namespace jacobi_riesz
