#pragma once

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "corner_integral.hpp"
#include "errors.hpp"
#include "jacobi_transforms.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace jacobi_riesz {

struct IntegrandGeometry {
  double u = 1.0;
  double v = 1.0;
  double theta = 0.0;
  double varphi = 0.0;

  double z() const {
    return u * std::sin(0.5 * theta) * std::sin(0.5 * varphi) + v * std::cos(0.5 * theta) * std::cos(0.5 * varphi);
  }
  double one_minus_z() const {
    const double s = std::sin(0.25 * (theta - varphi));
    return 2.0 * s * s + (1.0 - u) * std::sin(0.5 * theta) * std::sin(0.5 * varphi) +
           (1.0 - v) * std::cos(0.5 * theta) * std::cos(0.5 * varphi);
  }
};

/// d/dtheta of (1 - z).
inline double dz_dtheta(const IntegrandGeometry& g) {
  const double ht = 0.5 * g.theta, hp = 0.5 * g.varphi;
  return 0.5 * std::sin(0.5 * (g.theta - g.varphi)) + 0.5 * (1.0 - g.u) * std::cos(ht) * std::sin(hp) -
         0.5 * (1.0 - g.v) * std::sin(ht) * std::cos(hp);
}

/// d/dvarphi of (1 - z).
inline double dz_dvarphi(const IntegrandGeometry& g) {
  const double ht = 0.5 * g.theta, hp = 0.5 * g.varphi;
  return -0.5 * std::sin(0.5 * (g.theta - g.varphi)) + 0.5 * (1.0 - g.u) * std::sin(ht) * std::cos(hp) -
         0.5 * (1.0 - g.v) * std::cos(ht) * std::sin(hp);
}

struct KernelOptions {
  double rel_tol = 1e-10;
  int max_panels = 4000;
  int tensor_order = 24;  // first tensor Gauss-Jacobi order tried, 0 for the corner engine only
  int tensor_order_max = 192;
};

/// Riesz kernel, time-integrated Poisson kernel and their gradients at one point,
/// all multiplied by exp(log_weight).
struct KernelBundle {
  double riesz = 0.0;
  double riesz_dtheta = 0.0;
  double riesz_dvarphi = 0.0;
  double time_integrated = 0.0;
  double time_integrated_dtheta = 0.0;
  double time_integrated_dvarphi = 0.0;
  double rel_error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline void check_off_diagonal(double theta, double varphi, const char* op) {
  check_open_theta(theta, op);
  check_open_theta(varphi, op);
  if (theta == varphi) throw DiagonalError(std::string(op) + ": theta == varphi");
}

// log of Gamma(A+B+2)/(pi 2^{A+B} Gamma(A+1/2) Gamma(B+1/2))
inline double log_riesz_prefactor(const JacobiParams& p) {
  return gamma_ln(p.alpha + p.beta + 2.0) - std::log(pi) - (p.alpha + p.beta) * std::log(2.0) -
         gamma_ln(p.alpha + 0.5) - gamma_ln(p.beta + 0.5);
}

}  // namespace detail

inline KernelBundle evaluate_kernel_bundle(const JacobiParams& p, double theta, double varphi,
                                           const KernelOptions& opt = {}, double log_weight = 0.0) {
  detail::check_off_diagonal(theta, varphi, "kernel");
  p.require_kernel_range("kernel");
  const double st = std::sin(0.5 * theta), ct = std::cos(0.5 * theta);
  const double sp = std::sin(0.5 * varphi), cp = std::cos(0.5 * varphi);
  const double dl = std::sin(0.25 * (theta - varphi));
  const double half_diff = 0.5 * std::sin(0.5 * (theta - varphi));
  const double S = p.alpha + p.beta + 2.0;
  CornerProblem pr{p.alpha, p.beta, 2.0 * dl * dl, st * sp, ct * cp, S};
  auto g = [&](const CornerPoint& c) {
    const double d1 = half_diff + 0.5 * c.x * ct * sp - 0.5 * c.y * st * cp;
    const double d2 = -half_diff + 0.5 * c.x * st * cp - 0.5 * c.y * ct * sp;
    const double z = c.u * st * sp + c.v * ct * cp;
    const double dpt = -0.25 * (c.u * ct * cp + c.v * st * sp);
    return Vec<5>{d1, 0.25 * z - S * d1 * d1 / c.q, dpt - S * d1 * d2 / c.q, c.q, d2};
  };
  // Away from the diagonal the integrand is smooth enough for a tensor Gauss-Jacobi
  // rule; two orders are compared and the corner engine is the fallback.
  CornerResult<5> r;
  bool done = false;
  if (opt.tensor_order > 0) {
    const double lq0 = std::log(pr.kappa);
    auto tensor = [&](int order, Vec<5>& val, Vec<5>& l1) {
      const auto& ru = gauss_jacobi_cached(order, p.alpha - 0.5, p.alpha - 0.5);
      const auto& rv = gauss_jacobi_cached(order, p.beta - 0.5, p.beta - 0.5);
      val = {};
      l1 = {};
      for (int i = 0; i < order; ++i) {
        const double x = 1.0 - ru.nodes[i];
        for (int k = 0; k < order; ++k) {
          const double y = 1.0 - rv.nodes[k];
          const double q = pr.kappa + pr.s1 * x + pr.c1 * y;
          const double w = ru.weights[i] * rv.weights[k] * std::exp(-S * (std::log(q) - lq0));
          const auto gv = g(CornerPoint{ru.nodes[i], rv.nodes[k], x, y, q});
          for (std::size_t c = 0; c < 5; ++c) {
            val[c] += w * gv[c];
            l1[c] += w * std::abs(gv[c]);
          }
        }
      }
      r.evaluations += static_cast<long>(order) * order;
    };
    Vec<5> lo_v, lo_a, hi_v, hi_a;
    tensor(opt.tensor_order, lo_v, lo_a);
    for (int order = 2 * opt.tensor_order; order <= opt.tensor_order_max && !done; order *= 2) {
      tensor(order, hi_v, hi_a);
      double rel = 0.0;
      for (std::size_t c = 0; c < 5; ++c) rel = std::max(rel, std::abs(hi_v[c] - lo_v[c]) / hi_a[c]);
      if (std::isfinite(rel) && rel <= opt.rel_tol) {
        r.scaled = hi_v;
        r.abs_scaled = hi_a;
        r.log_scale = -S * lq0;
        r.rel_error = rel;
        r.converged = true;
        done = true;
      }
      lo_v = hi_v;
    }
  }
  if (!done) {
    AdaptiveOptions ao;
    ao.rel_tol = opt.rel_tol;
    ao.max_panels = opt.max_panels;
    const long pre = r.evaluations;
    r = integrate_corner<5>(pr, g, ao);
    r.evaluations += pre;
  }
  if (!r.converged)
    throw AccuracyError("kernel quadrature did not converge at theta=" + std::to_string(theta) +
                            " varphi=" + std::to_string(varphi) + " alpha=" + std::to_string(p.alpha) +
                            " beta=" + std::to_string(p.beta),
                        r.scaled[0], r.rel_error);
  const double lk = detail::log_riesz_prefactor(p) + r.log_scale + log_weight;
  const double ck = std::exp(lk);
  const double ctime = std::exp(lk - std::log(S - 1.0));
  KernelBundle b;
  b.riesz = -ck * r.scaled[0];
  b.riesz_dtheta = -ck * r.scaled[1];
  b.riesz_dvarphi = -ck * r.scaled[2];
  b.time_integrated = ctime * r.scaled[3];
  b.time_integrated_dtheta = b.riesz;
  b.time_integrated_dvarphi = -ck * r.scaled[4];
  b.rel_error = r.rel_error;
  b.evaluations = r.evaluations;
  return b;
}

inline double riesz_kernel(const JacobiParams& p, double theta, double varphi, const KernelOptions& opt = {}) {
  return evaluate_kernel_bundle(p, theta, varphi, opt).riesz;
}

struct Gradient {
  double d_theta = 0.0;
  double d_varphi = 0.0;
};

inline Gradient riesz_kernel_gradient(const JacobiParams& p, double theta, double varphi,
                                      const KernelOptions& opt = {}) {
  const auto b = evaluate_kernel_bundle(p, theta, varphi, opt);
  return {b.riesz_dtheta, b.riesz_dvarphi};
}

/// Closed form of the Poisson kernel integrated over t in (0, infinity).
inline double time_integrated_kernel(const JacobiParams& p, double theta, double varphi,
                                     const KernelOptions& opt = {}) {
  return evaluate_kernel_bundle(p, theta, varphi, opt).time_integrated;
}

inline double t_kernel(const JacobiParams& p, const ManifoldParams& mp, double theta, double varphi,
                       const KernelOptions& opt = {}) {
  return mp.sqrt_rho(theta) * time_integrated_kernel(p, theta, varphi, opt);
}

inline Gradient t_kernel_gradient(const JacobiParams& p, const ManifoldParams& mp, double theta, double varphi,
                                  const KernelOptions& opt = {}) {
  const auto b = evaluate_kernel_bundle(p, theta, varphi, opt);
  return {mp.dsqrt_rho(theta) * b.time_integrated + mp.sqrt_rho(theta) * b.time_integrated_dtheta,
          mp.sqrt_rho(theta) * b.time_integrated_dvarphi};
}

struct TimeIntegral {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail = 0.0;  // series value of the integral over (T, infinity)
};

/// Integrates poisson_integral over t in (0, T] numerically and adds the exact series tail.
inline TimeIntegral time_integrated_numeric(const JacobiParams& p, double theta, double varphi, double T = 40.0,
                                            double rel_tol = 1e-10) {
  detail::check_off_diagonal(theta, varphi, "time_integrated_numeric");
  auto f = [&](double t) { return t <= 0.0 ? 0.0 : poisson_integral(t, theta, varphi, p); };
  std::vector<double> br{0.0};
  for (double b : {0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0})
    if (b < T) br.push_back(b);
  br.push_back(T);
  AdaptiveOptions ao;
  ao.rel_tol = rel_tol;
  const auto r = integrate_adaptive_scalar(f, br, ao);
  TimeIntegral out;
  out.quadrature_error = r.error[0];
  const int N = 200;
  const auto a = trig_poly_sequence(N, p, theta);
  const auto b = trig_poly_sequence(N, p, varphi);
  const double h = p.half_sum();
  for (int n = 0; n <= N; ++n) out.tail += std::exp(-T * (n + h)) / (n + h) * a[n] * b[n];
  out.value = r.value[0] + out.tail;
  return out;
}

// ---------------------------------------------------------------------------
// Ball measures

/// mu_{alpha,beta} of the interval (a, b) within [0, pi].
inline double interval_measure(const JacobiParams& p, double a, double b) {
  a = std::max(a, 0.0);
  b = std::min(b, pi);
  if (!(b > a)) return 0.0;
  const double gap = std::min(a, pi - b);
  if (a > 0.0 && b < pi && (b - a) < 0.5 * gap) {
    const auto& r = gauss_jacobi_cached(20, 0.0, 0.0);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < r.order; ++i) s += r.weights[i] * std::exp(log_measure_density(p, c + h * r.nodes[i]));
    return s * h;
  }
  // w = sin^2(t/2) turns the measure into w^alpha (1-w)^beta dw
  const double A = p.alpha + 1.0, B = p.beta + 1.0;
  const double wa = std::pow(std::sin(0.5 * a), 2), wb = std::pow(std::sin(0.5 * b), 2);
  const double ca = std::pow(std::cos(0.5 * a), 2), cb = std::pow(std::cos(0.5 * b), 2);
  if (wa < 0.5) {
    const double lo = a == 0.0 ? 0.0 : boost::math::beta(A, B, wa);
    if (wb <= 0.5) return boost::math::beta(A, B, wb) - lo;
    return boost::math::beta(A, B) - boost::math::betac(A, B, wb) - lo;
  }
  // both endpoints in the upper half: integrate from the pi side through the complement variable
  const double hi = b == pi ? 0.0 : boost::math::beta(B, A, cb);
  return boost::math::beta(B, A, ca) - hi;
}

struct BallMeasure {
  double exact = 0.0;
  double surrogate = 0.0;
};

inline BallMeasure ball_measure(const JacobiParams& p, double theta, double varphi) {
  const double r = std::abs(theta - varphi);
  if (r == 0.0) return {0.0, 0.0};
  BallMeasure m;
  m.exact = interval_measure(p, theta - r, theta + r);
  m.surrogate = r * std::pow(theta + varphi, 2.0 * p.alpha + 1.0) * std::pow(2.0 * pi - theta - varphi, 2.0 * p.beta + 1.0);
  return m;
}

// ---------------------------------------------------------------------------
// Sweeps

// T modes use cfg.manifold's rho; the _sphere variants use rho = 1/sin^2 instead
enum class SweepMode { RieszGrowth, RieszSmooth, TGrowth, TSmooth, TGrowthSphere, TSmoothSphere };

inline const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::RieszGrowth: return "riesz_growth";
    case SweepMode::RieszSmooth: return "riesz_smooth";
    case SweepMode::TGrowth: return "t_growth";
    case SweepMode::TSmooth: return "t_smooth";
    case SweepMode::TGrowthSphere: return "t_growth_sphere";
    case SweepMode::TSmoothSphere: return "t_smooth_sphere";
  }
  return "?";
}

inline bool is_t_mode(SweepMode m) { return m != SweepMode::RieszGrowth && m != SweepMode::RieszSmooth; }
inline bool is_smooth_mode(SweepMode m) {
  return m == SweepMode::RieszSmooth || m == SweepMode::TSmooth || m == SweepMode::TSmoothSphere;
}

inline SweepMode parse_mode(const std::string& s) {
  for (auto m : {SweepMode::RieszGrowth, SweepMode::RieszSmooth, SweepMode::TGrowth, SweepMode::TSmooth,
                 SweepMode::TGrowthSphere, SweepMode::TSmoothSphere})
    if (s == mode_name(m)) return m;
  throw ConfigurationError("unknown sweep mode: " + s);
}

struct KernelPoint {
  double theta = 0.0;
  double varphi = 0.0;
  double kernel_value = 0.0;  // kernel or gradient magnitude
  double ball_measure = 0.0;
  double bound_rhs = 0.0;     // 1/mu(B) or 1/(|theta-varphi| mu(B))
  double ratio = 0.0;
};

struct SweepRow {
  int j = 0;
  SweepMode mode = SweepMode::RieszGrowth;
  KernelPoint point;
};

struct SweepSummaryRow {
  int j = 0;
  SweepMode mode = SweepMode::RieszGrowth;
  double sup_ratio = 0.0;
};

struct ModeStatistics {
  SweepMode mode = SweepMode::RieszGrowth;
  double max_sup = 0.0;
  double median_sup = 0.0;
  double max_over_median = 0.0;
};

struct SweepConfig {
  double a = 1.0;
  double b = 1.0;
  int J = 20;
  JacobiParams base{};
  int grid_size = 40;
  double eps = 0.05;
  std::vector<SweepMode> modes{SweepMode::RieszGrowth, SweepMode::RieszSmooth};
  ManifoldParams manifold = ManifoldParams::complex_projective(2);  // only rho is used
  int t_j_min = 1;  // the j factor vanishes at j = 0
  KernelOptions kernel{1e-8};
  unsigned threads = 0;  // 0 means thread_count()
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<SweepSummaryRow> summary;
  std::vector<ModeStatistics> stats;
  double global_sup = 0.0;
};

/// Cell-centred grid (i + 1/2) pi / n.
inline std::vector<double> centered_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = (i + 0.5) * pi / n;
  return g;
}

inline std::vector<std::pair<double, double>> off_diagonal_pairs(const std::vector<double>& grid, double eps) {
  std::vector<std::pair<double, double>> out;
  for (double t : grid)
    for (double f : grid)
      if (std::abs(t - f) >= eps) out.emplace_back(t, f);
  return out;
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline SweepReport weighted_kernel_sweep(const SweepConfig& cfg) {
  if (cfg.J < 0) throw DomainError("weighted_kernel_sweep: J must be nonnegative");
  if (!(cfg.eps > 0.0)) throw DomainError("weighted_kernel_sweep: eps must be positive");
  cfg.base.require_kernel_range("weighted_kernel_sweep");
  const OffsetScheme scheme0(cfg.a, cfg.b, 0);
  const auto pairs = off_diagonal_pairs(centered_grid(cfg.grid_size), cfg.eps);
  if (pairs.empty()) throw DomainError("weighted_kernel_sweep: empty off-diagonal grid");
  std::vector<BallMeasure> balls(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) balls[i] = ball_measure(cfg.base, pairs[i].first, pairs[i].second);

  const int nj = cfg.J + 1;
  const std::size_t np = pairs.size();
  const std::size_t nm = cfg.modes.size();
  std::vector<double> values(static_cast<std::size_t>(nj) * np * nm, 0.0);
  std::vector<char> present(values.size(), 0);
  parallel_for(
      static_cast<std::size_t>(nj) * np,
      [&](std::size_t task) {
        const int j = static_cast<int>(task / np);
        const std::size_t ip = task % np;
        const auto [th, ph] = pairs[ip];
        const OffsetScheme sc = scheme0.with_j(j);
        const JacobiParams shifted = sc.shift(cfg.base);
        bool need_any = false;
        for (auto m : cfg.modes)
          if (!is_t_mode(m) || j >= cfg.t_j_min) need_any = true;
        if (!need_any) return;
        KernelBundle kb;
        try {
          kb = evaluate_kernel_bundle(shifted, th, ph, cfg.kernel, sc.log_weight(th) + sc.log_weight(ph));
        } catch (const AccuracyError& e) {
          throw AccuracyError(std::string(e.what()) + " (j=" + std::to_string(j) + ")", e.estimate(), e.error());
        }
        const double lt = sc.dlog_weight(th), lp = sc.dlog_weight(ph);
        const ManifoldParams sphere_rho = ManifoldParams::sphere(2);
        const double sr = cfg.manifold.sqrt_rho(th), dsr = cfg.manifold.dsqrt_rho(th);
        const double sr2 = sphere_rho.sqrt_rho(th), dsr2 = sphere_rho.dsqrt_rho(th);
        for (std::size_t im = 0; im < nm; ++im) {
          const SweepMode m = cfg.modes[im];
          if (is_t_mode(m) && j < cfg.t_j_min) continue;
          double val = 0.0;
          switch (m) {
            case SweepMode::RieszGrowth: val = std::abs(kb.riesz); break;
            case SweepMode::RieszSmooth:
              val = std::hypot(kb.riesz_dtheta + lt * kb.riesz, kb.riesz_dvarphi + lp * kb.riesz);
              break;
            case SweepMode::TGrowth: val = j * sr * std::abs(kb.time_integrated); break;
            case SweepMode::TSmooth:
              val = j * std::hypot(dsr * kb.time_integrated + sr * (kb.time_integrated_dtheta + lt * kb.time_integrated),
                                   sr * (kb.time_integrated_dvarphi + lp * kb.time_integrated));
              break;
            case SweepMode::TGrowthSphere: val = j * sr2 * std::abs(kb.time_integrated); break;
            case SweepMode::TSmoothSphere:
              val = j * std::hypot(dsr2 * kb.time_integrated + sr2 * (kb.time_integrated_dtheta + lt * kb.time_integrated),
                                   sr2 * (kb.time_integrated_dvarphi + lp * kb.time_integrated));
              break;
          }
          const std::size_t slot = (task * nm) + im;
          values[slot] = val;
          present[slot] = 1;
        }
      },
      cfg.threads == 0 ? thread_count() : cfg.threads);

  SweepReport rep;
  std::vector<std::vector<double>> sup(nm, std::vector<double>(nj, -1.0));
  for (int j = 0; j < nj; ++j)
    for (std::size_t ip = 0; ip < np; ++ip)
      for (std::size_t im = 0; im < nm; ++im) {
        const std::size_t slot = ((static_cast<std::size_t>(j) * np + ip) * nm) + im;
        if (!present[slot]) continue;
        const SweepMode m = cfg.modes[im];
        const bool smooth = is_smooth_mode(m);
        const auto [th, ph] = pairs[ip];
        KernelPoint kp;
        kp.theta = th;
        kp.varphi = ph;
        kp.kernel_value = values[slot];
        kp.ball_measure = balls[ip].exact;
        const double denom = smooth ? std::abs(th - ph) * kp.ball_measure : kp.ball_measure;
        kp.bound_rhs = 1.0 / denom;
        kp.ratio = kp.kernel_value * denom;
        rep.rows.push_back({j, m, kp});
        sup[im][j] = std::max(sup[im][j], kp.ratio);
      }
  for (std::size_t im = 0; im < nm; ++im) {
    std::vector<double> s;
    for (int j = 0; j < nj; ++j)
      if (sup[im][j] >= 0.0) {
        rep.summary.push_back({j, cfg.modes[im], sup[im][j]});
        s.push_back(sup[im][j]);
      }
    ModeStatistics st;
    st.mode = cfg.modes[im];
    if (!s.empty()) {
      st.max_sup = *std::max_element(s.begin(), s.end());
      st.median_sup = median_of(s);
      st.max_over_median = st.median_sup > 0.0 ? st.max_sup / st.median_sup : 0.0;
    }
    rep.global_sup = std::max(rep.global_sup, st.max_sup);
    rep.stats.push_back(st);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Auxiliary inequalities

struct Lemma0Result {
  double integral = 0.0;
  double bound = 0.0;
  bool constant_known = true;  // false when d == 0: bound uses C = 1
  double quadrature_error = 0.0;
};

inline Lemma0Result lemma0_check(double c, double d, double lambda, double A, double B) {
  if (!(c > -0.5)) throw DomainError("lemma0_check: c must exceed -1/2");
  if (!(d >= 0.0)) throw DomainError("lemma0_check: d must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("lemma0_check: lambda must be positive");
  if (!(B > 0.0 && B < A)) throw DomainError("lemma0_check: need 0 < B < A");
  const double e1 = c + d - 0.5;           // exponent of (1-s)
  const double e2 = c + d + lambda + 0.5;  // exponent of (A - B s)
  const double r = B / (A - B);
  // with 1-s = e^{-tau}: integrand (A-B)^{-e2} e^{-(e1+1) tau} (1 + r e^{-tau})^{-e2}
  auto lg = [&](double tau) { return -(e1 + 1.0) * tau - e2 * std::log1p(r * std::exp(-tau)); };
  const double ts = std::max(0.0, std::log(r * lambda / (e1 + 1.0)));
  const double top = lg(ts);
  const double T = ts + 40.0 + 60.0 / (e1 + 1.0);
  std::vector<double> br{0.0};
  for (double k : {-10.0, -3.0, 0.0, 3.0, 10.0})
    if (ts + k > 0.0) br.push_back(ts + k);
  br.push_back(T);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  AdaptiveOptions ao;
  ao.rel_tol = 1e-12;
  const auto res = integrate_adaptive_scalar([&](double tau) { return std::exp(lg(tau) - top); }, br, ao);
  const double tail = std::exp(-(e1 + 1.0) * T - top) / (e1 + 1.0);
  Lemma0Result out;
  const double lscale = top - e2 * std::log(A - B);
  out.integral = res.value[0] * std::exp(lscale);
  out.quadrature_error = (res.error[0] + tail) * std::exp(lscale);
  double lc = 0.0;
  if (d > 0.0)
    lc = gamma_ln(d) + gamma_ln(lambda) - gamma_ln(d + lambda);
  else
    out.constant_known = false;
  out.bound = std::exp(lc - (c + 0.5) * std::log(A) - (d > 0.0 ? d * std::log(B) : 0.0) - lambda * std::log(A - B));
  return out;
}

struct Comparability {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

struct AuxReport {
  bool h_bound_holds = true;
  double h_worst_ratio = 0.0;        // max over grids of lhs / bound
  double identity_max_residual = 0.0;
  Comparability cos_cos;             // 1 - cos cos  vs theta^2 + varphi^2
  Comparability sin_sin;             // 1 - sin sin  vs (pi-theta)^2 + (pi-varphi)^2
  Comparability difference;          // 2 sin^2((theta-varphi)/4) vs (theta-varphi)^2
};

inline AuxReport aux_inequalities_check(int grid = 200) {
  AuxReport rep;
  for (double eta : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
    for (double gam : {0.5, 0.75, 1.0, 2.0, 5.0}) {
      const double bound = std::pow(eta / (eta + gam - 0.5), eta);
      for (int i = 1; i < 2000; ++i) {
        const double r = i / 2000.0;
        const double lhs = std::pow(1.0 - r, eta) * std::pow(r, gam - 0.5);
        rep.h_worst_ratio = std::max(rep.h_worst_ratio, lhs / bound);
        if (lhs > bound * (1.0 + 1e-14)) rep.h_bound_holds = false;
      }
    }
  rep.cos_cos = {1e300, 0.0};
  rep.sin_sin = {1e300, 0.0};
  rep.difference = {1e300, 0.0};
  auto upd = [](Comparability& c, double v) {
    c.min_ratio = std::min(c.min_ratio, v);
    c.max_ratio = std::max(c.max_ratio, v);
  };
  for (int i = 1; i < grid; ++i)
    for (int k = 1; k < grid; ++k) {
      const double t = pi * i / grid, f = pi * k / grid;
      const double cc = std::cos(0.5 * t) * std::cos(0.5 * f), ss = std::sin(0.5 * t) * std::sin(0.5 * f);
      const double sm = std::sin(0.25 * (t - f)), sp = std::sin(0.25 * (t + f)), cpp = std::cos(0.25 * (t + f));
      const double r1 = std::abs((1.0 - cc) - (sm * sm + sp * sp));
      const double r2 = std::abs((1.0 - ss) - (sm * sm + cpp * cpp));
      const double r3a = std::abs((1.0 - cc - ss) - (1.0 - std::cos(0.5 * (t - f))));
      const double r3b = std::abs((1.0 - std::cos(0.5 * (t - f))) - 2.0 * sm * sm);
      rep.identity_max_residual = std::max({rep.identity_max_residual, r1, r2, r3a, r3b});
      upd(rep.cos_cos, (1.0 - cc) / (t * t + f * f));
      upd(rep.sin_sin, (1.0 - ss) / ((pi - t) * (pi - t) + (pi - f) * (pi - f)));
      if (i != k) upd(rep.difference, 2.0 * sm * sm / ((t - f) * (t - f)));
    }
  return rep;
}

struct JacobiIdentityResidual {
  double identity = 0.0;  // relative to the sum of term magnitudes
  double identity_abs = 0.0;
  double a_n = 0.0;       // |d_n^{a-1,b} - A_n d_n^{a,b}| / d_n^{a-1,b}
  double b_n = 0.0;       // |d_{n-1}^{a+1,b} - B_n d_n^{a,b}| / d_{n-1}^{a+1,b}
  double l2_form = 0.0;   // residual of the normalised theta form, when x in (-1,1)
};

inline double identity_a_n(int n, const JacobiParams& p) {
  if (n == 0) return std::sqrt(p.alpha / (p.alpha + p.beta + 1.0));
  const double s = 2.0 * n + p.alpha + p.beta;
  return std::sqrt(s / (s + 1.0) * (n + p.alpha) / (n + p.alpha + p.beta));
}

inline double identity_b_n(int n, const JacobiParams& p) {
  const double s = 2.0 * n + p.alpha + p.beta;
  return std::sqrt(s / (s + 1.0) * (n + p.beta) / n);
}

inline JacobiIdentityResidual jacobi_identity_check(int n, const JacobiParams& p, double x) {
  if (n < 1) throw DomainError("jacobi_identity_check: n must be >= 1");
  if (!(p.alpha > 0.0)) throw DomainError("jacobi_identity_check: alpha must be positive");
  if (!(std::abs(x) <= 1.0)) throw DomainError("jacobi_identity_check: |x| > 1");
  const JacobiParams pm(p.alpha - 1.0, p.beta), pp(p.alpha + 1.0, p.beta);
  const double t1 = p.alpha * jacobi_poly(n, p, x);
  const double t2 = (n + p.alpha) * jacobi_poly(n, pm, x);
  const double t3 = 0.5 * (n + p.beta) * (1.0 - x) * jacobi_poly(n - 1, pp, x);
  JacobiIdentityResidual r;
  r.identity_abs = std::abs(t1 - t2 - t3);
  r.identity = r.identity_abs / std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3));
  const double An = identity_a_n(n, p), Bn = identity_b_n(n, p);
  const double dm = normalizer(n, pm), d0 = normalizer(n, p), dp = normalizer(n - 1, pp);
  r.a_n = std::abs(dm - An * d0) / dm;
  r.b_n = std::abs(dp - Bn * d0) / dp;
  if (std::abs(x) < 1.0) {
    const double th = std::acos(x);
    const double sh = std::sin(0.5 * th);
    const double lhs = p.alpha / sh * trig_poly(n, p, th);
    const double a = (n + p.alpha) / An / sh * trig_poly(n, pm, th);
    const double b = (n + p.beta) / Bn * sh * trig_poly(n - 1, pp, th);
    r.l2_form = std::abs(lhs - a - b) / std::max(1.0, std::abs(lhs) + std::abs(a) + std::abs(b));
  }
  return r;
}

/// Majorant of ||alpha T f|| / ||f|| from the A_n / B_n splitting, sup over n <= N.
inline double t_operator_l2_majorant(const JacobiParams& p, int N) {
  double s1 = 0.0, s2 = 0.0;
  const double h = p.half_sum();
  for (int n = 0; n <= N; ++n) {
    s1 = std::max(s1, (n + p.alpha) / ((n + h) * identity_a_n(n, p)));
    if (n >= 1) s2 = std::max(s2, (n + p.beta) / ((n + h) * identity_b_n(n, p)));
  }
  return s1 + s2;
}

}  // namespace jacobi_riesz
