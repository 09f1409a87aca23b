#pragma once

// Discrete maximal function, A_p constants and the Rubio de Francia iteration
// for the measure dmu_{alpha,beta} on (0, pi).
// Functions are piecewise constant on cells; the value of a cell is its mu-average.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernel_lab.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace jacobi_riesz {

struct GridFunction {
  JacobiParams params{};
  std::vector<double> edges;   // n+1 increasing points in [0, pi]
  std::vector<double> theta;   // cell midpoints
  std::vector<double> masses;  // mu(cell)
  std::vector<double> values;

  std::size_t size() const { return values.size(); }

  static GridFunction on_edges(const JacobiParams& p, std::vector<double> edges) {
    if (edges.size() < 2) throw DomainError("GridFunction: empty grid");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (!(edges[i + 1] > edges[i])) throw DomainError("GridFunction: edges must increase");
    if (edges.front() < 0.0 || edges.back() > pi) throw DomainError("GridFunction: edges outside [0, pi]");
    GridFunction g;
    g.params = p;
    g.edges = std::move(edges);
    const std::size_t n = g.edges.size() - 1;
    g.theta.resize(n);
    g.masses.resize(n);
    g.values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      g.theta[i] = 0.5 * (g.edges[i] + g.edges[i + 1]);
      g.masses[i] = interval_measure(p, g.edges[i], g.edges[i + 1]);
    }
    return g;
  }

  static GridFunction uniform(const JacobiParams& p, int n) {
    if (n < 1) throw DomainError("GridFunction: empty grid");
    std::vector<double> e(n + 1);
    for (int i = 0; i <= n; ++i) e[i] = pi * i / n;
    e[n] = pi;
    return on_edges(p, std::move(e));
  }

  // values are mu-averages of f over each cell; f may be integrably singular at 0 and pi
  static GridFunction from_function(const JacobiParams& p, int n, const std::function<double(double)>& f);

  // values are f at the cell midpoints
  static GridFunction sampled(const JacobiParams& p, int n, const std::function<double(double)>& f) {
    auto g = uniform(p, n);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = f(g.theta[i]);
    return g;
  }

  GridFunction with_values(std::vector<double> v) const {
    if (v.size() != size()) throw ShapeError("GridFunction: value count does not match the grid");
    GridFunction g = *this;
    g.values = std::move(v);
    return g;
  }

  bool same_grid(const GridFunction& o) const { return params == o.params && edges == o.edges; }
};

namespace detail {

// integral of f dmu over the cell [a, b]; end cells go through theta = h e^{-s} to tame the endpoint
inline double cell_integral(const JacobiParams& p, double a, double b, const std::function<double(double)>& f) {
  AdaptiveOptions ao;
  ao.rel_tol = 1e-12;
  ao.max_panels = 4000;
  auto dens = [&](double t) { return std::exp(log_measure_density(p, t)); };
  // stop at a distance 1e-150 from the endpoint: singular weights overflow beyond it,
  // and the dropped piece is below 1e-15 relative for exponents above -1.9
  const double smax = std::log((b - a) / 1e-150);
  std::vector<double> sb{0.0};
  for (double s = 0.5; s < smax; s *= 2.0) sb.push_back(s);
  sb.push_back(smax);
  if (a == 0.0 && b == pi) {
    const double m = 0.5 * pi;
    return cell_integral(p, 0.0, m, f) + cell_integral(p, m, pi, f);
  }
  if (a == 0.0) {
    const double h = b;
    auto g = [&](double s) {
      const double t = h * std::exp(-s);
      return t > 0.0 ? f(t) * dens(t) * t : 0.0;
    };
    return integrate_adaptive_scalar(g, sb, ao).value[0];
  }
  if (b == pi) {
    const double h = pi - a;
    auto g = [&](double s) {
      const double e = h * std::exp(-s);
      const double t = pi - e;
      return e > 0.0 && t < pi ? f(t) * dens(t) * e : 0.0;
    };
    return integrate_adaptive_scalar(g, sb, ao).value[0];
  }
  auto g = [&](double t) { return f(t) * dens(t); };
  return integrate_adaptive_scalar(g, {a, b}, ao).value[0];
}

}  // namespace detail

inline GridFunction GridFunction::from_function(const JacobiParams& p, int n, const std::function<double(double)>& f) {
  auto g = uniform(p, n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = detail::cell_integral(p, g.edges[i], g.edges[i + 1], f) / g.masses[i];
    if (!std::isfinite(v)) throw DomainError("GridFunction::from_function: non-finite cell average");
    g.values[i] = v;
  }
  return g;
}

/// (sum |f|^p mu(cell))^{1/p}
inline double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f.values[i]), p) * f.masses[i];
  return std::pow(s, 1.0 / p);
}

struct MaximalResult {
  GridFunction value;
  std::vector<std::size_t> left, right;  // maximizing interval [left, right] in cells, per cell
};

/// sup over grid-aligned intervals I containing the cell of mu(I)^{-1} int_I |f| dmu.
/// Each left end keeps a suffix maximum over right ends, so the sweep is O(n^2).
inline MaximalResult maximal_function_detailed(const GridFunction& f) {
  const std::size_t n = f.size();
  if (n == 0) throw DomainError("maximal_function: empty grid");
  std::vector<double> pm(n + 1, 0.0), pf(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pm[i + 1] = pm[i] + f.masses[i];
    pf[i + 1] = pf[i] + std::abs(f.values[i]) * f.masses[i];
  }
  MaximalResult r{f.with_values(std::vector<double>(n, -1.0)), std::vector<std::size_t>(n, 0),
                  std::vector<std::size_t>(n, 0)};
  std::vector<double> best(n);
  std::vector<std::size_t> arg(n);
  for (std::size_t a = 0; a < n; ++a) {
    // best[i] = max over b >= i of avg(a, b)
    for (std::size_t b = n; b-- > a;) {
      const double m = pm[b + 1] - pm[a];
      // single cells exactly, prefix differences lose bits on tiny end cells
      const double v = b == a ? std::abs(f.values[a]) : m > 0.0 ? (pf[b + 1] - pf[a]) / m : 0.0;
      if (b + 1 < n && best[b + 1] >= v) {
        best[b] = best[b + 1];
        arg[b] = arg[b + 1];
      } else {
        best[b] = v;
        arg[b] = b;
      }
    }
    for (std::size_t i = a; i < n; ++i)
      if (best[i] > r.value.values[i]) {
        r.value.values[i] = best[i];
        r.left[i] = a;
        r.right[i] = arg[i];
      }
  }
  return r;
}

inline GridFunction maximal_function(const GridFunction& f) { return maximal_function_detailed(f).value; }

struct MaximalNormEstimate {
  double p = 2.0;
  double norm = 0.0;        // best lower bound ||M g||_p / ||g||_p found
  double last_change = 0.0;  // relative change in the final iteration
  int iterations = 0;
  bool stabilized = false;
};

/// Power iteration for ||M||_{L^p(mu)} on the grid. M is linearized at the current
/// iterate (its maximizing intervals) and the dual step uses the mu-adjoint of that
/// averaging operator, in the manner of Boyd's method for matrix p-norms.
inline MaximalNormEstimate maximal_norm_estimate(const JacobiParams& params, int n, double p, int max_iter = 200,
                                                 double tol = 1e-3, const GridFunction* start = nullptr) {
  if (!(p > 1.0)) throw DomainError("maximal_norm_estimate: p must exceed 1");
  GridFunction g = start ? *start : GridFunction::uniform(params, n);
  if (!start) {
    // a bump at the left end is far from extremal, so the iteration has room to move
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = 1.0 / (1.0 + 10.0 * g.theta[i]);
  }
  const double q = p / (p - 1.0);
  MaximalNormEstimate est;
  est.p = p;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (auto& v : g.values) v = std::abs(v);
    const double ng = lp_norm(g, p);
    if (!(ng > 0.0)) throw DomainError("maximal_norm_estimate: zero start function");
    for (auto& v : g.values) v /= ng;
    const auto mr = maximal_function_detailed(g);
    const double ratio = lp_norm(mr.value, p);
    est.norm = std::max(est.norm, ratio);
    est.iterations = it;
    est.last_change = std::abs(ratio - prev) / ratio;
    if (it > 1 && est.last_change < tol) {
      est.stabilized = true;
      break;
    }
    prev = ratio;
    // dual vector h = (Mg)^{p-1}, then g <- (L* h)^{q-1}
    const std::size_t N = g.size();
    std::vector<double> pm(N + 1, 0.0);
    for (std::size_t i = 0; i < N; ++i) pm[i + 1] = pm[i] + g.masses[i];
    std::vector<double> diff(N + 1, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t a = mr.left[i], b = mr.right[i];
      const double c = std::pow(mr.value.values[i], p - 1.0) * g.masses[i] / (pm[b + 1] - pm[a]);
      diff[a] += c;
      diff[b + 1] -= c;
    }
    double run = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      run += diff[k];
      g.values[k] = std::pow(std::max(run, 0.0), q - 1.0);
    }
  }
  return est;
}

struct ApReport {
  double p = 2.0;
  double constant = 0.0;
  double worst_left = 0.0;  // worst interval (edges)
  double worst_right = 0.0;
};

/// sup over grid-aligned I of (avg_I w)(avg_I w^{-1/(p-1)})^{p-1}, averages against mu.
inline ApReport ap_constant(const GridFunction& w, double p, unsigned threads = thread_count()) {
  if (!(p > 1.0)) throw DomainError("ap_constant: p must exceed 1");
  const std::size_t n = w.size();
  if (n == 0) throw DomainError("ap_constant: empty grid");
  for (double v : w.values)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("ap_constant: weight must be positive and finite");
  const double s = 1.0 / (p - 1.0);
  std::vector<double> pm(n + 1, 0.0), pw(n + 1, 0.0), pd(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pm[i + 1] = pm[i] + w.masses[i];
    pw[i + 1] = pw[i] + w.values[i] * w.masses[i];
    pd[i + 1] = pd[i] + std::pow(w.values[i], -s) * w.masses[i];
  }
  std::vector<double> row_best(n, 0.0);
  std::vector<std::size_t> row_arg(n, 0);
  parallel_for(
      n,
      [&](std::size_t a) {
        for (std::size_t b = a; b < n; ++b) {
          const double m = pm[b + 1] - pm[a];
          if (!(m > 0.0)) continue;
          const double v = (pw[b + 1] - pw[a]) / m * std::pow((pd[b + 1] - pd[a]) / m, p - 1.0);
          if (v > row_best[a]) {
            row_best[a] = v;
            row_arg[a] = b;
          }
        }
      },
      threads);
  ApReport r;
  r.p = p;
  for (std::size_t a = 0; a < n; ++a)
    if (row_best[a] > r.constant) {
      r.constant = row_best[a];
      r.worst_left = w.edges[a];
      r.worst_right = w.edges[row_arg[a] + 1];
    }
  return r;
}

/// w(theta) = theta^gamma (pi - theta)^delta
inline std::function<double(double)> power_weight(double gamma, double delta) {
  return [gamma, delta](double t) { return std::pow(t, gamma) * std::pow(pi - t, delta); };
}

struct RdfResult {
  GridFunction weight;       // Rf
  double operator_norm = 0;  // N used in the series
  double norm_estimate = 0;  // power iteration value alone
  double tail_bound = 0;     // 2^{-K}: bound on the omitted series in units of ||f||_p
  GridFunction a1_slack;     // M^{K+1} f / (2N)^K, the pointwise excess allowed in M(Rf) <= 2N Rf
  int K = 0;
};

/// Rf = sum_{k=0}^{K} M^k f / (2N)^k. N is the power iteration estimate, raised to any
/// ratio ||M^{k+1} f|| / ||M^k f|| observed along the way, so ||Rf||_p <= 2 ||f||_p holds on the grid.
inline RdfResult rubio_de_francia_weight(const GridFunction& f, double p, int K = 30) {
  if (K < 1) throw DomainError("rubio_de_francia_weight: K must be >= 1");
  if (!(p > 1.0)) throw DomainError("rubio_de_francia_weight: p must exceed 1");
  for (double v : f.values)
    if (!(v >= 0.0)) throw DomainError("rubio_de_francia_weight: f must be nonnegative");
  std::vector<GridFunction> iter{f};
  for (int k = 1; k <= K + 1; ++k) iter.push_back(maximal_function(iter.back()));
  double N = maximal_norm_estimate(f.params, static_cast<int>(f.size()), p, 200, 1e-3, nullptr).norm;
  RdfResult r;
  r.norm_estimate = N;
  for (int k = 0; k <= K; ++k) {
    const double a = lp_norm(iter[k], p), b = lp_norm(iter[k + 1], p);
    if (a > 0.0) N = std::max(N, b / a);
  }
  N = std::max(N, 1.0);
  r.operator_norm = N;
  r.K = K;
  r.tail_bound = std::ldexp(1.0, -K);
  std::vector<double> v(f.size(), 0.0);
  double c = 1.0;
  for (int k = 0; k <= K; ++k) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * iter[k].values[i];
    c /= 2.0 * N;
  }
  r.weight = f.with_values(v);
  std::vector<double> slack(f.size());
  const double sc = std::pow(2.0 * N, -K);
  for (std::size_t i = 0; i < slack.size(); ++i) slack[i] = iter[K + 1].values[i] * sc;
  r.a1_slack = f.with_values(slack);
  return r;
}

struct RdfCheck {
  bool dominates = false;      // Rf >= f
  bool norm_ok = false;        // ||Rf||_p <= 2 ||f||_p + tol
  bool a1_ok = false;          // M(Rf) <= 2N Rf + slack + tol
  double norm_ratio = 0.0;     // ||Rf||_p / ||f||_p
  double a1_worst = 0.0;       // max of M(Rf) - 2N Rf - slack
};

inline RdfCheck check_rdf(const GridFunction& f, const RdfResult& r, double p, double tol = 1e-6) {
  RdfCheck c;
  c.dominates = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (r.weight.values[i] < f.values[i]) c.dominates = false;
  const double nf = lp_norm(f, p), nr = lp_norm(r.weight, p);
  c.norm_ratio = nf > 0.0 ? nr / nf : 0.0;
  c.norm_ok = nr <= 2.0 * nf + tol;
  const auto m = maximal_function(r.weight);
  c.a1_worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double ex = m.values[i] - 2.0 * r.operator_norm * r.weight.values[i] - r.a1_slack.values[i];
    c.a1_worst = std::max(c.a1_worst, ex);
  }
  c.a1_ok = c.a1_worst <= tol * (1.0 + *std::max_element(m.values.begin(), m.values.end()));
  return c;
}

struct HarnessRow {
  double p = 0.0;
  std::string weight_id;
  double lhs = 0.0;    // ||(sum |S f_k|^r)^{1/r}||_{L^p(w)}
  double rhs = 0.0;    // ||(sum |f_k|^r)^{1/r}||_{L^p(w)}
  double ratio = 0.0;
};

struct FunctionPair {
  GridFunction f;
  GridFunction Sf;
};

struct NamedWeight {
  std::string id;
  GridFunction w;
};

/// Both sides of the weighted l^r-valued inequality for every p and weight.
inline std::vector<HarnessRow> vector_valued_harness(const std::vector<FunctionPair>& family, double r,
                                                     const std::vector<double>& ps,
                                                     const std::vector<NamedWeight>& weights) {
  if (family.empty()) throw DomainError("vector_valued_harness: empty family");
  if (!(r >= 1.0)) throw DomainError("vector_valued_harness: r must be >= 1");
  const GridFunction& ref = family.front().f;
  for (const auto& fp : family)
    if (!fp.f.same_grid(ref) || !fp.Sf.same_grid(ref)) throw ShapeError("vector_valued_harness: mismatched grids");
  for (const auto& w : weights)
    if (!w.w.same_grid(ref)) throw ShapeError("vector_valued_harness: weight on a different grid");
  const std::size_t n = ref.size();
  std::vector<double> sl(n, 0.0), sr(n, 0.0);
  for (const auto& fp : family)
    for (std::size_t i = 0; i < n; ++i) {
      sl[i] += std::pow(std::abs(fp.Sf.values[i]), r);
      sr[i] += std::pow(std::abs(fp.f.values[i]), r);
    }
  for (std::size_t i = 0; i < n; ++i) {
    sl[i] = std::pow(sl[i], 1.0 / r);
    sr[i] = std::pow(sr[i], 1.0 / r);
  }
  std::vector<HarnessRow> out;
  for (double p : ps) {
    if (!(p >= 1.0)) throw DomainError("vector_valued_harness: p must be >= 1");
    for (const auto& w : weights) {
      double L = 0.0, R = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double m = w.w.values[i] * ref.masses[i];
        L += std::pow(sl[i], p) * m;
        R += std::pow(sr[i], p) * m;
      }
      HarnessRow row{p, w.id, std::pow(L, 1.0 / p), std::pow(R, 1.0 / p), 0.0};
      row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
      out.push_back(row);
    }
  }
  return out;
}

}  // namespace jacobi_riesz
