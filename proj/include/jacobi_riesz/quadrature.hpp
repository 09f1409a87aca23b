#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "special_functions.hpp"

namespace jacobi_riesz {

/// What a rule integrates against.
struct RuleMeasure {
  enum class Kind { Interval, Theta };
  Kind kind = Kind::Interval;
  // Interval: (1-u)^gamma_left (1+u)^gamma_right du on [-1,1]
  double gamma_left = 0.0;
  double gamma_right = 0.0;
  // Theta: d mu_{alpha,beta} on (0,pi)
  JacobiParams params{};
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
  RuleMeasure measure{};

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

namespace detail {

struct JacobiRecurrence {
  std::vector<double> diag;  // monic recurrence a_k
  std::vector<double> off;   // sqrt(b_k), k = 1..n-1 stored at k-1
  double mu0 = 0.0;
};

inline JacobiRecurrence jacobi_recurrence(int n, double a, double b) {
  JacobiRecurrence r;
  r.diag.resize(n);
  r.off.resize(n > 0 ? n : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      r.diag[k] = (b - a) / (ab + 2.0);
    } else {
      const double c = 2.0 * k + ab;
      r.diag[k] = (b * b - a * a) / (c * (c + 2.0));
    }
  }
  for (int k = 1; k <= n; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double c = 2.0 * k + ab;
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
    }
    r.off[k - 1] = std::sqrt(bk);
  }
  r.mu0 = std::exp((ab + 1.0) * std::log(2.0) + gamma_ln(a + 1.0) + gamma_ln(b + 1.0) - gamma_ln(ab + 2.0));
  return r;
}

// Orthonormal polynomials at x: returns p_n(x), p_n'(x) and sum_{k<n} p_k(x)^2.
inline std::tuple<double, double, double> orthonormal_eval(const JacobiRecurrence& r, int n, double x) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(r.mu0);
  double dp_prev = 0.0;
  double dp = 0.0;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += p * p;
    const double bnext = r.off[k];
    const double bk = k > 0 ? r.off[k - 1] : 0.0;
    const double pn = ((x - r.diag[k]) * p - bk * p_prev) / bnext;
    const double dpn = ((x - r.diag[k]) * dp + p - bk * dp_prev) / bnext;
    p_prev = p;
    p = pn;
    dp_prev = dp;
    dp = dpn;
  }
  return {p, dp, sum};
}

}  // namespace detail

/// Gauss rule for (1-u)^gl (1+u)^gr on [-1,1], nodes increasing.
inline QuadratureRule gauss_jacobi_rule(int order, double gamma_left, double gamma_right) {
  if (order < 1) throw DomainError("gauss_jacobi_rule: order must be >= 1");
  if (!(gamma_left > -1.0) || !(gamma_right > -1.0))
    throw DomainError("gauss_jacobi_rule: exponents must exceed -1");
  // weight (1-u)^a (1+u)^b in the Jacobi convention
  const double a = gamma_left;
  const double b = gamma_right;
  const auto rec = detail::jacobi_recurrence(order, a, b);
  QuadratureRule rule;
  rule.order = order;
  rule.measure.kind = RuleMeasure::Kind::Interval;
  rule.measure.gamma_left = gamma_left;
  rule.measure.gamma_right = gamma_right;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (order == 1) {
    rule.nodes[0] = rec.diag[0];
  } else {
    Eigen::VectorXd d(order);
    Eigen::VectorXd e(order - 1);
    for (int k = 0; k < order; ++k) d[k] = rec.diag[k];
    for (int k = 0; k < order - 1; ++k) e[k] = rec.off[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    for (int k = 0; k < order; ++k) rule.nodes[k] = solver.eigenvalues()[k];
  }
  for (int k = 0; k < order; ++k) {
    double x = rule.nodes[k];
    for (int it = 0; it < 3; ++it) {
      auto [p, dp, s] = detail::orthonormal_eval(rec, order, x);
      if (dp == 0.0) break;
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-17) break;
    }
    x = std::clamp(x, std::nextafter(-1.0, 0.0), std::nextafter(1.0, 0.0));
    rule.nodes[k] = x;
    auto [p, dp, s] = detail::orthonormal_eval(rec, order, x);
    rule.weights[k] = 1.0 / s;
  }
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (int k = 0; k < order; ++k) {
    auto [p, dp, s] = detail::orthonormal_eval(rec, order, rule.nodes[k]);
    rule.weights[k] = 1.0 / s;
  }
  return rule;
}

/// Shared immutable rules keyed by (order, gamma_left, gamma_right).
inline const QuadratureRule& gauss_jacobi_cached(int order, double gamma_left, double gamma_right) {
  static std::mutex mtx;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> cache;
  const auto key = std::make_tuple(order, gamma_left, gamma_right);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<QuadratureRule>(gauss_jacobi_rule(order, gamma_left, gamma_right));
  std::lock_guard<std::mutex> lock(mtx);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return *it->second;
}

/// Rule for d mu_{alpha,beta} on (0,pi) via x = cos(theta); nodes increasing in theta.
inline QuadratureRule theta_rule(const JacobiParams& p, int order) {
  const auto& g = gauss_jacobi_cached(order, p.alpha, p.beta);
  QuadratureRule r;
  r.order = order;
  r.measure.kind = RuleMeasure::Kind::Theta;
  r.measure.params = p;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double scale = std::exp(-(p.alpha + p.beta + 1.0) * std::log(2.0));
  for (int k = 0; k < order; ++k) {
    const int src = order - 1 - k;
    r.nodes[k] = std::acos(g.nodes[src]);
    r.weights[k] = g.weights[src] * scale;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (7/15) for vector-valued integrands.

namespace gk15 {
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct VectorIntegral {
  Vec<N> value{};
  Vec<N> abs{};
  Vec<N> error{};
  bool converged = false;
  long evaluations = 0;
  int panels = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_panels = 2000;
  // when nonzero: components c >= scale_split only carry L1 masses for the components
  // c - scale_split; they set the tolerance scale and are not themselves error-controlled
  std::size_t scale_split = 0;
  bool analytic = false;  // integrand analytic on every panel: use the squared G7 error model
};

namespace detail {

template <std::size_t N>
struct Panel {
  double lo, hi;
  Vec<N> value, abs, error;
  Vec<N> error_sq;  // same, with the K15 error taken as the square of the relative G7 error
};

template <std::size_t N, class F>
Panel<N> gk_panel(F& f, double lo, double hi) {
  Panel<N> P{lo, hi, {}, {}, {}, {}};
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  std::array<Vec<N>, 15> fv;
  fv[7] = f(c);
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * gk15::xgk[i]);
    fv[14 - i] = f(c + h * gk15::xgk[i]);
  }
  for (std::size_t q = 0; q < N; ++q) {
    double k = gk15::wgk[7] * fv[7][q];
    double g = gk15::wg[3] * fv[7][q];
    double ka = gk15::wgk[7] * std::abs(fv[7][q]);
    for (int i = 0; i < 7; ++i) {
      const double s = fv[i][q] + fv[14 - i][q];
      k += gk15::wgk[i] * s;
      ka += gk15::wgk[i] * (std::abs(fv[i][q]) + std::abs(fv[14 - i][q]));
      if (i % 2 == 1) g += gk15::wg[i / 2] * s;
    }
    const double mean = 0.5 * k;
    double asc = gk15::wgk[7] * std::abs(fv[7][q] - mean);
    for (int i = 0; i < 7; ++i)
      asc += gk15::wgk[i] * (std::abs(fv[i][q] - mean) + std::abs(fv[14 - i][q] - mean));
    k *= h;
    g *= h;
    ka *= std::abs(h);
    asc *= std::abs(h);
    const double raw = std::abs(k - g);
    double err = raw, esq = raw;
    if (asc != 0.0 && raw != 0.0) {
      const double r = std::min(1.0, 200.0 * raw / asc);
      err = asc * std::pow(r, 1.5);
      esq = asc * r * r;
    }
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * ka;
    if (err < floor) err = floor;
    if (esq < floor) esq = floor;
    if (!std::isfinite(k) || !std::isfinite(err))
      throw AccuracyError("adaptive quadrature: non-finite integrand value", k, err);
    P.value[q] = k;
    P.abs[q] = ka;
    P.error[q] = err;
    P.error_sq[q] = esq;
  }
  return P;
}

}  // namespace detail

/// Globally adaptive G7/K15 over the union of [breaks[i], breaks[i+1]].
/// Stops when every component's error is below rel_tol times its L1 integral.
template <std::size_t N, class F>
VectorIntegral<N> integrate_adaptive(F&& f, const std::vector<double>& breaks,
                                     const AdaptiveOptions& opt = {}) {
  VectorIntegral<N> out;
  if (breaks.size() < 2) return out;
  std::vector<detail::Panel<N>> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) panels.push_back(detail::gk_panel<N>(f, breaks[i], breaks[i + 1]));
  long evals = 15L * static_cast<long>(panels.size());
  while (true) {
    Vec<N> tot{}, tabs{}, terr{};
    for (const auto& P : panels)
      for (std::size_t q = 0; q < N; ++q) {
        tot[q] += P.value[q];
        tabs[q] += P.abs[q];
        terr[q] += opt.analytic ? P.error_sq[q] : P.error[q];
      }
    Vec<N> scale = tabs;
    if (opt.scale_split > 0)
      for (std::size_t q = 0; q < opt.scale_split && q + opt.scale_split < N; ++q)
        scale[q] = std::max(scale[q], std::abs(tot[q + opt.scale_split]));
    const std::size_t checked = opt.scale_split > 0 ? opt.scale_split : N;
    bool done = true;
    for (std::size_t q = 0; q < checked; ++q)
      if (terr[q] > std::max(opt.rel_tol * scale[q], opt.abs_tol)) done = false;
    if (done || static_cast<int>(panels.size()) >= opt.max_panels) {
      out.value = tot;
      out.abs = tabs;
      out.error = terr;
      out.converged = done;
      out.evaluations = evals;
      out.panels = static_cast<int>(panels.size());
      return out;
    }
    // split the panel with the largest normalised error
    std::size_t worst = 0;
    double worst_key = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double key = 0.0;
      for (std::size_t q = 0; q < checked; ++q) {
        const double sc = std::max(scale[q], std::numeric_limits<double>::min());
        key = std::max(key, (opt.analytic ? panels[i].error_sq[q] : panels[i].error[q]) / sc);
      }
      if (key > worst_key) {
        worst_key = key;
        worst = i;
      }
    }
    const double lo = panels[worst].lo;
    const double hi = panels[worst].hi;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      out.value = tot;
      out.abs = tabs;
      out.error = terr;
      out.converged = false;
      out.evaluations = evals;
      out.panels = static_cast<int>(panels.size());
      return out;
    }
    panels[worst] = detail::gk_panel<N>(f, lo, mid);
    panels.push_back(detail::gk_panel<N>(f, mid, hi));
    evals += 30;
  }
}

/// Scalar convenience wrapper.
template <class F>
VectorIntegral<1> integrate_adaptive_scalar(F&& f, const std::vector<double>& breaks,
                                            const AdaptiveOptions& opt = {}) {
  auto g = [&](double x) { return Vec<1>{f(x)}; };
  return integrate_adaptive<1>(g, breaks, opt);
}

}  // namespace jacobi_riesz
