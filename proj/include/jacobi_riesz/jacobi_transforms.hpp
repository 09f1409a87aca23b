#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "corner_integral.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace jacobi_riesz {

struct Spectrum {
  JacobiParams params{};
  std::vector<double> coeffs;  // c_0 .. c_N

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
};

enum class ManifoldKind { Sphere, RealProjective, ComplexProjective, QuaternionicProjective, CayleyPlane };
enum class RhoSelector { InvSinSq, InvSinHalfSq };

/// Radial Jacobi data of a compact rank-one symmetric space.
struct ManifoldParams {
  ManifoldKind kind = ManifoldKind::Sphere;
  int d = 2;
  int m = 0;
  double lambda_M = 0.25;
  double alpha = 0.0;
  double beta = 0.0;
  RhoSelector rho = RhoSelector::InvSinSq;

  static ManifoldParams sphere(int d) {
    if (d < 2) throw DomainError("sphere: dimension must be >= 2");
    ManifoldParams mp;
    mp.kind = ManifoldKind::Sphere;
    mp.d = d;
    mp.m = 0;
    mp.alpha = mp.beta = 0.5 * (d - 2);
    mp.lambda_M = 0.25 * (d - 1) * (d - 1);
    mp.rho = RhoSelector::InvSinSq;
    return mp;
  }
  static ManifoldParams real_projective(int d) {
    ManifoldParams mp = sphere(d);
    mp.kind = ManifoldKind::RealProjective;
    mp.rho = RhoSelector::InvSinHalfSq;
    return mp;
  }
  static ManifoldParams complex_projective(int l) {
    if (l < 2) throw DomainError("complex_projective: l must be >= 2");
    return projective(ManifoldKind::ComplexProjective, 2, l - 2);
  }
  static ManifoldParams quaternionic_projective(int l) {
    if (l < 2) throw DomainError("quaternionic_projective: l must be >= 2");
    return projective(ManifoldKind::QuaternionicProjective, 4, 2 * l - 3);
  }
  static ManifoldParams cayley_plane() { return projective(ManifoldKind::CayleyPlane, 8, 3); }

  JacobiParams params() const { return {alpha, beta}; }
  bool is_sphere() const { return kind == ManifoldKind::Sphere; }
  bool is_projective() const { return kind != ManifoldKind::Sphere && kind != ManifoldKind::RealProjective; }

  double sqrt_rho(double theta) const {
    return rho == RhoSelector::InvSinSq ? 1.0 / std::sin(theta) : 1.0 / std::sin(0.5 * theta);
  }
  double dsqrt_rho(double theta) const {
    if (rho == RhoSelector::InvSinSq) {
      const double s = std::sin(theta);
      return -std::cos(theta) / (s * s);
    }
    const double s = std::sin(0.5 * theta);
    return -0.5 * std::cos(0.5 * theta) / (s * s);
  }
  // c_omega = Gamma(m+d+1)/(Gamma(d) Gamma(m+1)) for the projective measure normalisation
  double c_omega() const {
    return std::exp(gamma_ln(m + d + 1.0) - gamma_ln(static_cast<double>(d)) - gamma_ln(m + 1.0));
  }

 private:
  static ManifoldParams projective(ManifoldKind k, int d, int m) {
    ManifoldParams mp;
    mp.kind = k;
    mp.d = d;
    mp.m = m;
    mp.alpha = d - 1.0;
    mp.beta = m;
    mp.lambda_M = 0.25 * (m + d) * (m + d);
    mp.rho = RhoSelector::InvSinHalfSq;
    return mp;
  }
};

inline constexpr int default_quadrature_order = 128;

/// Coefficients against the normalized trig polynomials, by Gauss-Jacobi quadrature.
inline Spectrum analyze(const std::function<double(double)>& f, const JacobiParams& p, int N,
                        int order = default_quadrature_order) {
  if (N < 0) throw DomainError("analyze: negative truncation");
  if (order < 2 * N || order < 1)
    throw ConfigurationError("analyze: quadrature order " + std::to_string(order) + " < 2N = " +
                             std::to_string(2 * N));
  const auto rule = theta_rule(p, order);
  Spectrum s{p, std::vector<double>(N + 1, 0.0)};
  std::vector<double> buf(N + 1);
  const auto d = normalizers(N, p);
  for (int i = 0; i < order; ++i) {
    const double th = rule.nodes[i];
    const double fw = f(th) * rule.weights[i];
    detail::jacobi_sequence(N, p.alpha, p.beta, std::cos(th), buf.data());
    for (int n = 0; n <= N; ++n) s.coeffs[n] += fw * d[n] * buf[n];
  }
  return s;
}

inline double synthesize(const Spectrum& s, double theta) {
  const int N = s.truncation();
  if (N < 0) return 0.0;
  const auto P = trig_poly_sequence(N, s.params, theta);
  double v = 0.0;
  for (int n = 0; n <= N; ++n) v += s.coeffs[n] * P[n];
  return v;
}

inline double riesz_transform(const Spectrum& s, double theta) {
  const int N = s.truncation();
  if (N < 1) {
    detail::check_open_theta(theta, "riesz_transform");
    return 0.0;
  }
  const JacobiParams& p = s.params;
  const auto P = trig_poly_sequence(N - 1, p.shifted(1.0, 1.0), theta);
  const double h = p.half_sum();
  double v = 0.0;
  for (int n = 1; n <= N; ++n)
    v += std::sqrt(n * (n + p.alpha + p.beta + 1.0)) / (n + h) * s.coeffs[n] * P[n - 1];
  return -0.5 * std::sin(theta) * v;
}

/// sqrt(rho_M) times J^{-1/2} applied to the spectrum.
inline double t_operator(const Spectrum& s, const ManifoldParams& mp, double theta) {
  detail::check_open_theta(theta, "t_operator");
  const int N = s.truncation();
  if (N < 0) return 0.0;
  const JacobiParams& p = s.params;
  const double h = p.half_sum();
  if (h == 0.0 && s.coeffs[0] != 0.0)
    throw DomainError("t_operator: zero eigenvalue with nonzero constant coefficient");
  const auto P = trig_poly_sequence(N, p, theta);
  double v = 0.0;
  for (int n = 0; n <= N; ++n)
    if (s.coeffs[n] != 0.0) v += s.coeffs[n] / (n + h) * P[n];
  return mp.sqrt_rho(theta) * v;
}

struct PoissonSeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;  // bound on the omitted tail sum_{n>N}
};

inline PoissonSeriesValue poisson_series(double t, double theta, double varphi, const JacobiParams& p,
                                         int N = 64) {
  if (!(t > 0.0)) throw DomainError("poisson_series: t must be positive");
  if (N < 0) throw DomainError("poisson_series: negative truncation");
  const auto a = trig_poly_sequence(N, p, theta);
  const auto b = trig_poly_sequence(N, p, varphi);
  const double h = p.half_sum();
  PoissonSeriesValue r;
  for (int n = 0; n <= N; ++n) r.value += std::exp(-t * (n + h)) * a[n] * b[n];
  // tail: |P_n| <= d_n * binom(n+q, n), q = max(alpha, beta) >= -1/2
  const double q = std::max(std::max(p.alpha, p.beta), -0.5);
  double tail = 0.0;
  double last = 0.0;
  int n = N + 1;
  for (; n < N + 200000; ++n) {
    const double lb = 2.0 * (detail::log_normalizer(n, p.alpha, p.beta) + gamma_ln(n + q + 1.0) -
                             gamma_ln(n + 1.0) - gamma_ln(q + 1.0)) -
                      t * (n + h);
    const double term = std::exp(lb);
    tail += term;
    if (n > N + 1 && term <= last && term <= 1e-18 * tail) break;
    last = term;
  }
  // the bound terms decay at least geometrically with ratio e^{-t} beyond this point
  r.truncation_bound = tail + last * std::exp(-t) / (1.0 - std::exp(-t));
  return r;
}

namespace detail {
inline double log_poisson_prefactor(const JacobiParams& p) {
  return gamma_ln(p.alpha + p.beta + 2.0) - std::log(pi) - (p.alpha + p.beta + 1.0) * std::log(2.0) -
         gamma_ln(p.alpha + 0.5) - gamma_ln(p.beta + 0.5);
}
}  // namespace detail

struct PoissonIntegralValue {
  double value = 0.0;
  int order = 0;           // Gauss-Jacobi order reached, 0 if the adaptive engine was used
  double rel_change = 0.0; // last relative change between successive orders or engine error
};

inline PoissonIntegralValue poisson_integral_detailed(double t, double theta, double varphi,
                                                      const JacobiParams& p, double rel_tol = 1e-12,
                                                      int max_order = 256) {
  if (!(t > 0.0)) throw DomainError("poisson_integral: t must be positive");
  p.require_kernel_range("poisson_integral");
  detail::check_open_theta(theta, "poisson_integral");
  detail::check_open_theta(varphi, "poisson_integral");
  const double S = p.alpha + p.beta + 2.0;
  const double ct = 2.0 * std::pow(std::sinh(0.25 * t), 2);
  const double dl = std::sin(0.25 * (theta - varphi));
  const double kappa = ct + 2.0 * dl * dl;
  const double s1 = std::sin(0.5 * theta) * std::sin(0.5 * varphi);
  const double c1 = std::cos(0.5 * theta) * std::cos(0.5 * varphi);
  const double logc = detail::log_poisson_prefactor(p) + std::log(std::sinh(0.5 * t));
  auto gj = [&](int order) {
    const auto& ru = gauss_jacobi_cached(order, p.alpha - 0.5, p.alpha - 0.5);
    const auto& rv = gauss_jacobi_cached(order, p.beta - 0.5, p.beta - 0.5);
    std::vector<double> ym(order);
    for (int k = 0; k < order; ++k) ym[k] = c1 * (1.0 - rv.nodes[k]);
    double s = 0.0;
    for (int i = 0; i < order; ++i) {
      const double base = kappa + s1 * (1.0 - ru.nodes[i]);
      double inner = 0.0;
      for (int k = 0; k < order; ++k) inner += rv.weights[k] * std::pow(base + ym[k], -S);
      s += ru.weights[i] * inner;
    }
    return s * std::exp(logc);
  };
  PoissonIntegralValue out;
  double prev = gj(32);
  for (int order = 64; order <= max_order; order *= 2) {
    const double cur = gj(order);
    const double ch = std::abs(cur - prev) / std::abs(cur);
    prev = cur;
    if (ch <= rel_tol) {
      out.value = cur;
      out.order = order;
      out.rel_change = ch;
      return out;
    }
  }
  CornerProblem pr{p.alpha, p.beta, kappa, s1, c1, S};
  AdaptiveOptions opt;
  opt.rel_tol = std::max(rel_tol, 1e-13);
  auto r = integrate_corner<1>(pr, [](const CornerPoint&) { return Vec<1>{1.0}; }, opt);
  if (!r.converged) throw AccuracyError("poisson_integral: adaptive quadrature did not converge", 0.0, r.rel_error);
  out.value = r.scaled[0] * std::exp(logc + r.log_scale);
  out.order = 0;
  out.rel_change = r.rel_error;
  return out;
}

inline double poisson_integral(double t, double theta, double varphi, const JacobiParams& p) {
  return poisson_integral_detailed(t, theta, varphi, p).value;
}

}  // namespace jacobi_riesz
