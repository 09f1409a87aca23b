#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace jacobi_riesz {

inline constexpr double pi = std::numbers::pi;

/// log Gamma(x) for x > 0.
inline double gamma_ln(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_ln: argument must be positive, got " + std::to_string(x));
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  JacobiParams() = default;
  JacobiParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > -1.0) || !(b > -1.0))
      throw DomainError("JacobiParams: alpha and beta must exceed -1");
  }

  // (alpha+beta+1)/2, the spectral shift.
  double half_sum() const noexcept { return 0.5 * (alpha + beta + 1.0); }
  bool supports_kernel_theorems() const noexcept { return alpha > -0.5 && beta > -0.5; }
  void require_kernel_range(const char* op) const {
    if (!supports_kernel_theorems())
      throw UnsupportedRangeError(std::string(op) + ": requires alpha, beta > -1/2");
  }
  JacobiParams shifted(double da, double db) const { return {alpha + da, beta + db}; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/// Offset scheme u_j = (sin t/2)^{aj} (cos t/2)^{bj} with shifted parameters (alpha+aj, beta+bj).
struct OffsetScheme {
  double a = 1.0;
  double b = 0.0;
  int j = 0;

  OffsetScheme() = default;
  OffsetScheme(double a_, double b_, int j_) : a(a_), b(b_), j(j_) {
    if (!(a >= 1.0)) throw DomainError("OffsetScheme: a must be >= 1");
    if (!(b == 0.0 || b >= 1.0)) throw DomainError("OffsetScheme: b must be 0 or >= 1");
    if (j < 0) throw DomainError("OffsetScheme: j must be nonnegative");
  }

  OffsetScheme with_j(int jj) const { return {a, b, jj}; }
  JacobiParams shift(const JacobiParams& base) const { return base.shifted(a * j, b * j); }

  double log_weight(double theta) const {
    double r = 0.0;
    if (a * j != 0.0) r += a * j * std::log(std::sin(0.5 * theta));
    if (b * j != 0.0) r += b * j * std::log(std::cos(0.5 * theta));
    return r;
  }
  double weight(double theta) const { return std::exp(log_weight(theta)); }
  // d/dtheta log u_j
  double dlog_weight(double theta) const {
    const double h = 0.5 * theta;
    return 0.5 * a * j * std::cos(h) / std::sin(h) - 0.5 * b * j * std::tan(h);
  }
};

namespace detail {

// Forward three-term recurrence without range checks; fills out[0..n].
inline void jacobi_sequence(int n, double a, double b, double x, double* out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  const double ab = a + b;
  const double a2b2 = a * a - b * b;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double d1 = 2.0 * k * (k + ab) * (c - 2.0);
    const double d2 = (c - 1.0) * (c * (c - 2.0) * x + a2b2);
    const double d3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    out[k] = (d2 * out[k - 1] - d3 * out[k - 2]) / d1;
  }
}

inline double jacobi_value(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  const double ab = a + b;
  const double a2b2 = a * a - b * b;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double d1 = 2.0 * k * (k + ab) * (c - 2.0);
    const double d2 = (c - 1.0) * (c * (c - 2.0) * x + a2b2);
    const double d3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double p2 = (d2 * p1 - d3 * p0) / d1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double log_normalizer(int n, double a, double b) {
  if (n == 0) return 0.5 * (gamma_ln(a + b + 2.0) - gamma_ln(a + 1.0) - gamma_ln(b + 1.0));
  return 0.5 * (std::log(2.0 * n + a + b + 1.0) + gamma_ln(n + 1.0) + gamma_ln(n + a + b + 1.0) -
                gamma_ln(n + a + 1.0) - gamma_ln(n + b + 1.0));
}

inline void check_open_theta(double theta, const char* op) {
  if (!(theta > 0.0 && theta < pi))
    throw DomainError(std::string(op) + ": theta must lie in (0, pi)");
}

}  // namespace detail

/// P_n^{(alpha,beta)}(x) by forward recurrence.
inline double jacobi_poly(int n, const JacobiParams& p, double x) {
  if (n < 0) throw DomainError("jacobi_poly: negative degree");
  if (!(std::abs(x) <= 1.0)) throw DomainError("jacobi_poly: |x| > 1");
  return detail::jacobi_value(n, p.alpha, p.beta, x);
}

/// Values P_0..P_n at x.
inline std::vector<double> jacobi_poly_sequence(int n, const JacobiParams& p, double x) {
  if (n < 0) throw DomainError("jacobi_poly_sequence: negative degree");
  if (!(std::abs(x) <= 1.0)) throw DomainError("jacobi_poly_sequence: |x| > 1");
  std::vector<double> out(n + 1);
  detail::jacobi_sequence(n, p.alpha, p.beta, x, out.data());
  return out;
}

/// d_n^{alpha,beta}; the n = 0 case uses the reduced gamma form.
inline double normalizer(int n, const JacobiParams& p) {
  if (n < 0) throw DomainError("normalizer: negative degree");
  return std::exp(detail::log_normalizer(n, p.alpha, p.beta));
}

inline std::vector<double> normalizers(int n, const JacobiParams& p) {
  std::vector<double> d(n + 1);
  for (int k = 0; k <= n; ++k) d[k] = std::exp(detail::log_normalizer(k, p.alpha, p.beta));
  return d;
}

inline double trig_poly(int n, const JacobiParams& p, double theta) {
  detail::check_open_theta(theta, "trig_poly");
  if (n < 0) throw DomainError("trig_poly: negative degree");
  return normalizer(n, p) * detail::jacobi_value(n, p.alpha, p.beta, std::cos(theta));
}

/// All normalized trig polynomials of degree 0..n at theta.
inline std::vector<double> trig_poly_sequence(int n, const JacobiParams& p, double theta) {
  detail::check_open_theta(theta, "trig_poly_sequence");
  std::vector<double> v(n + 1);
  detail::jacobi_sequence(n, p.alpha, p.beta, std::cos(theta), v.data());
  for (int k = 0; k <= n; ++k) v[k] *= std::exp(detail::log_normalizer(k, p.alpha, p.beta));
  return v;
}

inline double trig_poly_derivative(int n, const JacobiParams& p, double theta) {
  detail::check_open_theta(theta, "trig_poly_derivative");
  if (n <= 0) return 0.0;
  const JacobiParams q(p.alpha + 1.0, p.beta + 1.0);
  return -0.5 * std::sqrt(n * (n + p.alpha + p.beta + 1.0)) * std::sin(theta) *
         trig_poly(n - 1, q, theta);
}

inline double trig_poly_second_derivative(int n, const JacobiParams& p, double theta) {
  detail::check_open_theta(theta, "trig_poly_second_derivative");
  if (n <= 0) return 0.0;
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const double ab1 = n + p.alpha + p.beta + 1.0;
  const double dp = 0.5 * ab1 * detail::jacobi_value(n - 1, p.alpha + 1.0, p.beta + 1.0, x);
  const double ddp =
      n >= 2 ? 0.25 * ab1 * (ab1 + 1.0) * detail::jacobi_value(n - 2, p.alpha + 2.0, p.beta + 2.0, x)
             : 0.0;
  return normalizer(n, p) * (ddp * s * s - dp * x);
}

inline double eigenvalue(int n, const JacobiParams& p) {
  const double l = n + p.half_sum();
  return l * l;
}

/// The Jacobi operator applied to the trig polynomial of degree n, from analytic derivatives.
inline double jacobi_operator_apply(int n, const JacobiParams& p, double theta) {
  const double d1 = trig_poly_derivative(n, p, theta);
  const double d2 = trig_poly_second_derivative(n, p, theta);
  const double coef = (p.alpha - p.beta + (p.alpha + p.beta + 1.0) * std::cos(theta)) / std::sin(theta);
  const double h = p.half_sum();
  return -d2 - coef * d1 + h * h * trig_poly(n, p, theta);
}

inline double measure_density(const JacobiParams& p, double theta) {
  if (!(theta >= 0.0 && theta <= pi)) throw DomainError("measure_density: theta outside [0, pi]");
  const double ea = 2.0 * p.alpha + 1.0;
  const double eb = 2.0 * p.beta + 1.0;
  if (theta == 0.0 || theta == pi) {
    const double e = theta == 0.0 ? ea : eb;
    // the other half-angle factor equals 1 at the endpoint
    if (e > 0.0) return 0.0;
    if (e == 0.0) return 1.0;
    throw DomainError("measure_density: density is infinite at this endpoint");
  }
  return std::pow(std::sin(0.5 * theta), ea) * std::pow(std::cos(0.5 * theta), eb);
}

inline double log_measure_density(const JacobiParams& p, double theta) {
  return (2.0 * p.alpha + 1.0) * std::log(std::sin(0.5 * theta)) +
         (2.0 * p.beta + 1.0) * std::log(std::cos(0.5 * theta));
}

/// Gamma(z+r)/Gamma(z+t)/z^{r-t}; arguments of Gamma must stay positive.
inline double gamma_ratio_check(double z, double r, double t) {
  if (!(z > 0.0)) throw DomainError("gamma_ratio_check: z must be positive");
  return std::exp(gamma_ln(z + r) - gamma_ln(z + t) - (r - t) * std::log(z));
}

/// P_n^{(alpha,beta)}(1) = Gamma(n+alpha+1)/(n! Gamma(alpha+1)).
inline double jacobi_at_one(int n, const JacobiParams& p) {
  return std::exp(gamma_ln(n + p.alpha + 1.0) - gamma_ln(n + 1.0) - gamma_ln(p.alpha + 1.0));
}

}  // namespace jacobi_riesz
