#pragma once

// Double integrals over [-1,1]^2 of
//   (1-u^2)^{A-1/2} (1-v^2)^{B-1/2} (kappa + s1 (1-u) + c1 (1-v))^{-S} g(u,v)
// where kappa > 0 may be tiny, so the mass piles up near the corner u = v = 1.
// Each variable goes through x = 1-u = 2/(1+e^s); in s the endpoint factors
// become smooth exponential tails and the corner peak has O(1) width.
// Nested adaptive Gauss-Kronrod with breakpoints placed around the peak.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace jacobi_riesz {

struct CornerPoint {
  double u, v;  // original variables
  double x, y;  // 1-u, 1-v
  double q;     // kappa + s1 x + c1 y
};

struct CornerProblem {
  double A = 0.0;      // exponent parameter in u, weight (1-u^2)^{A-1/2}
  double B = 0.0;      // exponent parameter in v
  double kappa = 1.0;  // constant part of q, > 0
  double s1 = 0.0;     // coefficient of x = 1-u, > 0
  double c1 = 0.0;     // coefficient of y = 1-v, > 0
  double S = 1.0;      // power of q
};

template <std::size_t N>
struct CornerResult {
  Vec<N> scaled{};     // integral = scaled * exp(log_scale)
  Vec<N> abs_scaled{};
  double log_scale = 0.0;
  double rel_error = 0.0;  // worst component error relative to its L1 integral
  bool converged = false;
  long evaluations = 0;
};

namespace detail {

inline double softplus(double s) { return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))); }

// log of the transformed 1D weight (x(2-x))^{A+1/2}/2
inline double log_logistic_weight(double s, double A) {
  return (A + 0.5) * (2.0 * std::log(2.0) - softplus(s) - softplus(-s)) - std::log(2.0);
}

// x = 2/(1+e^s)
inline double logistic_x(double s) {
  if (s > 0.0) {
    const double e = std::exp(-s);
    return 2.0 * e / (1.0 + e);
  }
  return 2.0 / (1.0 + std::exp(s));
}

// derivative in s of (A+1/2) log(x(2-x)) - S log(K + c x)
inline double peak_slope(double s, double A, double S, double K, double c) {
  const double x = logistic_x(s);
  return -(A + 0.5) * std::tanh(0.5 * s) + S * c * x * (2.0 - x) / (2.0 * (K + c * x));
}

inline double find_peak(double A, double S, double K, double c, double L) {
  double lo = -L, hi = L;
  if (peak_slope(lo, A, S, K, c) <= 0.0) return lo;
  if (peak_slope(hi, A, S, K, c) >= 0.0) return hi;
  for (int it = 0; it < 64 && hi - lo > 1e-9; ++it) {
    const double m = 0.5 * (lo + hi);
    if (peak_slope(m, A, S, K, c) > 0.0)
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

inline double peak_width(double p, double A, double S, double K, double c) {
  const double h = 1e-4;
  const double d2 = (peak_slope(p + h, A, S, K, c) - peak_slope(p - h, A, S, K, c)) / (2.0 * h);
  if (!(d2 < 0.0)) return 1.0;
  return std::clamp(1.0 / std::sqrt(-d2), 1e-6, 20.0);
}

inline std::vector<double> peak_breaks(double p, double w, double L) {
  std::vector<double> b{-L, L};
  for (double k : {-8.0, -3.0, -1.0, 1.0, 3.0, 8.0}) {
    const double t = p + k * w;
    if (t > -L && t < L) b.push_back(t);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

inline double tail_length(double A) { return std::min(3000.0, 5.0 + 30.0 / (A + 0.5)); }

// Panels anchored at the peak with widths growing 2.5x away from it; each split into 2^level pieces.
// The integrand is analytic on every panel, so the squared-G7 error model is used.
// The node set moves smoothly with (p, w), so the result is a smooth function of the outer variable.
template <std::size_t N, class F>
VectorIntegral<N> integrate_anchored(F& f, double p, double w, double L, int level) {
  std::vector<double> e{p};
  for (double k = w; p - k > -L; k *= 2.5) e.push_back(p - k);
  for (double k = w; p + k < L; k *= 2.5) e.push_back(p + k);
  e.push_back(-L);
  e.push_back(L);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  VectorIntegral<N> out;
  const int pieces = 1 << level;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double h = (e[i + 1] - e[i]) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const auto P = gk_panel<N>(f, e[i] + k * h, e[i] + (k + 1) * h);
      for (std::size_t q = 0; q < N; ++q) {
        out.value[q] += P.value[q];
        out.abs[q] += P.abs[q];
        out.error[q] += P.error_sq[q];
      }
      out.evaluations += 15;
      ++out.panels;
    }
  }
  return out;
}

}  // namespace detail

template <std::size_t N, class G>
CornerResult<N> integrate_corner(const CornerProblem& pr, G&& g, const AdaptiveOptions& opt = {}) {
  if (!(pr.kappa > 0.0)) throw DomainError("integrate_corner: kappa must be positive");
  if (!(pr.A > -0.5) || !(pr.B > -0.5)) throw UnsupportedRangeError("integrate_corner: A, B must exceed -1/2");
  const double A = pr.A, B = pr.B, S = pr.S, s1 = pr.s1, c1 = pr.c1, kappa = pr.kappa;
  auto F = [&](double sx, double sy) {
    const double x = detail::logistic_x(sx), y = detail::logistic_x(sy);
    return detail::log_logistic_weight(sx, A) + detail::log_logistic_weight(sy, B) -
           S * std::log(kappa + s1 * x + c1 * y);
  };

  // joint peak by coordinate ascent
  double Lx = detail::tail_length(A), Ly = detail::tail_length(B);
  double px = 0.0, py = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double ny = detail::find_peak(B, S, kappa + s1 * detail::logistic_x(px), c1, Ly);
    const double nx = detail::find_peak(A, S, kappa + c1 * detail::logistic_x(ny), s1, Lx);
    const bool small = std::abs(nx - px) < 1e-7 && std::abs(ny - py) < 1e-7;
    px = nx;
    py = ny;
    if (small) break;
  }
  Lx += std::abs(px);
  Ly += std::abs(py) + 10.0;  // the inner peak drifts with the outer variable
  const double M = F(px, py);

  // outer width from the Schur complement of the Hessian
  double wx = 1.0;
  {
    const double h = 1e-3;
    const double fxx = (F(px + h, py) - 2.0 * F(px, py) + F(px - h, py)) / (h * h);
    const double fyy = (F(px, py + h) - 2.0 * F(px, py) + F(px, py - h)) / (h * h);
    const double fxy = (F(px + h, py + h) - F(px + h, py - h) - F(px - h, py + h) + F(px - h, py - h)) / (4.0 * h * h);
    if (fyy < 0.0) {
      const double e = fxx - fxy * fxy / fyy;
      if (e < 0.0) wx = std::clamp(1.0 / std::sqrt(-e), 1e-6, 20.0);
    }
  }

  AdaptiveOptions inner_opt = opt;
  inner_opt.rel_tol = opt.rel_tol * 0.1;
  double worst_inner = 0.0;
  long evals = 0;
  bool inner_ok = true;
  // inner integrals return scaled value and scaled L1 in one vector
  auto outer = [&](double sx) -> Vec<2 * N> {
    const double x = detail::logistic_x(sx);
    const double u = 1.0 - x;
    const double K = kappa + s1 * x;
    const double la = detail::log_logistic_weight(sx, A);
    const double py_loc = detail::find_peak(B, S, K, c1, Ly);
    const double wy = detail::peak_width(py_loc, B, S, K, c1);
    const double m_in = detail::log_logistic_weight(py_loc, B) - S * std::log(K + c1 * detail::logistic_x(py_loc));
    auto inner = [&](double sy) -> Vec<N> {
      const double y = detail::logistic_x(sy);
      const double q = K + c1 * y;
      const double w = std::exp(detail::log_logistic_weight(sy, B) - S * std::log(q) - m_in);
      Vec<N> gv = g(CornerPoint{u, 1.0 - y, x, y, q});
      for (auto& e : gv) e *= w;
      return gv;
    };
    VectorIntegral<N> r;
    for (int level = 0; level <= 3; ++level) {
      r = detail::integrate_anchored<N>(inner, py_loc, wy, Ly, level);
      evals += r.evaluations;
      r.converged = true;
      for (std::size_t c = 0; c < N; ++c)
        if (r.error[c] > inner_opt.rel_tol * r.abs[c]) r.converged = false;
      if (r.converged) break;
    }
    if (!r.converged) inner_ok = false;
    for (std::size_t c = 0; c < N; ++c)
      if (r.abs[c] > 0.0) worst_inner = std::max(worst_inner, r.error[c] / r.abs[c]);
    const double f = std::exp(la + m_in - M);
    Vec<2 * N> out{};
    for (std::size_t c = 0; c < N; ++c) {
      out[c] = r.value[c] * f;
      out[N + c] = r.abs[c] * f;
    }
    return out;
  };
  AdaptiveOptions outer_opt = opt;
  outer_opt.scale_split = N;
  outer_opt.analytic = true;
  auto res = integrate_adaptive<2 * N>(outer, detail::peak_breaks(px, wx, Lx), outer_opt);
  CornerResult<N> out;
  out.log_scale = M;
  double rel = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    out.scaled[c] = res.value[c];
    out.abs_scaled[c] = res.value[N + c];
    const double sc = std::max(res.abs[c], res.value[N + c]);
    if (sc > 0.0) rel = std::max(rel, res.error[c] / sc);
  }
  out.rel_error = rel + worst_inner;
  out.converged = res.converged && inner_ok;
  out.evaluations = evals;
  return out;
}

}  // namespace jacobi_riesz
