#pragma once

// Geodesic polar coordinates on S^d (d = 2, 3) and on the projective spaces.
// A field is a family of radial profiles F_{j,k}(theta), one per cross-section
// harmonic Y_{j,k}, sampled on a Gauss grid in theta. Radial profiles expand in
//   sphere:      2^{-(j+(d-1)/2)} sin^j(t) P_n^{(a+j,a+j)}(t),  a = (d-2)/2
//   projective:  sin^{2j}(t/2) P_n^{(d-1+2j,m)}(t) / sqrt(c_omega)
// which are orthonormal for the radial measure of the mixed norm.

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "jacobi_transforms.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace jacobi_riesz {

/// Dimension of the degree-j harmonics on S^D.
inline int harmonic_count(int D, int j) {
  if (D < 1 || j < 0) throw DomainError("harmonic_count: need D >= 1, j >= 0");
  if (j == 0) return 1;
  if (D == 1) return 2;
  // (2j+D-1)(j+D-2)!/(j!(D-1)!)
  return static_cast<int>(std::lround((2.0 * j + D - 1) *
                                      std::exp(gamma_ln(j + D - 1.0) - gamma_ln(j + 1.0) - gamma_ln(D))));
}

// ---------------------------------------------------------------------------
// Cross sections S^1 and S^2

struct CrossSection {
  int dim = 1;                  // 1 or 2
  std::vector<double> vartheta;  // colatitude, S^2 only
  std::vector<double> phi;
  std::vector<double> weights;
  int max_degree = 0;  // largest j with products of harmonics integrated exactly

  std::size_t size() const { return weights.size(); }
};

inline CrossSection circle_grid(int M) {
  if (M < 1) throw DomainError("circle_grid: need M >= 1");
  CrossSection c;
  c.dim = 1;
  for (int i = 0; i < M; ++i) {
    c.phi.push_back(2.0 * pi * i / M);
    c.vartheta.push_back(0.0);
    c.weights.push_back(2.0 * pi / M);
  }
  c.max_degree = (M - 1) / 2;
  return c;
}

/// Gauss-Legendre in cos(vartheta) times M uniform longitudes.
inline CrossSection sphere2_grid(int L, int M) {
  if (L < 1 || M < 1) throw DomainError("sphere2_grid: need L, M >= 1");
  const auto& g = gauss_jacobi_cached(L, 0.0, 0.0);
  CrossSection c;
  c.dim = 2;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < M; ++b) {
      c.vartheta.push_back(std::acos(g.nodes[a]));
      c.phi.push_back(2.0 * pi * b / M);
      c.weights.push_back(g.weights[a] * 2.0 * pi / M);
    }
  c.max_degree = std::min(L - 1, (M - 1) / 2);
  return c;
}

inline CrossSection cross_section_for(int dim, int max_degree) {
  if (dim == 1) return circle_grid(2 * max_degree + 1);
  if (dim == 2) return sphere2_grid(max_degree + 1, 2 * max_degree + 1);
  throw DomainError("cross_section_for: only S^1 and S^2 are implemented");
}

/// Value and gradient (orthonormal frame) of a real harmonic on the cross section.
struct HarmonicValue {
  double y = 0.0;
  double g1 = 0.0;  // d/dphi on S^1, d/dvartheta on S^2
  double g2 = 0.0;  // (1/sin vartheta) d/dphi on S^2
};

/// Real orthonormal harmonic Y_{j,k}, k = 1..harmonic_count(dim, j).
/// S^1: 1/sqrt(2 pi), cos(j phi)/sqrt(pi), sin(j phi)/sqrt(pi).
/// S^2: k = m + j + 1 with m in [-j, j]; cos for m > 0, sin for m < 0.
inline HarmonicValue cross_harmonic(int dim, int j, int k, double vartheta, double phi) {
  if (k < 1 || k > harmonic_count(dim, j)) throw DomainError("cross_harmonic: index k out of range");
  HarmonicValue h;
  if (dim == 1) {
    if (j == 0) {
      h.y = 1.0 / std::sqrt(2.0 * pi);
      return h;
    }
    const double s = 1.0 / std::sqrt(pi);
    if (k == 1) {
      h.y = s * std::cos(j * phi);
      h.g1 = -s * j * std::sin(j * phi);
    } else {
      h.y = s * std::sin(j * phi);
      h.g1 = s * j * std::cos(j * phi);
    }
    return h;
  }
  if (dim != 2) throw DomainError("cross_harmonic: only S^1 and S^2 are implemented");
  const int m = k - j - 1;
  const int am = std::abs(m);
  // colatitude part 2^{-(|m|+1/2)} sin^{|m|} P_{j-|m|}^{(|m|,|m|)}, unit norm in sin dvartheta
  const JacobiParams q(am, am);
  const double s = std::sin(vartheta), c = std::cos(vartheta);
  const double scale = std::exp(-(am + 0.5) * std::log(2.0));
  const double P = trig_poly(j - am, q, vartheta);
  const double dP = trig_poly_derivative(j - am, q, vartheta);
  const double sm = std::pow(s, am);
  const double T = scale * sm * P;
  const double dT = scale * ((am > 0 ? am * c * std::pow(s, am - 1) : 0.0) * P + sm * dP);
  double a = 0.0, da = 0.0;
  if (m == 0) {
    a = 1.0 / std::sqrt(2.0 * pi);
  } else if (m > 0) {
    a = std::cos(m * phi) / std::sqrt(pi);
    da = -m * std::sin(m * phi) / std::sqrt(pi);
  } else {
    a = std::sin(am * phi) / std::sqrt(pi);
    da = am * std::cos(am * phi) / std::sqrt(pi);
  }
  h.y = T * a;
  h.g1 = dT * a;
  // T/sin is finite: T carries sin^{|m|} and da vanishes for m = 0
  h.g2 = m == 0 ? 0.0 : scale * std::pow(s, am - 1) * P * da;
  return h;
}

// ---------------------------------------------------------------------------
// Radial frames

namespace detail {

inline bool sphere_frame(const ManifoldParams& mp) {
  return mp.kind == ManifoldKind::Sphere || mp.kind == ManifoldKind::RealProjective;
}

// Jacobi parameters of the radial measure
inline JacobiParams radial_base(const ManifoldParams& mp) {
  return sphere_frame(mp) ? JacobiParams(mp.alpha, mp.alpha) : JacobiParams(mp.d - 1.0, mp.m);
}

// radial measure = factor * dmu_base
inline double radial_measure_factor(const ManifoldParams& mp) {
  return sphere_frame(mp) ? std::pow(2.0, mp.d - 1.0) : mp.c_omega();
}

// cross-section dimension: S^{d-1} for spheres, S^d counts for projective spaces
inline int cross_dim(const ManifoldParams& mp) { return sphere_frame(mp) ? mp.d - 1 : mp.d; }

struct RadialFrame {
  JacobiParams q;  // parameters of the profile basis
  int j = 0;
  bool sphere = true;
  double log_scale = 0.0;

  double shift() const { return q.half_sum(); }  // eigenvalue offset n + shift

  double weight(double t) const {
    if (j == 0) return std::exp(log_scale);
    return sphere ? std::exp(log_scale + j * std::log(std::sin(t)))
                  : std::exp(log_scale + 2.0 * j * std::log(std::sin(0.5 * t)));
  }
  double dlog_weight(double t) const {
    if (j == 0) return 0.0;
    return sphere ? j * std::cos(t) / std::sin(t) : j * std::cos(0.5 * t) / std::sin(0.5 * t);
  }
};

inline RadialFrame radial_frame(const ManifoldParams& mp, int j) {
  RadialFrame f;
  f.j = j;
  f.sphere = sphere_frame(mp);
  if (f.sphere) {
    f.q = JacobiParams(mp.alpha + j, mp.alpha + j);
    f.log_scale = -(j + 0.5 * (mp.d - 1)) * std::log(2.0);
  } else {
    f.q = JacobiParams(mp.d - 1.0 + 2.0 * j, mp.m);
    f.log_scale = -0.5 * std::log(mp.c_omega());
  }
  return f;
}

// basis values and theta-derivatives for n = 0..N at t
inline void frame_basis(const RadialFrame& f, int N, double t, std::vector<double>& val, std::vector<double>& der) {
  val = trig_poly_sequence(N, f.q, t);
  der.assign(N + 1, 0.0);
  if (N >= 1) {
    const auto up = trig_poly_sequence(N - 1, f.q.shifted(1.0, 1.0), t);
    const double s = std::sin(t);
    for (int n = 1; n <= N; ++n)
      der[n] = -0.5 * std::sqrt(n * (n + f.q.alpha + f.q.beta + 1.0)) * s * up[n - 1];
  }
  const double w = f.weight(t), dl = f.dlog_weight(t);
  for (int n = 0; n <= N; ++n) {
    der[n] = w * (der[n] + dl * val[n]);
    val[n] *= w;
  }
}

}  // namespace detail

/// psi_{n,j} on S^d, n the total degree (n >= j); unit norm in L^2((0,pi), sin^{d-1} dtheta).
inline double psi(int d, int n, int j, double theta) {
  if (j < 0 || n < j) throw DomainError("psi: need 0 <= j <= n");
  const auto f = detail::radial_frame(ManifoldParams::sphere(d), j);
  return f.weight(theta) * trig_poly(n - j, f.q, theta);
}

inline double psi_derivative(int d, int n, int j, double theta) {
  if (j < 0 || n < j) throw DomainError("psi_derivative: need 0 <= j <= n");
  const auto f = detail::radial_frame(ManifoldParams::sphere(d), j);
  return f.weight(theta) * (trig_poly_derivative(n - j, f.q, theta) + f.dlog_weight(theta) * trig_poly(n - j, f.q, theta));
}

struct RadialBasisElement {
  int n = 0;
  int j = 0;
  std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Fields

struct MixedNormField {
  ManifoldParams manifold = ManifoldParams::sphere(3);
  int max_degree = 0;  // largest cross-section degree j
  int radial_cap = 0;  // sphere: total degree n+j <= cap; projective: n <= cap per profile
  std::vector<double> theta;
  std::vector<double> theta_weights;  // radial measure of the mixed norm
  std::vector<std::pair<int, int>> labels;  // (j, k), k from 1
  std::vector<std::vector<double>> profiles;

  std::size_t profile_index(int j, int k) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i].first == j && labels[i].second == k) return i;
    throw DomainError("MixedNormField: no profile (" + std::to_string(j) + "," + std::to_string(k) + ")");
  }
  // number of radial coefficients of a degree-j profile
  int radial_count(int j) const {
    return detail::sphere_frame(manifold) ? std::max(0, radial_cap - j + 1) : radial_cap + 1;
  }
  bool same_layout(const MixedNormField& o) const {
    return manifold.kind == o.manifold.kind && manifold.d == o.manifold.d && manifold.m == o.manifold.m &&
           max_degree == o.max_degree && radial_cap == o.radial_cap && theta == o.theta;
  }
};

/// Zero field; the radial grid is Gauss for the radial measure and exact for the
/// products the analysis needs. order 0 picks it automatically.
inline MixedNormField make_field(const ManifoldParams& mp, int max_degree, int radial_cap, int order = 0) {
  if (max_degree < 0 || radial_cap < 0) throw DomainError("make_field: negative degree");
  const bool sph = detail::sphere_frame(mp);
  if (sph && max_degree > radial_cap) throw ConfigurationError("make_field: max_degree exceeds the radial cap");
  const int need = sph ? radial_cap + 2 : radial_cap + max_degree + 2;
  if (order == 0) order = need + 4;
  if (order < need) throw ConfigurationError("make_field: radial order too small for exact analysis");
  MixedNormField f;
  f.manifold = mp;
  f.max_degree = max_degree;
  f.radial_cap = radial_cap;
  const auto r = theta_rule(detail::radial_base(mp), order);
  const double fac = detail::radial_measure_factor(mp);
  f.theta = r.nodes;
  for (double w : r.weights) f.theta_weights.push_back(w * fac);
  const int D = detail::cross_dim(mp);
  for (int j = 0; j <= max_degree; ++j)
    for (int k = 1; k <= harmonic_count(D, j); ++k) f.labels.emplace_back(j, k);
  f.profiles.assign(f.labels.size(), std::vector<double>(f.theta.size(), 0.0));
  return f;
}

/// Radial coefficients of every profile, coefficient n belongs to eigenvalue index n + frame shift.
inline std::vector<std::vector<double>> radial_coefficients(const MixedNormField& f) {
  std::vector<std::vector<double>> c(f.labels.size());
  std::vector<double> val, der;
  for (int j = 0; j <= f.max_degree; ++j) {
    const auto fr = detail::radial_frame(f.manifold, j);
    const int N = f.radial_count(j) - 1;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < f.labels.size(); ++i)
      if (f.labels[i].first == j) {
        idx.push_back(i);
        c[i].assign(N + 1, 0.0);
      }
    if (N < 0) continue;
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      detail::frame_basis(fr, N, f.theta[t], val, der);
      for (auto i : idx)
        for (int n = 0; n <= N; ++n) c[i][n] += f.theta_weights[t] * f.profiles[i][t] * val[n];
    }
  }
  return c;
}

/// Profiles and their theta-derivatives from radial coefficients.
inline MixedNormField field_from_coefficients(const MixedNormField& layout, const std::vector<std::vector<double>>& c,
                                              std::vector<std::vector<double>>* derivative = nullptr) {
  if (c.size() != layout.labels.size()) throw ShapeError("field_from_coefficients: profile count mismatch");
  MixedNormField f = layout;
  if (derivative) derivative->assign(f.labels.size(), std::vector<double>(f.theta.size(), 0.0));
  std::vector<double> val, der;
  for (int j = 0; j <= f.max_degree; ++j) {
    const auto fr = detail::radial_frame(f.manifold, j);
    const int N = f.radial_count(j) - 1;
    for (std::size_t i = 0; i < f.labels.size(); ++i)
      if (f.labels[i].first == j && static_cast<int>(c[i].size()) != N + 1)
        throw ShapeError("field_from_coefficients: wrong coefficient count");
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      if (N >= 0) detail::frame_basis(fr, N, f.theta[t], val, der);
      for (std::size_t i = 0; i < f.labels.size(); ++i) {
        if (f.labels[i].first != j) continue;
        double v = 0.0, dv = 0.0;
        for (int n = 0; n <= N; ++n) {
          v += c[i][n] * val[n];
          dv += c[i][n] * der[n];
        }
        f.profiles[i][t] = v;
        if (derivative) (*derivative)[i][t] = dv;
      }
    }
  }
  return f;
}

/// Random band-limited field with standard normal radial coefficients.
template <class Rng>
MixedNormField random_field(const MixedNormField& layout, Rng& rng) {
  std::normal_distribution<double> N01(0.0, 1.0);
  std::vector<std::vector<double>> c(layout.labels.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].resize(layout.radial_count(layout.labels[i].first));
    for (auto& v : c[i]) v = N01(rng);
  }
  return field_from_coefficients(layout, c);
}

// ---------------------------------------------------------------------------
// Analysis and synthesis on theta x cross-section grids

struct ProductGrid {
  MixedNormField layout;
  CrossSection cross;
  std::size_t size() const { return layout.theta.size() * cross.size(); }
  // samples are stored theta-major: index = t * cross.size() + x
};

inline ProductGrid make_product_grid(const MixedNormField& layout, int cross_degree = -1) {
  if (!detail::sphere_frame(layout.manifold) || (layout.manifold.d != 2 && layout.manifold.d != 3))
    throw DomainError("make_product_grid: cross sections exist for S^2 and S^3 only");
  return {layout, cross_section_for(layout.manifold.d - 1, cross_degree < 0 ? layout.max_degree : cross_degree)};
}

/// Samples of a function on the product grid.
inline std::vector<double> sample(const ProductGrid& g, const std::function<double(double, double, double)>& F) {
  std::vector<double> s(g.size());
  const std::size_t M = g.cross.size();
  for (std::size_t t = 0; t < g.layout.theta.size(); ++t)
    for (std::size_t x = 0; x < M; ++x) s[t * M + x] = F(g.layout.theta[t], g.cross.vartheta[x], g.cross.phi[x]);
  return s;
}

namespace detail {
inline std::vector<std::vector<HarmonicValue>> harmonic_table(const MixedNormField& f, const CrossSection& c) {
  std::vector<std::vector<HarmonicValue>> tab(f.labels.size(), std::vector<HarmonicValue>(c.size()));
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (std::size_t x = 0; x < c.size(); ++x)
      tab[i][x] = cross_harmonic(c.dim, f.labels[i].first, f.labels[i].second, c.vartheta[x], c.phi[x]);
  return tab;
}
}  // namespace detail

/// F_{j,k}(theta) = int F(theta, x') Y_{j,k}(x') dx' on every grid theta.
inline MixedNormField harmonic_analyze(const ProductGrid& g, const std::vector<double>& samples) {
  if (samples.size() != g.size()) throw ShapeError("harmonic_analyze: sample count does not match the grid");
  if (g.layout.max_degree > g.cross.max_degree)
    throw ConfigurationError("harmonic_analyze: max_degree " + std::to_string(g.layout.max_degree) +
                             " aliases on a cross-section grid exact to degree " + std::to_string(g.cross.max_degree));
  MixedNormField f = g.layout;
  const auto tab = detail::harmonic_table(f, g.cross);
  const std::size_t M = g.cross.size();
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      double s = 0.0;
      for (std::size_t x = 0; x < M; ++x) s += g.cross.weights[x] * samples[t * M + x] * tab[i][x].y;
      f.profiles[i][t] = s;
    }
  return f;
}

inline std::vector<double> synthesize(const MixedNormField& f, const CrossSection& c) {
  const auto tab = detail::harmonic_table(f, c);
  const std::size_t M = c.size();
  std::vector<double> s(f.theta.size() * M, 0.0);
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      const double a = f.profiles[i][t];
      if (a == 0.0) continue;
      for (std::size_t x = 0; x < M; ++x) s[t * M + x] += a * tab[i][x].y;
    }
  return s;
}

/// L^p(L^2) norm of a product-grid function, computed directly on the grid.
inline double product_lp_l2(const ProductGrid& g, const std::vector<double>& samples, double p) {
  if (!(p >= 1.0)) throw DomainError("product_lp_l2: p must be >= 1");
  const std::size_t M = g.cross.size();
  double s = 0.0;
  for (std::size_t t = 0; t < g.layout.theta.size(); ++t) {
    double inner = 0.0;
    for (std::size_t x = 0; x < M; ++x) inner += g.cross.weights[x] * samples[t * M + x] * samples[t * M + x];
    s += g.layout.theta_weights[t] * std::pow(inner, 0.5 * p);
  }
  return std::pow(s, 1.0 / p);
}

/// (sum_t w_t (sum_i |F_i(t)|^2)^{p/2})^{1/p} over any set of profiles on one radial grid.
inline double aggregated_lp(const std::vector<double>& theta_weights, const std::vector<const std::vector<double>*>& profiles,
                            double p) {
  if (!(p >= 1.0)) throw DomainError("mixed_norm: p must be >= 1");
  double s = 0.0;
  for (std::size_t t = 0; t < theta_weights.size(); ++t) {
    double sq = 0.0;
    for (const auto* pr : profiles) sq += (*pr)[t] * (*pr)[t];
    s += theta_weights[t] * std::pow(sq, 0.5 * p);
  }
  return std::pow(s, 1.0 / p);
}

inline double mixed_norm(const MixedNormField& f, double p) {
  std::vector<const std::vector<double>*> pr;
  for (const auto& v : f.profiles) pr.push_back(&v);
  return aggregated_lp(f.theta_weights, pr, p);
}

/// Multiplies the radial coefficient n of every degree-j profile by m(n, j).
inline MixedNormField apply_multiplier(const MixedNormField& f, const std::function<double(int, int)>& m) {
  auto c = radial_coefficients(f);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t n = 0; n < c[i].size(); ++n) c[i][n] *= m(static_cast<int>(n), f.labels[i].first);
  return field_from_coefficients(f, c);
}

/// Divides coefficient (n, j, k) by n + shift_j: n+(2j+d-1)/2 on S^d, n+(2j+m+d)/2 on projective spaces.
inline MixedNormField inverse_sqrt_laplacian(const MixedNormField& f) {
  return apply_multiplier(f, [&](int n, int j) { return 1.0 / (n + detail::radial_frame(f.manifold, j).shift()); });
}

/// Keeps the components of even total degree n + j.
inline MixedNormField even_projection(const MixedNormField& f) {
  if (!detail::sphere_frame(f.manifold)) throw DomainError("even_projection: sphere fields only");
  return apply_multiplier(f, [](int n, int j) { return (n + j) % 2 == 0 ? 1.0 : 0.0; });
}

struct RieszSphereResult {
  std::vector<double> pointwise;  // |R f| on the product grid, empty without a cross section
  double output_norm = 0.0;
  double input_norm = 0.0;
  double ratio = 0.0;
  // aggregated squared profile sum_{j,k} |g'|^2 + rho j(j+d-2) |g|^2 per theta
  std::vector<double> square_profile;
};

/// |R f|^2 = |d_theta G|^2 + rho |grad' G|^2 with G = (-Delta)^{-1/2} f. The norm uses
/// int |grad' (g Y)|^2 dx' = j(j+d-2) |g|^2 over the cross section.
inline RieszSphereResult riesz_sphere(const MixedNormField& f, double p, const CrossSection* cross = nullptr) {
  if (f.manifold.kind != ManifoldKind::Sphere && f.manifold.kind != ManifoldKind::RealProjective)
    throw DomainError("riesz_sphere: sphere fields only");
  auto c = radial_coefficients(f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double sh = detail::radial_frame(f.manifold, f.labels[i].first).shift();
    for (std::size_t n = 0; n < c[i].size(); ++n) c[i][n] /= n + sh;
  }
  std::vector<std::vector<double>> dG;
  const auto G = field_from_coefficients(f, c, &dG);
  const int d = f.manifold.d;
  RieszSphereResult r;
  r.square_profile.assign(f.theta.size(), 0.0);
  for (std::size_t i = 0; i < f.labels.size(); ++i) {
    const int j = f.labels[i].first;
    const double ev = j * (j + d - 2.0);
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      const double s = std::sin(f.theta[t]);
      r.square_profile[t] += dG[i][t] * dG[i][t] + ev * G.profiles[i][t] * G.profiles[i][t] / (s * s);
    }
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < f.theta.size(); ++t) acc += f.theta_weights[t] * std::pow(r.square_profile[t], 0.5 * p);
  r.output_norm = std::pow(acc, 1.0 / p);
  r.input_norm = mixed_norm(f, p);
  r.ratio = r.input_norm > 0.0 ? r.output_norm / r.input_norm : 0.0;
  if (cross) {
    if (f.max_degree > cross->max_degree) throw ConfigurationError("riesz_sphere: cross section too coarse");
    const auto tab = detail::harmonic_table(f, *cross);
    const std::size_t M = cross->size();
    r.pointwise.assign(f.theta.size() * M, 0.0);
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      const double s = std::sin(f.theta[t]);
      for (std::size_t x = 0; x < M; ++x) {
        double a = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < f.labels.size(); ++i) {
          a += dG[i][t] * tab[i][x].y;
          g1 += G.profiles[i][t] * tab[i][x].g1;
          g2 += G.profiles[i][t] * tab[i][x].g2;
        }
        r.pointwise[t * M + x] = std::sqrt(a * a + (g1 * g1 + g2 * g2) / (s * s));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Projective spaces: radial reduction with the offset scheme a = 2, b = 0

struct ProjectivePipelineResult {
  MixedNormField riesz_part;  // u_j R^{alpha+2j,beta}(u_j^{-1} F_{j,k})
  MixedNormField t_part;      // j u_j T_M^{alpha+2j,beta}(u_j^{-1} F_{j,k})
  double output_norm(double p) const {
    std::vector<const std::vector<double>*> pr;
    for (const auto& v : riesz_part.profiles) pr.push_back(&v);
    for (const auto& v : t_part.profiles) pr.push_back(&v);
    return aggregated_lp(riesz_part.theta_weights, pr, p);
  }
};

inline ProjectivePipelineResult projective_radial_pipeline(const MixedNormField& f) {
  if (!f.manifold.is_projective()) throw DomainError("projective_radial_pipeline: needs a projective manifold");
  const JacobiParams base = detail::radial_base(f.manifold);
  ProjectivePipelineResult out{f, f};
  const auto c = radial_coefficients(f);
  for (std::size_t i = 0; i < f.labels.size(); ++i) {
    const int j = f.labels[i].first;
    const OffsetScheme sc(2.0, 0.0, j);
    // the frame already carries u_j and 1/sqrt(c_omega): its coefficients are the spectrum of u_j^{-1} F
    const double inv = std::sqrt(f.manifold.c_omega());
    Spectrum s{sc.shift(base), c[i]};
    for (auto& v : s.coeffs) v /= inv;
    for (std::size_t t = 0; t < f.theta.size(); ++t) {
      const double th = f.theta[t];
      const double u = sc.weight(th);
      out.riesz_part.profiles[i][t] = u * riesz_transform(s, th);
      out.t_part.profiles[i][t] = j == 0 ? 0.0 : j * u * t_operator(s, f.manifold, th);
    }
  }
  return out;
}

/// Projective field whose profiles are u_j times a random spectrum in P^{(d-1+2j,m)}.
template <class Rng>
MixedNormField random_projective_field(const ManifoldParams& mp, int max_degree, int radial_cap, Rng& rng) {
  return random_field(make_field(mp, max_degree, radial_cap), rng);
}

// ---------------------------------------------------------------------------
// CSV

inline void write_field_csv(std::ostream& os, const MixedNormField& f) {
  os << "j,k,theta_index,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < f.labels.size(); ++i)
    for (std::size_t t = 0; t < f.theta.size(); ++t)
      os << f.labels[i].first << ',' << f.labels[i].second << ',' << t << ',' << f.profiles[i][t] << '\n';
}

}  // namespace jacobi_riesz
