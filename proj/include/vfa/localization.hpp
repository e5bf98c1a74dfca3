#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/graph.hpp"
#include "vfa/kernel.hpp"
#include "vfa/operators.hpp"
#include "vfa/spectral.hpp"

namespace vfa {

/// Slack allowed when comparing the two sides of a bound.
inline constexpr double kBoundSlack = 1e-9;

/// Generic "lhs <= rhs" outcome. `vacuous` marks bounds that carry no
/// information (a normalized ratio bounded by something >= 1).
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  bool vacuous = false;
};

// ---------------------------------------------------------------------------
// Translation norms

struct NormBounds {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool satisfied = false;
};

/// |ghat(0)| <= ||T_i g|| <= sqrt(N) nu_i ||g|| (combinatorial basis), or
/// sqrt(d_i)|ghat(0)| <= ||T~_i g|| <= nu~_i ||sqrt(d)|| ||g|| (normalized).
inline NormBounds translation_norm_bounds(const Spectrum& s, const Eigen::VectorXd& ghat, Index i) {
  detail::check_vertex(s, i);
  const Signal t = detail::translate_impl(s, ghat, i);
  const double nu = coherence(s).nu_per_vertex(i);
  const double c = s.translation_constant();
  const double dc = s.variant() == Variant::normalized ? std::sqrt(s.degrees()(i)) : 1.0;
  NormBounds nb;
  nb.lower = dc * std::abs(ghat(0));
  nb.value = t.norm();
  nb.upper = c * nu * ghat.norm();
  nb.satisfied = nb.lower <= nb.value + kBoundSlack && nb.value <= nb.upper + kBoundSlack;
  return nb;
}

inline NormBounds translation_norm_bounds(const Spectrum& s, const Kernel& g, Index i) {
  return translation_norm_bounds(s, kernel_evaluate(g, s), i);
}

// ---------------------------------------------------------------------------
// Strict localization of polynomial kernels

struct PolyLocalization {
  int degree = 0;
  Index excluded = 0;        ///< vertices farther than `degree` hops from i
  double outside_max = 0.0;  ///< max |T_i p(n)| over excluded vertices
  double inside_max = 0.0;   ///< ||T_i p||_inf
  bool satisfied = false;    ///< outside_max <= 1e-8 * inside_max
};

/// A degree-K polynomial kernel translated to i vanishes beyond K hops.
inline PolyLocalization poly_localization_check(const DistanceMatrix& dm, const Spectrum& s, const Kernel& p, Index i) {
  detail::require(p.is_polynomial(), ErrorKind::wrong_kernel_form, "poly_localization_check needs a polynomial kernel");
  detail::check_vertex(s, i);
  detail::check_dims(s.size(), dm.size(), "distance matrix");
  const Signal t = detail::translate_impl(s, kernel_evaluate(p, s), i);
  PolyLocalization out;
  out.degree = p.degree();
  out.inside_max = t.cwiseAbs().maxCoeff();
  for (Index n = 0; n < s.size(); ++n) {
    if (dm(i, n) > out.degree) {
      ++out.excluded;
      out.outside_max = std::max(out.outside_max, std::abs(t(n)));
    }
  }
  out.satisfied = out.outside_max <= 1e-8 * out.inside_max;
  return out;
}

inline PolyLocalization poly_localization_check(const Graph& g, const Spectrum& s, const Kernel& p, Index i) {
  return poly_localization_check(geodesic_distances(g), s, p, i);
}

// ---------------------------------------------------------------------------
// Decay of translated heat kernels

/// |T_i g(n)| / ||T_i g|| against (2c / d!) (tau lambda_max / 4)^d with
/// d = d_G(i, n); c = sqrt(N), or ||sqrt(d)|| / sqrt(d_i) for the normalized basis.
inline BoundReport smooth_decay_bound(const DistanceMatrix& dm, const Spectrum& s, const Kernel& heat, Index i,
                                      Index n) {
  const double tau = heat.tau();
  detail::check_vertex(s, i);
  detail::check_vertex(s, n);
  detail::require(i != n, ErrorKind::same_vertex, "decay bound needs distinct vertices");
  const Signal t = detail::translate_impl(s, kernel_evaluate(heat, s), i);
  double c = s.translation_constant();
  if (s.variant() == Variant::normalized) c /= std::sqrt(s.degrees()(i));
  const int d = dm(i, n);
  BoundReport r;
  r.lhs = std::abs(t(n)) / t.norm();
  r.rhs = tau == 0.0 ? 0.0
                     : std::exp(std::log(2.0 * c) - std::lgamma(d + 1.0) + d * std::log(tau * s.lambda_max() / 4.0));
  r.satisfied = r.lhs <= r.rhs + kBoundSlack;
  r.vacuous = r.rhs >= 1.0;
  return r;
}

// ---------------------------------------------------------------------------
// Graph spread

struct SpreadReport {
  Index center = 0;
  double spread_sq = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  bool satisfied = true;  ///< spread_sq <= bound + 1e-9
};

/// Delta_i^2(f) = sum_n d_G(i,n)^2 |f(n)|^2 / ||f||^2.
template <class Derived>
SpreadReport graph_spread(const DistanceMatrix& dm, const Eigen::MatrixBase<Derived>& f, Index i,
                          double bound = std::numeric_limits<double>::infinity()) {
  detail::check_dims(dm.size(), f.size(), "graph_spread");
  detail::require(i >= 0 && i < dm.size(), ErrorKind::index_out_of_range, "center vertex out of range");
  const double norm_sq = f.squaredNorm();
  detail::require(norm_sq > 0.0, ErrorKind::zero_signal, "spread of the zero signal is undefined");
  const Eigen::VectorXd d = dm.dist.row(i).transpose().cast<double>();
  SpreadReport r;
  r.center = i;
  r.spread_sq = d.array().square().matrix().dot(f.cwiseAbs2().template cast<double>()) / norm_sq;
  r.bound = bound;
  r.satisfied = r.spread_sq <= bound + kBoundSlack;
  return r;
}

/// Principal branch of the Lambert W function for x >= 0, by Newton
/// iteration to a relative step of 1e-12.
inline double lambert_w(double x) {
  detail::require(x >= 0.0 && std::isfinite(x), ErrorKind::degenerate_degrees, "lambert_w needs x >= 0");
  if (x == 0.0) return 0.0;
  double w = std::log1p(x);  // upper bound on W(x): Newton decreases monotonically
  for (int it = 0; it < 200; ++it) {
    const double ew = std::exp(w);
    const double step = (w * ew - x) / (ew * (w + 1.0));
    w -= step;
    if (std::abs(step) <= 1e-12 * std::abs(w)) break;
  }
  return w;
}

namespace detail {

inline std::pair<double, double> hop_degree_terms(const Graph& g, Index i) {
  const Eigen::VectorXi hop = g.hop_degrees();
  const double d_max = hop.maxCoeff();
  require(d_max >= 2.0, ErrorKind::degenerate_degrees, "spread bounds need a vertex with at least two neighbors");
  return {static_cast<double>(hop(i)), d_max};
}

}  // namespace detail

/// (N tau^2 lambda_max^2 d_i / 4) exp(tau^2 lambda_max^2 / (16 (d_max - 1))),
/// with d_i and d_max counted in neighbors.
inline double heat_spread_bound(const Graph& g, const Spectrum& s, double tau, Index i) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_vertex(s, i);
  const auto [d_i, d_max] = detail::hop_degree_terms(g, i);
  const double x = tau * tau * s.lambda_max() * s.lambda_max();
  return static_cast<double>(s.size()) * x * d_i / 4.0 * std::exp(x / (16.0 * (d_max - 1.0)));
}

/// Largest tau for which heat_spread_bound(tau) <= eps:
/// (4 / lambda_max) sqrt((d_max - 1) W(eps / (4 N d_i (d_max - 1)))).
inline double tau_for_spread(const Graph& g, const Spectrum& s, double eps, Index i) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_vertex(s, i);
  detail::require(eps > 0.0, ErrorKind::degenerate_degrees, "spread target must be positive");
  const auto [d_i, d_max] = detail::hop_degree_terms(g, i);
  const double arg = eps / (4.0 * static_cast<double>(s.size()) * d_i * (d_max - 1.0));
  return 4.0 / s.lambda_max() * std::sqrt((d_max - 1.0) * lambert_w(arg));
}

/// Measured Delta_i^2(T_i g) for the heat kernel e^{-tau lambda}, with the
/// closed-form bound attached.
inline SpreadReport heat_spread_check(const Graph& g, const DistanceMatrix& dm, const Spectrum& s, double tau, Index i) {
  const Signal t = translate(s, Kernel::heat(tau), i);
  return graph_spread(dm, t, i, heat_spread_bound(g, s, tau, i));
}

// ---------------------------------------------------------------------------
// Spectral concentration of modulated kernels

struct ModulationConcentration {
  Index k = 0;
  double gamma = 0.0;
  double hypothesis_lhs = 0.0;
  double hypothesis_rhs = 0.0;
  bool condition_met = false;
  /// Largest gamma for which the hypothesis holds (may be negative, +inf for
  /// kernels supported on lambda_0 alone).
  double max_gamma = 0.0;
  Eigen::VectorXd magnitudes;  ///< |hat(M_k f)(lambda_l)|
  Eigen::VectorXd ratios;      ///< magnitudes(k) / magnitudes(l); +inf where the denominator is 0
  bool conclusion_holds = false;  ///< magnitudes(k) >= gamma * magnitudes(l) for all l != k
  double energy_ratio = 0.0;      ///< magnitudes(k)^2 / ||M_k f||^2
  std::optional<double> energy_bound;  ///< gamma^2 / (N + 3 + 4 gamma + gamma^2); combinatorial only
  bool corollary_holds = false;
};

namespace detail {

inline ModulationConcentration concentration_impl(const Spectrum& s, const Eigen::VectorXd& fhat, Index k, double gamma,
                                                  double lhs, double rhs_numerator) {
  check_frequency(s, k);
  ModulationConcentration r;
  r.k = k;
  r.gamma = gamma;
  r.hypothesis_lhs = lhs;
  r.hypothesis_rhs = rhs_numerator / (1.0 + gamma);
  r.condition_met = lhs <= r.hypothesis_rhs;
  r.max_gamma = lhs > 0.0 ? rhs_numerator / lhs - 1.0 : std::numeric_limits<double>::infinity();

  const Signal f = igft(s, fhat);
  const Signal mf = modulate_impl(s, f, k);
  r.magnitudes = gft(s, mf).cwiseAbs();
  const double peak = r.magnitudes(k);
  r.ratios.resize(s.size());
  r.conclusion_holds = true;
  for (Index l = 0; l < s.size(); ++l) {
    const double m = r.magnitudes(l);
    r.ratios(l) = l == k ? 1.0 : (m > 0.0 ? peak / m : std::numeric_limits<double>::infinity());
    if (l != k && gamma * m > peak + kBoundSlack) r.conclusion_holds = false;
  }
  r.energy_ratio = peak * peak / mf.squaredNorm();
  return r;
}

}  // namespace detail

/// Checks sqrt(N) sum_{l>=1} mu_l |fhat(lambda_l)| <= |fhat(0)| / (1 + gamma)
/// and, alongside, the concentration of hat(M_k f) at lambda_k. The
/// conclusion fields are always computed; they are only guaranteed when
/// condition_met is true.
inline ModulationConcentration modulation_concentration(const Spectrum& s, const Eigen::VectorXd& fhat, Index k,
                                                        double gamma) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_dims(s.size(), fhat.size(), "modulation_concentration");
  detail::require(fhat(0) != 0.0, ErrorKind::zero_dc, "kernel has fhat(0) = 0");
  const CoherenceReport coh = coherence(s);
  const double n = static_cast<double>(s.size());
  const double lhs = std::sqrt(n) * coh.mu_per_eigvec.tail(s.size() - 1).dot(fhat.tail(s.size() - 1).cwiseAbs());
  ModulationConcentration r = detail::concentration_impl(s, fhat, k, gamma, lhs, std::abs(fhat(0)));
  r.energy_bound = gamma * gamma / (n + 3.0 + 4.0 * gamma + gamma * gamma);
  r.corollary_holds = r.energy_ratio >= *r.energy_bound - kBoundSlack;
  return r;
}

inline ModulationConcentration modulation_concentration(const Spectrum& s, const Kernel& f, Index k, double gamma) {
  return modulation_concentration(s, kernel_evaluate(f, s), k, gamma);
}

/// Normalized-basis variant: sum_{l>=1} mu~_l |fhat| <= sqrt(d_min) |fhat(0)| / (||sqrt(d)|| (1 + gamma)).
inline ModulationConcentration modulation_concentration_normalized(const Spectrum& s, const Eigen::VectorXd& fhat,
                                                                   Index k, double gamma) {
  detail::check_variant(s, Variant::normalized);
  detail::check_dims(s.size(), fhat.size(), "modulation_concentration_normalized");
  detail::require(fhat(0) != 0.0, ErrorKind::zero_dc, "kernel has fhat(0) = 0");
  const CoherenceReport coh = coherence(s);
  const double lhs = coh.mu_per_eigvec.tail(s.size() - 1).dot(fhat.tail(s.size() - 1).cwiseAbs());
  const double numerator = std::sqrt(s.degrees().minCoeff()) * std::abs(fhat(0)) / s.translation_constant();
  ModulationConcentration r = detail::concentration_impl(s, fhat, k, gamma, lhs, numerator);
  r.corollary_holds = true;
  return r;
}

inline ModulationConcentration modulation_concentration_normalized(const Spectrum& s, const Kernel& f, Index k,
                                                                   double gamma) {
  return modulation_concentration_normalized(s, kernel_evaluate(f, s), k, gamma);
}

/// sum_l (lambda_l - lambda_k)^2 |hat(l)|^2 / ||hat||^2: descriptive spread of
/// a spectral vector around lambda_k. No bound is attached.
inline double spectral_spread(const Spectrum& s, const Eigen::VectorXd& hat, Index k) {
  detail::check_frequency(s, k);
  detail::check_dims(s.size(), hat.size(), "spectral_spread");
  const double norm_sq = hat.squaredNorm();
  detail::require(norm_sq > 0.0, ErrorKind::zero_signal, "spread of the zero vector is undefined");
  const Eigen::ArrayXd diff = s.eigenvalues().array() - s.lambda(k);
  return (diff.square() * hat.array().square()).sum() / norm_sq;
}

}  // namespace vfa
