#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "vfa/error.hpp"
#include "vfa/graph.hpp"
#include "vfa/kernel.hpp"
#include "vfa/spectral.hpp"

namespace vfa {

template <class A, class B>
using ProductScalar = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType;

// ---------------------------------------------------------------------------
// Convolution

/// Generalized convolution: multiply spectral coefficients, transform back.
template <class DA, class DB>
Vector<ProductScalar<DA, DB>> convolve(const Spectrum& s, const Eigen::MatrixBase<DA>& f,
                                       const Eigen::MatrixBase<DB>& g) {
  detail::check_dims(s.size(), f.size(), "convolve f");
  detail::check_dims(s.size(), g.size(), "convolve g");
  const Vector<ProductScalar<DA, DB>> prod = gft(s, f).cwiseProduct(gft(s, g));
  return igft(s, prod);
}

/// g0(n) = sum_l chi_l(n): the identity element of generalized convolution.
inline Signal convolution_identity(const Spectrum& s) { return s.eigenvectors().rowwise().sum(); }

// ---------------------------------------------------------------------------
// Translation

namespace detail {

inline void check_vertex(const Spectrum& s, Index i) {
  require(i >= 0 && i < s.size(), ErrorKind::index_out_of_range,
          "vertex " + std::to_string(i) + " outside [0, " + std::to_string(s.size()) + ")");
}

inline void check_frequency(const Spectrum& s, Index k) {
  require(k >= 0 && k < s.size(), ErrorKind::index_out_of_range,
          "frequency index " + std::to_string(k) + " outside [0, " + std::to_string(s.size()) + ")");
}

inline void check_variant(const Spectrum& s, Variant expected) {
  require(s.variant() == expected, ErrorKind::variant_mismatch,
          "operator expects a " + std::string(to_string(expected)) + " spectrum");
}

// c * sum_l fhat(l) chi_l(i) chi_l(n), for the basis of s and constant c.
template <class Derived>
Vector<typename Derived::Scalar> translate_impl(const Spectrum& s, const Eigen::MatrixBase<Derived>& fhat, Index i) {
  check_vertex(s, i);
  check_dims(s.size(), fhat.size(), "translate");
  const Vector<typename Derived::Scalar> weighted = fhat.cwiseProduct(s.eigenvectors().row(i).transpose());
  return s.translation_constant() * (s.eigenvectors() * weighted);
}

}  // namespace detail

/// T_i applied to a window given by its spectral coefficients.
template <class Derived>
Vector<typename Derived::Scalar> translate_hat(const Spectrum& s, const Eigen::MatrixBase<Derived>& ghat, Index i) {
  detail::check_variant(s, Variant::combinatorial);
  return detail::translate_impl(s, ghat, i);
}

/// T_i g = sqrt(N) (g * delta_i) for a vertex-domain signal g.
template <class Derived>
Vector<typename Derived::Scalar> translate(const Spectrum& s, const Eigen::MatrixBase<Derived>& g, Index i) {
  detail::check_dims(s.size(), g.size(), "translate");
  return translate_hat(s, gft(s, g), i);
}

inline Signal translate(const Spectrum& s, const Kernel& g, Index i) { return translate_hat(s, kernel_evaluate(g, s), i); }

template <class Derived>
Vector<typename Derived::Scalar> translate_normalized_hat(const Spectrum& s, const Eigen::MatrixBase<Derived>& ghat,
                                                          Index i) {
  detail::check_variant(s, Variant::normalized);
  return detail::translate_impl(s, ghat, i);
}

/// Translation in the normalized-Laplacian basis, scaled by ||sqrt(d)||_2.
template <class Derived>
Vector<typename Derived::Scalar> translate_normalized(const Spectrum& s, const Eigen::MatrixBase<Derived>& g, Index i) {
  detail::check_dims(s.size(), g.size(), "translate_normalized");
  return translate_normalized_hat(s, gft(s, g), i);
}

inline Signal translate_normalized(const Spectrum& s, const Kernel& g, Index i) {
  return translate_normalized_hat(s, kernel_evaluate(g, s), i);
}

/// Column i holds T_i g; equals c * chi diag(ghat) chi^T, so it is symmetric.
inline Eigen::MatrixXd translation_matrix(const Spectrum& s, const Eigen::VectorXd& ghat) {
  detail::check_dims(s.size(), ghat.size(), "translation_matrix");
  const Eigen::MatrixXd& chi = s.eigenvectors();
  return s.translation_constant() * (chi * ghat.asDiagonal() * chi.transpose());
}

/// ||T_n g||_2^2 for every vertex n, from c^2 sum_l ghat_l^2 chi_l(n)^2.
inline Eigen::VectorXd translated_norms_sq(const Spectrum& s, const Eigen::VectorXd& ghat) {
  detail::check_dims(s.size(), ghat.size(), "translated_norms_sq");
  const double c = s.translation_constant();
  return c * c * (s.eigenvectors().array().square().matrix() * ghat.array().square().matrix());
}

// ---------------------------------------------------------------------------
// Modulation

namespace detail {

// f(n) chi_k(n) / chi_0(n). For the combinatorial basis chi_0 is the constant
// 1/sqrt(N), so this is sqrt(N) f(n) chi_k(n); for the normalized basis it is
// f(n) chi_k(n) ||sqrt(d)|| / sqrt(d_n). k = 0 returns f unchanged.
template <class Derived>
Vector<typename Derived::Scalar> modulate_impl(const Spectrum& s, const Eigen::MatrixBase<Derived>& f, Index k) {
  check_frequency(s, k);
  check_dims(s.size(), f.size(), "modulate");
  if (k == 0) return f;
  const Eigen::VectorXd factor = s.eigenvectors().col(k).cwiseQuotient(s.eigenvectors().col(0));
  return f.cwiseProduct(factor);
}

}  // namespace detail

/// Generalized modulation M_k f = sqrt(N) f .* chi_k.
template <class Derived>
Vector<typename Derived::Scalar> modulate(const Spectrum& s, const Eigen::MatrixBase<Derived>& f, Index k) {
  detail::check_variant(s, Variant::combinatorial);
  return detail::modulate_impl(s, f, k);
}

/// Normalized-basis modulation f .* chi_k / chi_0.
template <class Derived>
Vector<typename Derived::Scalar> modulate_normalized(const Spectrum& s, const Eigen::MatrixBase<Derived>& f, Index k) {
  detail::check_variant(s, Variant::normalized);
  return detail::modulate_impl(s, f, k);
}

// ---------------------------------------------------------------------------
// Dual graph on the spectrum

enum class DualWeighting { inverse_gap, exponential, thresholded };

struct DualGraphOptions {
  DualWeighting weighting = DualWeighting::inverse_gap;
  /// Added to each gap for inverse_gap weights.
  double regularizer = 1e-6;
  /// Length scale for exponential / thresholded weights; <= 0 means the mean
  /// eigenvalue gap (times `hops` for thresholded).
  double sigma = 0.0;
  /// Neighbors on each side for thresholded weights.
  Index hops = 3;
  /// Gap above which thresholded weights are dropped.
  double threshold = std::numeric_limits<double>::infinity();
};

/// Graph whose vertex l stands for eigenvalue lambda_l, plus its own spectrum.
struct DualGraph {
  Graph graph;
  Spectrum spectrum;
  DualWeighting weighting;
};

inline DualGraph build_dual_graph(const Spectrum& s, const DualGraphOptions& opts = {}) {
  const Index n = s.size();
  detail::require(n >= 2, ErrorKind::disconnected_dual, "dual graph needs at least two eigenvalues");
  const Eigen::VectorXd& lam = s.eigenvalues();
  const double mean_gap = (lam(n - 1) - lam(0)) / static_cast<double>(n - 1);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  switch (opts.weighting) {
    case DualWeighting::inverse_gap:
      for (Index k = 0; k + 1 < n; ++k) w(k, k + 1) = w(k + 1, k) = 1.0 / (std::abs(lam(k) - lam(k + 1)) + opts.regularizer);
      break;
    case DualWeighting::exponential: {
      const double sigma = opts.sigma > 0.0 ? opts.sigma : mean_gap;
      for (Index k = 0; k + 1 < n; ++k) w(k, k + 1) = w(k + 1, k) = std::exp(-std::abs(lam(k) - lam(k + 1)) / sigma);
      break;
    }
    case DualWeighting::thresholded: {
      const double sigma = opts.sigma > 0.0 ? opts.sigma : mean_gap * static_cast<double>(opts.hops);
      for (Index k = 0; k < n; ++k) {
        for (Index l = k + 1; l <= std::min(n - 1, k + opts.hops); ++l) {
          const double gap = std::abs(lam(k) - lam(l));
          if (gap <= opts.threshold) w(k, l) = w(l, k) = std::exp(-gap * gap / (2.0 * sigma * sigma));
        }
      }
      break;
    }
  }
  detail::require(detail::is_connected(w), ErrorKind::disconnected_dual, "dual graph is disconnected");
  Graph g = Graph::from_adjacency(std::move(w));
  Spectrum ds = eigendecompose(g, Variant::combinatorial);
  return DualGraph{std::move(g), std::move(ds), opts.weighting};
}

/// Where the modulated kernel is specified: on sigma(L) (values indexed by
/// l, transformed to sigma(L_dual) internally) or directly on sigma(L_dual).
enum class DualPlacement { primal_spectrum, dual_spectrum };

/// Spectral coefficients of the dual-graph modulation: translation of the
/// kernel to dual vertex k, sqrt(N) sum_j fhathat_j chi_dual_j(k) chi_dual_j(l).
inline Eigen::VectorXd alt_modulate_hat(const Spectrum& s, const DualGraph& dg, const Eigen::VectorXd& values,
                                        DualPlacement placement, Index k) {
  detail::check_frequency(s, k);
  detail::check_dims(s.size(), dg.spectrum.size(), "dual graph");
  detail::check_dims(s.size(), values.size(), "alt_modulate kernel");
  const Eigen::VectorXd fhathat = placement == DualPlacement::primal_spectrum ? gft(dg.spectrum, values) : values;
  return detail::translate_impl(dg.spectrum, fhathat, k);
}

inline Eigen::VectorXd alt_modulate_hat(const Spectrum& s, const DualGraph& dg, const Kernel& kernel,
                                        DualPlacement placement, Index k) {
  const Eigen::VectorXd values =
      kernel_evaluate(kernel, placement == DualPlacement::primal_spectrum ? s : dg.spectrum);
  return alt_modulate_hat(s, dg, values, placement, k);
}

/// Vertex-domain result of the dual-graph modulation.
inline Signal alt_modulate(const Spectrum& s, const DualGraph& dg, const Kernel& kernel, DualPlacement placement,
                           Index k) {
  return igft(s, alt_modulate_hat(s, dg, kernel, placement, k));
}

inline Signal alt_modulate(const Spectrum& s, const DualGraph& dg, const Eigen::VectorXd& values,
                           DualPlacement placement, Index k) {
  return igft(s, alt_modulate_hat(s, dg, values, placement, k));
}

// ---------------------------------------------------------------------------
// Chebyshev approximation of ghat(L) f

/// Number of Gauss-Chebyshev nodes used for the expansion coefficients.
inline constexpr int kChebyshevQuadraturePoints = 1000;

/// Coefficients c_0..c_order of ghat on [0, lambda_bound] in the shifted
/// Chebyshev basis; the expansion is c_0/2 + sum_{j>=1} c_j T_j.
inline std::vector<double> chebyshev_coefficients(const Kernel& k, double lambda_bound, int order,
                                                  int points = kChebyshevQuadraturePoints) {
  detail::require(k.analytic(), ErrorKind::unsupported_kernel_form, "Chebyshev filtering needs an analytic kernel");
  detail::require(!k.is_normalized(), ErrorKind::unsupported_kernel_form,
                  "resolve the kernel's normalization against a spectrum first");
  detail::require(order >= 1, ErrorKind::unsupported_kernel_form, "order must be >= 1");
  const double half = lambda_bound / 2.0;
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  for (int m = 0; m < points; ++m) {
    const double theta = std::numbers::pi * (m + 0.5) / points;
    const double value = k(half * (std::cos(theta) + 1.0));
    for (int j = 0; j <= order; ++j) c[static_cast<std::size_t>(j)] += value * std::cos(j * theta);
  }
  for (double& cj : c) cj *= 2.0 / points;
  return c;
}

/// Approximates ghat(L) f with a truncated Chebyshev expansion using only
/// products with L. `lambda_bound` must be >= lambda_max.
inline Signal chebyshev_filter(const Graph& g, const Kernel& k, const Signal& f, int order, double lambda_bound,
                               Variant variant = Variant::combinatorial) {
  detail::check_dims(g.size(), f.size(), "chebyshev_filter");
  detail::require(lambda_bound > 0.0, ErrorKind::unsupported_kernel_form, "lambda bound must be positive");
  const std::vector<double> c = chebyshev_coefficients(k, lambda_bound, order);
  const Eigen::SparseMatrix<double> l = laplacian(g, variant).sparseView();
  const double half = lambda_bound / 2.0;
  // shifted operator (L - half I) / half maps [0, bound] onto [-1, 1]
  auto apply = [&](const Signal& x) -> Signal { return (l * x - half * x) / half; };

  Signal prev = f;
  Signal cur = apply(f);
  Signal out = 0.5 * c[0] * prev + c[1] * cur;
  for (int j = 2; j <= order; ++j) {
    Signal next = 2.0 * apply(cur) - prev;
    out += c[static_cast<std::size_t>(j)] * next;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

/// Same, with the cheap bound 2 d_max (combinatorial) or 2 (normalized).
inline Signal chebyshev_filter(const Graph& g, const Kernel& k, const Signal& f, int order,
                               Variant variant = Variant::combinatorial) {
  const double bound = variant == Variant::combinatorial ? 2.0 * g.max_degree() : 2.0;
  return chebyshev_filter(g, k, f, order, bound, variant);
}

/// Exact ghat(L) f through the eigendecomposition; the reference for chebyshev_filter.
inline Signal spectral_filter(const Spectrum& s, const Kernel& k, const Signal& f) {
  return igft(s, kernel_evaluate(k, s).cwiseProduct(gft(s, f)));
}

}  // namespace vfa
