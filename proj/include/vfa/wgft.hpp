#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/kernel.hpp"
#include "vfa/operators.hpp"
#include "vfa/spectral.hpp"

namespace vfa {

/// Composition order of a windowed graph Fourier atom. Everything in this
/// library defaults to modulating the translated window.
enum class AtomOrder { modulate_translate, translate_modulate };

/// Sf(i, k): row i is a vertex, column k a frequency index.
struct WgftCoefficients {
  Eigen::MatrixXcd matrix;
  std::uint64_t window_ref = 0;  ///< hash of the evaluated window ghat(lambda_l)
  std::uint64_t graph_ref = 0;   ///< hash of the Laplacian the spectrum came from

  Index size() const { return matrix.rows(); }
};

struct FrameBounds {
  double lower_theory = 0.0;  ///< N |ghat(0)|^2
  double a = 0.0;             ///< min_n N ||T_n g||^2
  double b = 0.0;             ///< max_n N ||T_n g||^2
  double upper_theory = 0.0;  ///< N^2 mu^2 ||g||^2
};

/// Threshold below which reconstruct() warns about ill-conditioning.
inline constexpr double kNearSingularWarn = 1e-6;
/// Threshold below which reconstruct() refuses.
inline constexpr double kNearSingularRefuse = 1e-12;

namespace detail {

inline void check_window(const Eigen::VectorXd& ghat) {
  require(ghat.norm() > 0.0, ErrorKind::zero_window, "window has zero norm");
}

template <class Derived>
Eigen::VectorXcd as_complex(const Eigen::MatrixBase<Derived>& f) {
  return f.template cast<std::complex<double>>();
}

}  // namespace detail

/// g_{i,k} = M_k T_i g from spectral window coefficients.
inline Signal atom_hat(const Spectrum& s, const Eigen::VectorXd& ghat, Index i, Index k,
                       AtomOrder order = AtomOrder::modulate_translate) {
  detail::check_frequency(s, k);
  if (order == AtomOrder::modulate_translate) return modulate(s, translate_hat(s, ghat, i), k);
  return translate(s, modulate(s, igft(s, ghat), k), i);
}

inline Signal atom(const Spectrum& s, const Kernel& g, Index i, Index k,
                   AtomOrder order = AtomOrder::modulate_translate) {
  return atom_hat(s, kernel_evaluate(g, s), i, k, order);
}

/// Windowed graph Fourier transform Sf(i,k) = <f, g_{i,k}>. Row i is
/// sqrt(N) times the graph Fourier transform of the windowed signal
/// f .* conj(T_i g).
template <class Derived>
WgftCoefficients transform(const Spectrum& s, const Kernel& g, const Eigen::MatrixBase<Derived>& f) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_dims(s.size(), f.size(), "transform");
  const Eigen::VectorXd ghat = kernel_evaluate(g, s);
  detail::check_window(ghat);
  const Eigen::MatrixXd t = translation_matrix(s, ghat);
  const Eigen::VectorXcd fc = detail::as_complex(f);
  const double root_n = std::sqrt(static_cast<double>(s.size()));

  WgftCoefficients out;
  out.matrix.resize(s.size(), s.size());
  for (Index i = 0; i < s.size(); ++i) {
    // T_i g is real for real windows, so conjugation is a no-op here.
    const Eigen::VectorXcd windowed = fc.cwiseProduct(t.col(i));
    out.matrix.row(i) = root_n * gft(s, windowed).transpose();
  }
  out.window_ref = detail::hash_matrix(ghat);
  out.graph_ref = s.source_hash();
  return out;
}

/// Reference route: explicit inner products with every atom.
template <class Derived>
WgftCoefficients transform_direct(const Spectrum& s, const Kernel& g, const Eigen::MatrixBase<Derived>& f) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_dims(s.size(), f.size(), "transform_direct");
  const Eigen::VectorXd ghat = kernel_evaluate(g, s);
  detail::check_window(ghat);
  const Eigen::VectorXcd fc = detail::as_complex(f);
  WgftCoefficients out;
  out.matrix.resize(s.size(), s.size());
  for (Index i = 0; i < s.size(); ++i) {
    for (Index k = 0; k < s.size(); ++k) {
      const Signal a = atom_hat(s, ghat, i, k);
      // <f, a> = sum_n f(n) conj(a(n)); a is real.
      out.matrix(i, k) = (fc.array() * a.array().cast<std::complex<double>>()).sum();
    }
  }
  out.window_ref = detail::hash_matrix(ghat);
  out.graph_ref = s.source_hash();
  return out;
}

/// Empirical optimal frame bounds A, B together with the theoretical bracket.
inline FrameBounds frame_bounds(const Spectrum& s, const Kernel& g) {
  detail::check_variant(s, Variant::combinatorial);
  const Eigen::VectorXd ghat = kernel_evaluate(g, s);
  const double n = static_cast<double>(s.size());
  const Eigen::VectorXd scaled = n * translated_norms_sq(s, ghat);
  const double mu = coherence(s).mu;
  FrameBounds fb;
  fb.lower_theory = n * ghat(0) * ghat(0);
  fb.a = scaled.minCoeff();
  fb.b = scaled.maxCoeff();
  fb.upper_theory = n * n * mu * mu * ghat.squaredNorm();
  return fb;
}

struct FrameCheck {
  double ratio = 0.0;           ///< sum |Sf(i,k)|^2 / ||f||^2
  double a = 0.0;
  double b = 0.0;
  bool within_bounds = false;   ///< ratio in [A - eps, B + eps], eps = 1e-8 B
  double identity_rel_error = 0.0;  ///< vs N sum_n |f(n)|^2 ||T_n g||^2
  bool identity_holds = false;      ///< identity_rel_error <= 1e-8
};

template <class Derived>
FrameCheck frame_inequality_check(const Spectrum& s, const Kernel& g, const Eigen::MatrixBase<Derived>& f) {
  const double f_norm_sq = f.squaredNorm();
  detail::require(f_norm_sq > 0.0, ErrorKind::zero_signal, "frame check needs a nonzero signal");
  const WgftCoefficients c = transform(s, g, f);
  const FrameBounds fb = frame_bounds(s, g);
  const double energy = c.matrix.cwiseAbs2().sum();
  const Eigen::VectorXd norms_sq = translated_norms_sq(s, kernel_evaluate(g, s));
  const double n = static_cast<double>(s.size());
  const double identity = n * f.cwiseAbs2().dot(norms_sq);

  FrameCheck out;
  out.ratio = energy / f_norm_sq;
  out.a = fb.a;
  out.b = fb.b;
  const double eps = 1e-8 * fb.b;
  out.within_bounds = out.ratio >= fb.a - eps && out.ratio <= fb.b + eps;
  out.identity_rel_error = std::abs(energy - identity) / std::max(identity, std::numeric_limits<double>::min());
  out.identity_holds = out.identity_rel_error <= 1e-8;
  return out;
}

/// Inverts the transform: f(n) = sum_{i,k} Sf(i,k) g_{i,k}(n) / (N ||T_n g||^2).
inline ComplexSignal reconstruct(const Spectrum& s, const Kernel& g, const WgftCoefficients& c) {
  detail::check_variant(s, Variant::combinatorial);
  detail::check_dims(s.size(), c.matrix.rows(), "reconstruct rows");
  detail::check_dims(s.size(), c.matrix.cols(), "reconstruct cols");
  const Eigen::VectorXd ghat = kernel_evaluate(g, s);
  detail::require(std::abs(ghat(0)) > 1e-14 * ghat.cwiseAbs().maxCoeff(), ErrorKind::zero_mean_window,
                  "window has ghat(0) = 0; reconstruction is undefined");
  const Eigen::VectorXd norms_sq = translated_norms_sq(s, ghat);
  const double min_norm = std::sqrt(norms_sq.minCoeff());
  detail::require(min_norm > kNearSingularRefuse, ErrorKind::near_singular_norm,
                  "a translated window has norm " + std::to_string(min_norm));
  if (min_norm < kNearSingularWarn) {
    std::clog << "vfa: warning: smallest translated window norm is " << min_norm
              << "; reconstruction is ill-conditioned\n";
  }

  const double n = static_cast<double>(s.size());
  const Eigen::MatrixXd t = translation_matrix(s, ghat);
  // y(n, i) = sqrt(N) sum_k Sf(i,k) chi_k(n), then weight by T_i g(n) and sum over i.
  const Eigen::MatrixXcd y = std::sqrt(n) * (s.eigenvectors() * c.matrix.transpose());
  const Eigen::VectorXcd acc = (y.array() * t.array().cast<std::complex<double>>()).rowwise().sum();
  return acc.cwiseQuotient((n * norms_sq).cast<std::complex<double>>());
}

/// |Sf(i,k)|^2.
inline Eigen::MatrixXd spectrogram(const WgftCoefficients& c) { return c.matrix.cwiseAbs2(); }

}  // namespace vfa
