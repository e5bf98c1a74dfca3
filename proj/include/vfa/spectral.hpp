#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/graph.hpp"

namespace vfa {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Signal = Eigen::VectorXd;
using ComplexSignal = Eigen::VectorXcd;

/// Ordered Laplacian eigenpairs. Column l of eigenvectors() is chi_l, with the
/// first entry exceeding 1e-8 in magnitude made positive.
class Spectrum {
 public:
  Spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors, Variant variant, Eigen::VectorXd degrees,
           std::uint64_t source_hash)
      : eigenvalues_(std::move(eigenvalues)),
        eigenvectors_(std::move(eigenvectors)),
        degrees_(std::move(degrees)),
        variant_(variant),
        source_hash_(source_hash) {}

  Index size() const { return eigenvalues_.size(); }
  Variant variant() const { return variant_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double lambda(Index l) const { return eigenvalues_(l); }
  double lambda_max() const { return eigenvalues_(size() - 1); }
  auto chi(Index l) const { return eigenvectors_.col(l); }

  /// Vertex degrees of the source graph; empty when built from a bare matrix.
  const Eigen::VectorXd& degrees() const { return degrees_; }
  bool has_degrees() const { return degrees_.size() == size(); }

  /// sqrt(N) for the combinatorial basis, ||sqrt(d)||_2 for the normalized one.
  double translation_constant() const {
    if (variant_ == Variant::combinatorial) return std::sqrt(static_cast<double>(size()));
    detail::require(has_degrees(), ErrorKind::dimension_mismatch,
                    "normalized spectrum needs graph degrees; build it from a Graph");
    return std::sqrt(degrees_.sum());
  }

  std::uint64_t source_hash() const { return source_hash_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd degrees_;
  Variant variant_;
  std::uint64_t source_hash_;
};

namespace detail {

inline void apply_sign_convention(Eigen::MatrixXd& v) {
  for (Index l = 0; l < v.cols(); ++l) {
    for (Index n = 0; n < v.rows(); ++n) {
      if (std::abs(v(n, l)) > 1e-8) {
        if (v(n, l) < 0.0) v.col(l) *= -1.0;
        break;
      }
    }
  }
}

inline void check_dims(Index expected, Index got, const char* what) {
  require(expected == got, ErrorKind::dimension_mismatch,
          std::string(what) + ": expected length " + std::to_string(expected) + ", got " + std::to_string(got));
}

}  // namespace detail

/// Full eigendecomposition of a symmetric Laplacian. `degrees` is optional for
/// the combinatorial variant and required for normalized translation and
/// modulation.
inline Spectrum eigendecompose(const Eigen::MatrixXd& l, Variant variant = Variant::combinatorial,
                               Eigen::VectorXd degrees = {}) {
  const Index n = l.rows();
  detail::require(n > 0 && l.cols() == n, ErrorKind::dimension_mismatch, "Laplacian must be square");
  const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
  detail::require((l - l.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::not_symmetric,
                  "Laplacian is not symmetric");
  if (degrees.size() != 0) detail::check_dims(n, degrees.size(), "degrees");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  detail::require(solver.info() == Eigen::Success, ErrorKind::eigensolver_failure, "symmetric eigensolver did not converge");

  Eigen::VectorXd values = solver.eigenvalues();
  Eigen::MatrixXd vectors = solver.eigenvectors();
  for (Index k = 0; k < n; ++k) {
    if (values(k) < 0.0 && values(k) > -1e-10) values(k) = 0.0;
  }
  detail::apply_sign_convention(vectors);

  // The null vector of a connected graph's Laplacian is known in closed form;
  // use it instead of the solver's approximation when the eigenvalue is simple.
  const bool simple_null = n == 1 || values(1) - values(0) > 1e-10 * scale;
  if (simple_null) {
    if (variant == Variant::combinatorial) {
      const Eigen::VectorXd c = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
      if ((vectors.col(0) - c).cwiseAbs().maxCoeff() < 1e-6) vectors.col(0) = c;
    } else if (degrees.size() == n) {
      const Eigen::VectorXd c = degrees.cwiseSqrt() / std::sqrt(degrees.sum());
      if ((vectors.col(0) - c).cwiseAbs().maxCoeff() < 1e-6) vectors.col(0) = c;
    }
  }
  return Spectrum(std::move(values), std::move(vectors), variant, std::move(degrees), detail::hash_matrix(l));
}

inline Spectrum eigendecompose(const Graph& g, Variant variant = Variant::combinatorial) {
  return eigendecompose(laplacian(g, variant), variant, g.degrees());
}

/// Forward graph Fourier transform: fhat(l) = sum_n f(n) conj(chi_l(n)).
template <class Derived>
Vector<typename Derived::Scalar> gft(const Spectrum& s, const Eigen::MatrixBase<Derived>& f) {
  detail::check_dims(s.size(), f.size(), "gft");
  return s.eigenvectors().transpose() * f;
}

/// Inverse graph Fourier transform: f(n) = sum_l fhat(l) chi_l(n).
template <class Derived>
Vector<typename Derived::Scalar> igft(const Spectrum& s, const Eigen::MatrixBase<Derived>& fhat) {
  detail::check_dims(s.size(), fhat.size(), "igft");
  return s.eigenvectors() * fhat;
}

struct CoherenceReport {
  double mu = 0.0;
  Eigen::VectorXd mu_per_eigvec;  ///< max_i |chi_l(i)|
  Eigen::VectorXd nu_per_vertex;  ///< max_l |chi_l(i)|
};

inline CoherenceReport coherence(const Spectrum& s) {
  const Eigen::MatrixXd a = s.eigenvectors().cwiseAbs();
  CoherenceReport r;
  r.mu_per_eigvec = a.colwise().maxCoeff().transpose();
  r.nu_per_vertex = a.rowwise().maxCoeff();
  r.mu = r.mu_per_eigvec.maxCoeff();
  return r;
}

}  // namespace vfa
