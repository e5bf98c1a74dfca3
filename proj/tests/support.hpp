#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vfa/vfa.hpp"

namespace vfa::test {

inline std::string fixture(const std::string& name) { return std::string(VFA_FIXTURE_DIR) + "/" + name; }

inline Graph path(Index n) { return generate_graph(PathSpec{n}); }
inline Graph ring(Index n) { return generate_graph(RingSpec{n}); }
inline Graph comet(Index n, Index c) { return generate_graph(CometSpec{n, c}); }
inline Graph sensor(Index n, std::uint64_t seed) {
  auto [s1, s2] = default_sensor_sigmas(n);
  return generate_graph(SensorSpec{n, s1, s2, seed});
}

inline Eigen::VectorXd random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (Index k = 0; k < n; ++k) v(k) = d(rng);
  return v;
}

inline double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).norm() / b.norm(); }

// Oracles below are written from the definitions with explicit loops and do
// not call into the library's operator code.

/// L = D - W assembled entry by entry.
inline Eigen::MatrixXd laplacian_oracle(const Eigen::MatrixXd& w) {
  const Index n = w.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    double d = 0.0;
    for (Index j = 0; j < n; ++j) {
      d += w(i, j);
      if (i != j) l(i, j) = -w(i, j);
    }
    l(i, i) = d;
  }
  return l;
}

/// c * sum_l ghat(l) chi_l(i) chi_l(n) as a triple loop.
inline Eigen::VectorXd translate_oracle(const Eigen::MatrixXd& chi, const Eigen::VectorXd& ghat, Index i, double c) {
  const Index n = chi.rows();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Index v = 0; v < n; ++v) {
    double acc = 0.0;
    for (Index l = 0; l < n; ++l) acc += ghat(l) * chi(i, l) * chi(v, l);
    out(v) = c * acc;
  }
  return out;
}

/// sum_l fhat(l) ghat(l) chi_l(n) with fhat, ghat from explicit inner products.
inline Eigen::VectorXd convolve_oracle(const Eigen::MatrixXd& chi, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  const Index n = chi.rows();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Index l = 0; l < n; ++l) {
    double fh = 0.0, gh = 0.0;
    for (Index v = 0; v < n; ++v) {
      fh += f(v) * chi(v, l);
      gh += g(v) * chi(v, l);
    }
    for (Index v = 0; v < n; ++v) out(v) += fh * gh * chi(v, l);
  }
  return out;
}

/// All-pairs hop counts by Floyd-Warshall.
inline Eigen::MatrixXi floyd_warshall(const Eigen::MatrixXd& w) {
  const Index n = w.rows();
  const int inf = 1 << 28;
  Eigen::MatrixXi d = Eigen::MatrixXi::Constant(n, n, inf);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0;
    for (Index j = 0; j < n; ++j)
      if (w(i, j) > 0.0) d(i, j) = 1;
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

/// Adjusted Rand index by counting agreeing pairs one pair at a time.
inline double ari_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  double both = 0.0, in_a = 0.0, in_b = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const bool sa = a[p] == a[q];
      const bool sb = b[p] == b[q];
      both += sa && sb;
      in_a += sa;
      in_b += sb;
    }
  }
  const double pairs = n * (n - 1) / 2.0;
  const double expected = in_a * in_b / pairs;
  return (both - expected) / (0.5 * (in_a + in_b) - expected);
}

}  // namespace vfa::test
