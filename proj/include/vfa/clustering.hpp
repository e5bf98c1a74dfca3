#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/graph.hpp"
#include "vfa/kernel.hpp"
#include "vfa/spectral.hpp"
#include "vfa/wgft.hpp"

namespace vfa {

struct ClusterAssignment {
  std::vector<int> labels;  ///< one per point, in [0, k); relabeled by first appearance
  int k = 0;
  double inertia = 0.0;     ///< within-cluster sum of squared Euclidean distances
};

struct KMeansOptions {
  int restarts = 100;
  int max_iterations = 300;
  /// Stop once the relative inertia improvement falls below this.
  double tolerance = 1e-9;
};

namespace detail {

struct LloydRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  std::vector<double> history;
};

inline Eigen::MatrixXd plus_plus_init(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng) {
  const Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  Index first = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  centers.row(0) = x.row(first);
  taken[static_cast<std::size_t>(first)] = 1;
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = -1;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (Index p = 0; p < n; ++p) {
        r -= d2(p);
        if (r < 0.0 && d2(p) > 0.0) {
          pick = p;
          break;
        }
      }
      if (pick < 0) {
        for (Index p = n - 1; p >= 0 && pick < 0; --p)
          if (d2(p) > 0.0) pick = p;
      }
    } else {
      std::vector<Index> free;
      for (Index p = 0; p < n; ++p)
        if (!taken[static_cast<std::size_t>(p)]) free.push_back(p);
      pick = free[uniform_index(rng, free.size())];
    }
    taken[static_cast<std::size_t>(pick)] = 1;
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

inline double assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers, std::vector<int>& labels,
                     Eigen::VectorXd& dist) {
  const Index n = x.rows();
  double inertia = 0.0;
  for (Index p = 0; p < n; ++p) {
    const Eigen::VectorXd d = (centers.rowwise() - x.row(p)).rowwise().squaredNorm();
    Index best = 0;
    for (Index c = 1; c < d.size(); ++c)
      if (d(c) < d(best)) best = c;
    labels[static_cast<std::size_t>(p)] = static_cast<int>(best);
    dist(p) = d(best);
    inertia += d(best);
  }
  return inertia;
}

inline LloydRun lloyd(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng, const KMeansOptions& opts) {
  const Index n = x.rows();
  Eigen::MatrixXd centers = plus_plus_init(x, k, rng);
  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd dist(n);
  double inertia = assign(x, centers, run.labels, dist);
  run.history.push_back(inertia);
  for (int it = 0; it < opts.max_iterations; ++it) {
    // update step
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index p = 0; p < n; ++p) {
      sums.row(run.labels[static_cast<std::size_t>(p)]) += x.row(p);
      ++counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(p)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        continue;
      }
      // Empty cluster: split the largest one by moving its farthest point out.
      const auto largest = std::distance(counts.begin(), std::max_element(counts.begin(), counts.end()));
      Index far = -1;
      for (Index p = 0; p < n; ++p) {
        if (run.labels[static_cast<std::size_t>(p)] == largest && (far < 0 || dist(p) > dist(far))) far = p;
      }
      centers.row(c) = x.row(far);
      run.labels[static_cast<std::size_t>(far)] = c;
      dist(far) = 0.0;
      --counts[static_cast<std::size_t>(largest)];
      ++counts[static_cast<std::size_t>(c)];
    }
    const double next = assign(x, centers, run.labels, dist);
    run.history.push_back(next);
    const double improvement = inertia - next;
    inertia = next;
    if (improvement <= opts.tolerance * std::max(inertia, std::numeric_limits<double>::min())) break;
  }
  run.inertia = inertia;
  return run;
}

inline std::vector<int> relabel_by_first_appearance(const std::vector<int>& labels, int k) {
  std::vector<int> map(static_cast<std::size_t>(k), -1);
  int next = 0;
  std::vector<int> out(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) {
    int& m = map[static_cast<std::size_t>(labels[p])];
    if (m < 0) m = next++;
    out[p] = m;
  }
  return out;
}

}  // namespace detail

/// k-means with k-means++ seeding; the restart with the lowest inertia wins,
/// ties going to the earliest restart. Restart r draws from a generator
/// seeded with (seed, r).
inline ClusterAssignment kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                                const KMeansOptions& opts = {}) {
  const Index n = points.rows();
  detail::require(k >= 2 && k <= n, ErrorKind::bad_k, "need 2 <= k <= N, got k=" + std::to_string(k));
  detail::require((points.rowwise() - points.row(0)).cwiseAbs().maxCoeff() > 1e-12, ErrorKind::bad_k,
                  "features are numerically constant; cannot form more than one cluster");
  detail::LloydRun best;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    detail::LloydRun run = detail::lloyd(points, k, rng, opts);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  ClusterAssignment out;
  out.k = k;
  out.labels = detail::relabel_by_first_appearance(best.labels, k);
  out.inertia = best.inertia;
  return out;
}

/// k-means on the rows of [chi_0 ... chi_{k-1}].
inline ClusterAssignment spectral_cluster(const Spectrum& s, int k, std::uint64_t seed,
                                          const KMeansOptions& opts = {}) {
  detail::require(k >= 2 && k <= s.size(), ErrorKind::bad_k, "need 2 <= k <= N");
  return kmeans(s.eigenvectors().leftCols(k), k, seed, opts);
}

/// Feature rows y_i(k) = tanh(alpha |Sf(i,k)|).
template <class Derived>
Eigen::MatrixXd signal_adapted_features(const Spectrum& s, const Eigen::MatrixBase<Derived>& f, const Kernel& g,
                                        double alpha) {
  detail::require(alpha > 0.0, ErrorKind::bad_k, "alpha must be positive");
  const WgftCoefficients c = transform(s, g, f);
  return (alpha * c.matrix.cwiseAbs().array()).tanh().matrix();
}

template <class Derived>
ClusterAssignment signal_adapted_cluster(const Spectrum& s, const Eigen::MatrixBase<Derived>& f, const Kernel& g,
                                         double alpha, int k, std::uint64_t seed, const KMeansOptions& opts = {}) {
  return kmeans(signal_adapted_features(s, f, g, alpha), k, seed, opts);
}

/// Spectral band [lo, hi] for band_filter_bank.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

/// Raised-cosine bumps sampled on the spectrum: 0.5 (1 + cos(pi (lambda - c) / (hi - lo)))
/// inside [lo, hi] (c the band center, so edges sit at 1/2) and 0 outside.
inline std::vector<Kernel> band_filter_bank(const Spectrum& s, const std::vector<Band>& bands) {
  const double top = s.lambda_max() * (1.0 + 1e-12);
  std::vector<Kernel> out;
  for (const Band& b : bands) {
    detail::require(b.lo >= 0.0 && b.lo < b.hi && b.hi <= top, ErrorKind::bad_band,
                    "band must satisfy 0 <= lo < hi <= lambda_max");
    const double center = 0.5 * (b.lo + b.hi);
    const double width = b.hi - b.lo;
    Eigen::VectorXd v = s.eigenvalues().unaryExpr([&](double lambda) {
      if (lambda < b.lo || lambda > b.hi) return 0.0;
      return 0.5 * (1.0 + std::cos(std::numbers::pi * (lambda - center) / width));
    });
    out.push_back(Kernel::sampled(std::move(v)));
  }
  return out;
}

/// Splits [0, lambda_max] into `count` equal bands.
inline std::vector<Band> equal_bands(const Spectrum& s, int count) {
  std::vector<Band> out;
  const double step = s.lambda_max() / count;
  for (int b = 0; b < count; ++b) out.push_back({b * step, b + 1 == count ? s.lambda_max() : (b + 1) * step});
  return out;
}

/// f restricted to `members` (zero elsewhere).
inline Signal restrict_to(const Signal& f, const std::vector<Index>& members) {
  Signal out = Signal::Zero(f.size());
  for (Index v : members) out(v) = f(v);
  return out;
}

/// Vertices within `radius` hops of `center`.
inline std::vector<Index> ball(const DistanceMatrix& dm, Index center, int radius) {
  std::vector<Index> out;
  for (Index v = 0; v < dm.size(); ++v)
    if (dm(center, v) <= radius) out.push_back(v);
  return out;
}

/// Hubert-Arabie adjusted Rand index between two labelings of the same points.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  detail::check_dims(static_cast<Index>(a.size()), static_cast<Index>(b.size()), "adjusted_rand_index");
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ca, cb;
  for (std::size_t p = 0; p < a.size(); ++p) {
    joint[{a[p], b[p]}] += 1.0;
    ca[a[p]] += 1.0;
    cb[b[p]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : joint) index += choose2(c);
  for (const auto& [key, c] : ca) sum_a += choose2(c);
  for (const auto& [key, c] : cb) sum_b += choose2(c);
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace vfa
