#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vfa/error.hpp"

namespace vfa {

using Index = Eigen::Index;

/// Which Laplacian a spectrum (and every operator built on it) refers to.
enum class Variant { combinatorial, normalized };

constexpr std::string_view to_string(Variant v) {
  return v == Variant::combinatorial ? "combinatorial" : "normalized";
}

/// Undirected weighted edge; vertex indices are 0-based.
struct Edge {
  Index i = 0;
  Index j = 0;
  double weight = 1.0;
};

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t k = 0; k < bytes; ++k) {
    h ^= p[k];
    h *= 1099511628211ull;
  }
  return h;
}

template <class Derived>
std::uint64_t hash_matrix(const Eigen::DenseBase<Derived>& m, std::uint64_t seed = 1469598103934665603ull) {
  const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> dense = m;
  std::int64_t dims[2] = {static_cast<std::int64_t>(dense.rows()), static_cast<std::int64_t>(dense.cols())};
  std::uint64_t h = fnv1a(dims, sizeof(dims), seed);
  return fnv1a(dense.data(), sizeof(typename Derived::Scalar) * static_cast<std::size_t>(dense.size()), h);
}

// Uniform double in [0,1) from the top 53 bits, independent of the standard
// library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t k = v.size(); k > 1; --k) {
    std::swap(v[k - 1], v[uniform_index(rng, k)]);
  }
}

inline std::vector<std::vector<Index>> neighbor_lists(const Eigen::MatrixXd& w) {
  std::vector<std::vector<Index>> nbrs(static_cast<std::size_t>(w.rows()));
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = 0; j < w.cols(); ++j)
      if (w(i, j) > 0.0) nbrs[static_cast<std::size_t>(i)].push_back(j);
  return nbrs;
}

inline bool is_connected(const Eigen::MatrixXd& w) {
  const Index n = w.rows();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index count = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v = 0; v < n; ++v) {
      if (w(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace detail

/// Undirected, connected, weighted graph stored as a dense adjacency matrix.
/// Instances are immutable once constructed and always satisfy the class
/// invariants (symmetric nonnegative W, zero diagonal, connected support).
class Graph {
 public:
  /// Validates and adopts a dense adjacency matrix.
  static Graph from_adjacency(Eigen::MatrixXd w) {
    const Index n = w.rows();
    detail::require(n > 0 && w.cols() == n, ErrorKind::dimension_mismatch, "adjacency must be square and nonempty");
    for (Index i = 0; i < n; ++i) {
      detail::require(w(i, i) == 0.0, ErrorKind::self_loop, "nonzero diagonal at vertex " + std::to_string(i + 1));
      for (Index j = 0; j < n; ++j) {
        detail::require(std::isfinite(w(i, j)) && w(i, j) >= 0.0, ErrorKind::non_positive_weight,
                        "negative or non-finite weight");
        detail::require(std::abs(w(i, j) - w(j, i)) <= 1e-12, ErrorKind::not_symmetric, "adjacency not symmetric");
      }
    }
    detail::require(detail::is_connected(w), ErrorKind::disconnected_graph, "graph is not connected");
    Graph g;
    g.degrees_ = w.rowwise().sum();
    g.adjacency_ = std::move(w);
    return g;
  }

  /// Assembles a graph from an undirected 0-based edge list.
  static Graph from_edges(std::span<const Edge> edges, Index n) {
    detail::require(n > 0, ErrorKind::dimension_mismatch, "vertex count must be positive");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : edges) {
      detail::require(e.i >= 0 && e.i < n && e.j >= 0 && e.j < n, ErrorKind::index_out_of_range,
                      "edge endpoint out of range");
      detail::require(e.i != e.j, ErrorKind::self_loop, "self loop at vertex " + std::to_string(e.i + 1));
      detail::require(e.weight > 0.0 && std::isfinite(e.weight), ErrorKind::non_positive_weight,
                      "edge weight must be positive");
      detail::require(w(e.i, e.j) == 0.0, ErrorKind::duplicate_edge,
                      "duplicate edge (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")");
      w(e.i, e.j) = e.weight;
      w(e.j, e.i) = e.weight;
    }
    return from_adjacency(std::move(w));
  }

  Index size() const { return adjacency_.rows(); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const Eigen::VectorXd& degrees() const { return degrees_; }
  double min_degree() const { return degrees_.minCoeff(); }
  double max_degree() const { return degrees_.maxCoeff(); }

  /// Number of neighbors of each vertex, ignoring weights.
  Eigen::VectorXi hop_degrees() const { return (adjacency_.array() > 0.0).cast<int>().rowwise().sum(); }

  /// Edges with i < j in row-major order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Index i = 0; i < size(); ++i)
      for (Index j = i + 1; j < size(); ++j)
        if (adjacency_(i, j) > 0.0) out.push_back({i, j, adjacency_(i, j)});
    return out;
  }

  /// Vertex coordinates (one row per vertex) for geometric generators; empty otherwise.
  const Eigen::MatrixXd& coordinates() const { return coordinates_; }

  Graph with_coordinates(Eigen::MatrixXd coords) const {
    detail::require(coords.rows() == size(), ErrorKind::dimension_mismatch, "coordinate rows must equal N");
    Graph g = *this;
    g.coordinates_ = std::move(coords);
    return g;
  }

  /// Hash of the adjacency bytes; identical graphs hash identically.
  std::uint64_t content_hash() const { return detail::hash_matrix(adjacency_); }

 private:
  Graph() = default;

  Eigen::MatrixXd adjacency_;
  Eigen::VectorXd degrees_;
  Eigen::MatrixXd coordinates_;
};

inline Graph build_graph(std::span<const Edge> edges, Index n) { return Graph::from_edges(edges, n); }

// ---------------------------------------------------------------------------
// Generators

struct PathSpec {
  Index n;
};
struct RingSpec {
  Index n;
};
/// Star of `center_degree` neighbors around vertex 0: center_degree-1 pendant
/// leaves plus the first vertex of a path through the remaining vertices.
struct CometSpec {
  Index n;
  Index center_degree;
};
struct RandomRegularSpec {
  Index n;
  Index degree;
  std::uint64_t seed;
};
/// Uniform points in the unit square joined by a thresholded Gaussian kernel.
struct SensorSpec {
  Index n;
  double sigma1;
  double sigma2;
  std::uint64_t seed;
};
/// Points on a Swiss roll rescaled to unit diameter, same weighting as SensorSpec.
struct SwissRollSpec {
  Index n;
  double sigma1;
  double sigma2;
  std::uint64_t seed;
};

using GraphSpec = std::variant<PathSpec, RingSpec, CometSpec, RandomRegularSpec, SensorSpec, SwissRollSpec>;

/// Attempts allowed for random families before giving up on connectivity.
inline constexpr int kConnectivityRetries = 50;

/// Sensor-network sigmas that keep the expected degree of the N=500,
/// (0.074, 0.075) configuration at other sizes.
inline std::pair<double, double> default_sensor_sigmas(Index n) {
  const double s = std::sqrt(500.0 / static_cast<double>(n));
  return {0.074 * s, 0.075 * s};
}

namespace detail {

inline Eigen::MatrixXd gaussian_threshold_weights(const Eigen::MatrixXd& coords, double sigma1, double sigma2) {
  const Index n = coords.rows();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = (coords.row(i) - coords.row(j)).norm();
      if (d <= sigma2) {
        const double v = std::exp(-d * d / (2.0 * sigma1 * sigma1));
        w(i, j) = v;
        w(j, i) = v;
      }
    }
  }
  return w;
}

inline Graph geometric_graph(Index n, double sigma1, double sigma2, std::uint64_t seed, bool swiss_roll) {
  require(n >= 2, ErrorKind::infeasible_spec, "geometric graphs need at least 2 vertices");
  require(sigma1 > 0.0 && sigma2 > 0.0, ErrorKind::infeasible_spec, "sigmas must be positive");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Eigen::MatrixXd coords(n, swiss_roll ? 3 : 2);
    for (Index v = 0; v < n; ++v) {
      if (swiss_roll) {
        const double t = 1.5 * std::numbers::pi + 3.0 * std::numbers::pi * uniform01(rng);
        const double h = 21.0 * uniform01(rng);
        coords.row(v) << t * std::cos(t), h, t * std::sin(t);
      } else {
        const double x = uniform01(rng);
        const double y = uniform01(rng);
        coords.row(v) << x, y;
      }
    }
    if (swiss_roll) {
      double diam = 0.0;
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) diam = std::max(diam, (coords.row(i) - coords.row(j)).norm());
      if (diam > 0.0) coords /= diam;
    }
    Eigen::MatrixXd w = gaussian_threshold_weights(coords, sigma1, sigma2);
    if (is_connected(w)) return Graph::from_adjacency(std::move(w)).with_coordinates(std::move(coords));
  }
  fail(ErrorKind::connectivity_retries_exceeded,
       "no connected placement after " + std::to_string(kConnectivityRetries) + " attempts");
}

// Stub pairing that only ever joins distinct, non-adjacent vertices; leftover
// stubs are re-paired until none remain or no legal pair exists.
inline std::optional<Eigen::MatrixXd> try_random_regular(Index n, Index d, std::mt19937_64& rng) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::vector<Index> stubs;
  stubs.reserve(static_cast<std::size_t>(n * d));
  for (Index v = 0; v < n; ++v)
    for (Index r = 0; r < d; ++r) stubs.push_back(v);
  while (!stubs.empty()) {
    shuffle(stubs, rng);
    std::vector<Index> leftover;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      const Index a = stubs[k];
      const Index b = stubs[k + 1];
      if (a != b && w(a, b) == 0.0) {
        w(a, b) = 1.0;
        w(b, a) = 1.0;
      } else {
        leftover.push_back(a);
        leftover.push_back(b);
      }
    }
    if (leftover.empty()) break;
    std::vector<Index> distinct = leftover;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bool suitable = false;
    for (std::size_t x = 0; x < distinct.size() && !suitable; ++x)
      for (std::size_t y = x + 1; y < distinct.size() && !suitable; ++y)
        suitable = w(distinct[x], distinct[y]) == 0.0;
    if (!suitable) return std::nullopt;
    stubs = std::move(leftover);
  }
  return w;
}

}  // namespace detail

/// Builds a graph from one of the supported generator families. Random
/// families are bit-identical for identical specs and seeds.
inline Graph generate_graph(const GraphSpec& spec) {
  using detail::require;
  return std::visit(
      [](const auto& s) -> Graph {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PathSpec>) {
          require(s.n >= 2, ErrorKind::infeasible_spec, "path needs n >= 2");
          std::vector<Edge> e;
          for (Index v = 0; v + 1 < s.n; ++v) e.push_back({v, v + 1, 1.0});
          return Graph::from_edges(e, s.n);
        } else if constexpr (std::is_same_v<S, RingSpec>) {
          require(s.n >= 3, ErrorKind::infeasible_spec, "ring needs n >= 3");
          std::vector<Edge> e;
          for (Index v = 0; v < s.n; ++v) e.push_back({v, (v + 1) % s.n, 1.0});
          return Graph::from_edges(e, s.n);
        } else if constexpr (std::is_same_v<S, CometSpec>) {
          require(s.center_degree >= 1 && s.center_degree < s.n, ErrorKind::infeasible_spec,
                  "comet needs 1 <= center_degree < n");
          std::vector<Edge> e;
          for (Index v = 1; v < s.center_degree; ++v) e.push_back({0, v, 1.0});
          e.push_back({0, s.center_degree, 1.0});
          for (Index v = s.center_degree; v + 1 < s.n; ++v) e.push_back({v, v + 1, 1.0});
          return Graph::from_edges(e, s.n);
        } else if constexpr (std::is_same_v<S, RandomRegularSpec>) {
          require(s.degree >= 1 && s.degree < s.n, ErrorKind::infeasible_spec, "need 1 <= degree < n");
          require((s.n * s.degree) % 2 == 0, ErrorKind::infeasible_spec, "n * degree must be even");
          std::mt19937_64 rng(s.seed);
          for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
            auto w = detail::try_random_regular(s.n, s.degree, rng);
            if (w && detail::is_connected(*w)) return Graph::from_adjacency(std::move(*w));
          }
          detail::fail(ErrorKind::connectivity_retries_exceeded, "random regular generation failed");
        } else if constexpr (std::is_same_v<S, SensorSpec>) {
          return detail::geometric_graph(s.n, s.sigma1, s.sigma2, s.seed, false);
        } else {
          return detail::geometric_graph(s.n, s.sigma1, s.sigma2, s.seed, true);
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Laplacians and distances

inline Eigen::MatrixXd laplacian(const Graph& g, Variant variant = Variant::combinatorial) {
  Eigen::MatrixXd l = -g.adjacency();
  l.diagonal() += g.degrees();
  if (variant == Variant::normalized) {
    const Eigen::VectorXd inv_sqrt = g.degrees().cwiseSqrt().cwiseInverse();
    l = inv_sqrt.asDiagonal() * l * inv_sqrt.asDiagonal();
    l.diagonal().setOnes();
    l = 0.5 * (l + l.transpose()).eval();
  }
  return l;
}

/// Unweighted shortest-path (hop count) distances between all vertex pairs.
struct DistanceMatrix {
  Eigen::MatrixXi dist;
  int diameter = 0;

  int operator()(Index i, Index n) const { return dist(i, n); }
  Index size() const { return dist.rows(); }

  /// Number of vertices at exactly distance r from i.
  Index ring_size(Index i, int r) const { return (dist.row(i).array() == r).count(); }
};

inline DistanceMatrix geodesic_distances(const Graph& g) {
  const Index n = g.size();
  const auto nbrs = detail::neighbor_lists(g.adjacency());
  DistanceMatrix dm;
  dm.dist = Eigen::MatrixXi::Constant(n, n, -1);
  std::vector<Index> queue(static_cast<std::size_t>(n));
  for (Index s = 0; s < n; ++s) {
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    dm.dist(s, s) = 0;
    while (head < tail) {
      const Index u = queue[head++];
      for (Index v : nbrs[static_cast<std::size_t>(u)]) {
        if (dm.dist(s, v) < 0) {
          dm.dist(s, v) = dm.dist(s, u) + 1;
          queue[tail++] = v;
        }
      }
    }
  }
  dm.diameter = dm.dist.maxCoeff();
  return dm;
}

}  // namespace vfa
