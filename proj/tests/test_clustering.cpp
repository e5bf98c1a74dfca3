#include <gtest/gtest.h>

#include "support.hpp"

using namespace vfa;
using vfa::test::path;

namespace {

// Cliques of sizes m and m + 1 so that their internal eigenvalues differ and
// no eigenspace mixes the two.
Graph two_cliques(Index m, double bridge) {
  std::vector<Edge> e;
  for (auto [base, size] : {std::pair{Index(0), m}, std::pair{m, m + 1}})
    for (Index a = 0; a < size; ++a)
      for (Index b = a + 1; b < size; ++b) e.push_back({base + a, base + b, 1.0});
  e.push_back({m - 1, m, bridge});
  return build_graph(e, 2 * m + 1);
}

std::vector<int> clique_truth(Index m) {
  std::vector<int> t(static_cast<std::size_t>(2 * m + 1), 0);
  for (Index v = m; v < 2 * m + 1; ++v) t[static_cast<std::size_t>(v)] = 1;
  return t;
}

}  // namespace

TEST(SpectralCluster, SeparatesWeaklyJoinedCliques) {
  const Spectrum s = eigendecompose(two_cliques(5, 1e-3));
  const ClusterAssignment c = spectral_cluster(s, 2, 1);
  EXPECT_EQ(c.labels, clique_truth(5));
  EXPECT_EQ(c.k, 2);
}

TEST(SpectralCluster, OneClusterPerVertexAndErrors) {
  const Spectrum s = eigendecompose(path(12));
  const ClusterAssignment c = spectral_cluster(s, 12, 3);
  EXPECT_NEAR(c.inertia, 0.0, 1e-20);
  std::vector<int> sorted = c.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < 12; ++v) EXPECT_EQ(sorted[static_cast<std::size_t>(v)], v);
  EXPECT_THROW(spectral_cluster(s, 1, 1), Error);
  EXPECT_THROW(spectral_cluster(s, 13, 1), Error);
}

TEST(SpectralCluster, Deterministic) {
  const Spectrum s = eigendecompose(test::sensor(150, 2));
  const ClusterAssignment a = spectral_cluster(s, 5, 42);
  const ClusterAssignment b = spectral_cluster(s, 5, 42);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.inertia, b.inertia);
  for (int label : a.labels) EXPECT_TRUE(label >= 0 && label < 5);
  EXPECT_EQ(a.labels.front(), 0);
}

TEST(KMeans, LloydInertiaNeverIncreases) {
  std::mt19937_64 data(9);
  Eigen::MatrixXd x(200, 3);
  for (Index r = 0; r < 200; ++r) x.row(r) = test::random_vector(3, data).transpose() + Eigen::RowVector3d(r % 4, 0, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(trial));
    const detail::LloydRun run = detail::lloyd(x, 4, rng, KMeansOptions{});
    ASSERT_GE(run.history.size(), 1u);
    EXPECT_LE(run.history.size(), 301u);
    for (std::size_t t = 1; t < run.history.size(); ++t) EXPECT_LE(run.history[t], run.history[t - 1] * (1 + 1e-12));
    EXPECT_EQ(run.inertia, run.history.back());
  }
}

TEST(KMeans, EveryClusterNonEmpty) {
  Eigen::MatrixXd x(6, 1);
  x << 0, 0, 0, 1, 1, 5;
  const ClusterAssignment c = kmeans(x, 3, 1);
  std::vector<int> count(3, 0);
  for (int l : c.labels) ++count[static_cast<std::size_t>(l)];
  for (int n : count) EXPECT_GT(n, 0);
  EXPECT_NEAR(c.inertia, 0.0, 1e-12);
}

TEST(SignalAdapted, FeaturesBounded) {
  std::mt19937_64 rng(10);
  const Spectrum s = eigendecompose(test::sensor(60, 3));
  const Signal f = test::random_vector(60, rng);
  const Eigen::MatrixXd y = signal_adapted_features(s, f, Kernel::heat(0.3), 0.75);
  const Eigen::MatrixXd mag = transform(s, Kernel::heat(0.3), f).matrix.cwiseAbs();
  EXPECT_GE(y.minCoeff(), 0.0);
  EXPECT_LE(y.maxCoeff(), 1.0);
  // tanh rounds to exactly 1 in double precision once its argument passes ~19
  for (Index i = 0; i < 60; ++i)
    for (Index k = 0; k < 60; ++k) {
      if (0.75 * mag(i, k) < 18.0) {
        EXPECT_LT(y(i, k), 1.0);
      }
    }
}

TEST(SignalAdapted, NarrowWindowMatchesSpectralClustering) {
  const Spectrum s = eigendecompose(two_cliques(5, 1e-3));
  const Signal f = Signal::Ones(11);
  const ClusterAssignment a = signal_adapted_cluster(s, f, Kernel::heat(1e-4), 0.1, 2, 1);
  EXPECT_EQ(a.labels, spectral_cluster(s, 2, 1).labels);
}

TEST(SignalAdapted, Errors) {
  const Spectrum s = eigendecompose(path(10));
  const Signal f = Signal::Ones(10);
  try {
    signal_adapted_cluster(s, f, Kernel::heat(1.0), 1e-300, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::bad_k);
  }
  EXPECT_THROW(signal_adapted_features(s, f, Kernel::heat(1.0), 0.0), Error);
  try {
    signal_adapted_cluster(s, f, Kernel::sampled(Eigen::VectorXd::Zero(10)), 1.0, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::zero_window);
  }
}

TEST(SignalAdapted, Deterministic) {
  std::mt19937_64 rng(11);
  const Spectrum s = eigendecompose(test::sensor(80, 1));
  const Eigen::VectorXd f = test::random_vector(80, rng);
  const ClusterAssignment a = signal_adapted_cluster(s, f, Kernel::heat(0.3), 0.75, 4, 7);
  const ClusterAssignment b = signal_adapted_cluster(s, f, Kernel::heat(0.3), 0.75, 4, 7);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.inertia, b.inertia);
}

TEST(BandFilters, CoverageAndShape) {
  const Spectrum s = eigendecompose(test::sensor(120, 2));
  const std::vector<Band> bands = equal_bands(s, 4);
  ASSERT_EQ(bands.size(), 4u);
  EXPECT_EQ(bands.front().lo, 0.0);
  EXPECT_EQ(bands.back().hi, s.lambda_max());
  const std::vector<Kernel> bank = band_filter_bank(s, bands);
  Eigen::VectorXd cover = Eigen::VectorXd::Zero(120);
  for (const Kernel& k : bank) cover += kernel_evaluate(k, s).cwiseAbs2();
  EXPECT_GT(cover.minCoeff(), 0.0);
  const Eigen::VectorXd h = kernel_evaluate(bank[1], s);
  for (Index l = 0; l < 120; ++l) {
    const double x = s.lambda(l);
    if (x < bands[1].lo || x > bands[1].hi) {
      EXPECT_EQ(h(l), 0.0);
    } else {
      const double c = 0.5 * (bands[1].lo + bands[1].hi), w = bands[1].hi - bands[1].lo;
      EXPECT_NEAR(h(l), 0.5 * (1 + std::cos(std::numbers::pi * (x - c) / w)), 1e-15);
      EXPECT_GE(h(l), 0.5 - 1e-12);
    }
  }
}

TEST(BandFilters, LowBandMasksHighFrequencies) {
  std::mt19937_64 rng(12);
  const Spectrum s = eigendecompose(test::sensor(150, 4));
  const Band low{0.0, s.lambda_max() / 4};
  const Kernel h = band_filter_bank(s, {low}).front();
  const Signal noise = test::random_vector(150, rng);
  const Eigen::VectorXd fh = gft(s, spectral_filter(s, h, noise));
  double above = 0.0;
  for (Index l = 0; l < 150; ++l)
    if (s.lambda(l) > low.hi) above += fh(l) * fh(l);
  EXPECT_LE(above, 1e-12 * fh.squaredNorm());
}

TEST(BandFilters, Errors) {
  const Spectrum s = eigendecompose(path(10));
  for (Band b : {Band{-0.1, 1.0}, Band{1.0, 1.0}, Band{2.0, 1.0}, Band{0.0, 10.0}}) {
    try {
      band_filter_bank(s, {b});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::bad_band);
    }
  }
}

TEST(Restriction, ZeroesComplementAndBallsFollowHops) {
  const Graph g = path(10);
  const DistanceMatrix dm = geodesic_distances(g);
  const std::vector<Index> b = ball(dm, 4, 2);
  EXPECT_EQ(b, (std::vector<Index>{2, 3, 4, 5, 6}));
  const Signal f = Signal::LinSpaced(10, 1, 10);
  const Signal r = restrict_to(f, b);
  for (Index v = 0; v < 10; ++v) EXPECT_EQ(r(v), (v >= 2 && v <= 6) ? f(v) : 0.0);
}

TEST(AdjustedRand, MatchesPairCountingOracle) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> lab(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> a(60), b(60);
    for (std::size_t p = 0; p < 60; ++p) {
      a[p] = lab(rng);
      b[p] = trial % 2 ? lab(rng) : (a[p] + (p % 7 == 0)) % 4;
    }
    EXPECT_NEAR(adjusted_rand_index(a, b), test::ari_oracle(a, b), 1e-12);
  }
  const std::vector<int> x{0, 0, 1, 1, 2, 2};
  EXPECT_DOUBLE_EQ(adjusted_rand_index(x, {5, 5, 3, 3, 9, 9}), 1.0);
  EXPECT_THROW(adjusted_rand_index(x, {0, 1}), Error);
}
