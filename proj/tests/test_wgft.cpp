#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace vfa;
using vfa::test::path;
using vfa::test::ring;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd three_segment_signal(const Spectrum& s) {
  Eigen::VectorXd f(180);
  f.segment(0, 60) = s.chi(10).segment(0, 60);
  f.segment(60, 60) = s.chi(60).segment(60, 60);
  f.segment(120, 60) = s.chi(30).segment(120, 60);
  return f;
}

}  // namespace

TEST(Atom, ZeroFrequencyIsTranslatedWindowAndOrderMatters) {
  const Spectrum s = eigendecompose(test::sensor(60, 1));
  const Kernel g = Kernel::heat(2.0);
  const Index n = s.size();
  for (Index i : {Index(0), Index(31)}) {
    EXPECT_LE((atom(s, g, i, 0) - translate(s, g, i)).cwiseAbs().maxCoeff(), 1e-12);
    for (Index k : {Index(3), Index(40)}) {
      EXPECT_LE((atom(s, g, i, k) - modulate(s, translate(s, g, i), k)).cwiseAbs().maxCoeff(), 1e-15);
      const Signal tm = atom(s, g, i, k, AtomOrder::translate_modulate);
      EXPECT_LE((tm - translate(s, modulate(s, igft(s, kernel_evaluate(g, s)), k), i)).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  EXPECT_THROW(atom(s, g, 0, n), Error);
}

TEST(Transform, RoutesAgree) {
  std::mt19937_64 rng(21);
  std::vector<Graph> graphs{path(40), ring(30), test::comet(40, 10), test::sensor(60, 3),
                            io::read_edge_list_file(test::fixture("sensor64.csv"))};
  for (const Graph& gr : graphs) {
    const Spectrum s = eigendecompose(gr);
    for (const Kernel& g : {Kernel::heat(3.0, true), Kernel::polynomial({1.0, -0.2, 0.01})}) {
      const Eigen::VectorXd f = test::random_vector(gr.size(), rng);
      const WgftCoefficients a = transform(s, g, f);
      const WgftCoefficients b = transform_direct(s, g, f);
      EXPECT_LE(max_abs(a.matrix - b.matrix), 1e-10);
      EXPECT_EQ(a.window_ref, b.window_ref);
      EXPECT_EQ(a.graph_ref, b.graph_ref);
    }
  }
}

TEST(Transform, ComplexSignalIsLinear) {
  std::mt19937_64 rng(22);
  const Spectrum s = eigendecompose(path(30));
  const Kernel g = Kernel::heat(1.0);
  const Eigen::VectorXd re = test::random_vector(30, rng), im = test::random_vector(30, rng);
  const Eigen::VectorXcd f = re.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>();
  const Eigen::MatrixXcd expect = transform(s, g, re).matrix + std::complex<double>(0, 1) * transform(s, g, im).matrix;
  EXPECT_LE(max_abs(transform(s, g, f).matrix - expect), 1e-12);
}

TEST(Transform, SelfInnerProductAndZero) {
  const Spectrum s = eigendecompose(test::sensor(50, 2));
  const Kernel g = Kernel::heat(1.5, true);
  const Signal a = atom(s, g, 7, 12);
  const WgftCoefficients c = transform(s, g, Signal(a / a.norm()));
  EXPECT_NEAR(c.matrix(7, 12).real(), a.norm(), 1e-12);
  EXPECT_NEAR(c.matrix(7, 12).imag(), 0.0, 1e-15);
  const WgftCoefficients z = transform(s, g, Signal::Zero(50));
  EXPECT_EQ(max_abs(z.matrix), 0.0);
  EXPECT_EQ(spectrogram(z).maxCoeff(), 0.0);
  try {
    transform(s, Kernel::sampled(Eigen::VectorXd::Zero(50)), Signal::Ones(50));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::zero_window);
  }
}

TEST(FrameBounds, PathTableRows) {
  const Spectrum s = eigendecompose(path(500));
  struct Row {
    double tau, lower, a, b, upper;
  };
  for (const Row& r : {Row{0.5, 3.2, 498.4, 846.2, 1000.0}, Row{5.0, 11.0, 494.5, 976.5, 1000.0},
                       Row{50.0, 34.2, 482.9, 964.6, 1000.0}}) {
    const FrameBounds fb = frame_bounds(s, Kernel::heat(r.tau, true));
    // table entries carry one decimal, so they cannot pin a value closer than 0.05
    auto tol = [](double x) { return std::max(0.005 * x, 0.05); };
    EXPECT_NEAR(fb.lower_theory, r.lower, tol(r.lower)) << r.tau;
    EXPECT_NEAR(fb.a, r.a, tol(r.a)) << r.tau;
    EXPECT_NEAR(fb.b, r.b, tol(r.b)) << r.tau;
    EXPECT_NEAR(fb.upper_theory, r.upper, tol(r.upper)) << r.tau;
  }
}

TEST(FrameBounds, SandwichAndDeltaRatio) {
  for (const Graph& gr : {path(60), test::comet(50, 15), test::sensor(80, 4)}) {
    const Spectrum s = eigendecompose(gr);
    for (double tau : {0.5, 5.0, 50.0}) {
      const Kernel g = Kernel::heat(tau, true);
      const FrameBounds fb = frame_bounds(s, g);
      EXPECT_LE(fb.lower_theory, fb.a * (1 + 1e-12));
      EXPECT_LE(fb.a, fb.b);
      EXPECT_LE(fb.b, fb.upper_theory * (1 + 1e-12));
      const Eigen::VectorXd norms = translated_norms_sq(s, kernel_evaluate(g, s));
      for (Index n : {Index(0), gr.size() / 2}) {
        const FrameCheck fc = frame_inequality_check(s, g, Signal(Signal::Unit(gr.size(), n)));
        EXPECT_NEAR(fc.ratio, gr.size() * norms(n), 1e-9 * fc.ratio);
      }
    }
  }
}

TEST(FrameBounds, RandomSignalsWithinBounds) {
  std::mt19937_64 rng(23);
  const Spectrum s = eigendecompose(path(180));
  const Kernel g = Kernel::heat(3.0, true);
  const Eigen::MatrixXd t = translation_matrix(s, kernel_evaluate(g, s));
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd f = test::random_vector(180, rng);
    const FrameCheck fc = frame_inequality_check(s, g, f);
    EXPECT_TRUE(fc.within_bounds);
    EXPECT_TRUE(fc.identity_holds) << fc.identity_rel_error;
    if (trial < 3) {
      // double sum over explicit atoms
      double energy = 0.0;
      for (Index i = 0; i < 180; ++i) {
        for (Index k = 0; k < 180; ++k) {
          double ip = 0.0;
          for (Index v = 0; v < 180; ++v) ip += f(v) * std::sqrt(180.0) * s.chi(k)(v) * t(v, i);
          energy += ip * ip;
        }
      }
      EXPECT_NEAR(fc.ratio, energy / f.squaredNorm(), 1e-9 * fc.ratio);
    }
  }
  EXPECT_THROW(frame_inequality_check(s, g, Signal(Signal::Zero(180))), Error);
}

TEST(FrameBounds, RingIsTightWhenCoherenceIsMinimal) {
  std::mt19937_64 rng(24);
  for (Index n : {Index(16), Index(31)}) {
    const Spectrum s = eigendecompose(ring(n));
    const Kernel g = Kernel::heat(0.7, true);
    const FrameBounds fb = frame_bounds(s, g);
    // each vertex sees the whole eigenspace, so N ||T_n g||^2 = N ||g||^2 regardless of basis
    EXPECT_NEAR(fb.a, n * 1.0, 1e-10 * n);
    EXPECT_NEAR(fb.b, n * 1.0, 1e-10 * n);
    if (std::abs(coherence(s).mu - 1.0 / std::sqrt(double(n))) < 1e-12) {
      EXPECT_NEAR(fb.upper_theory, fb.b, 1e-9 * n);
    }
    for (int trial = 0; trial < 5; ++trial) {
      const FrameCheck fc = frame_inequality_check(s, g, test::random_vector(n, rng));
      EXPECT_NEAR(fc.ratio, double(n), 1e-9 * n);
    }
  }
}

TEST(Reconstruct, RoundTrips) {
  std::mt19937_64 rng(25);
  const Spectrum s = eigendecompose(path(180));
  for (double tau : {3.0, 300.0}) {
    const Kernel g = Kernel::heat(tau, true);
    const Eigen::VectorXd f = test::random_vector(180, rng);
    const ComplexSignal r = reconstruct(s, g, transform(s, g, f));
    EXPECT_LE((r - f.cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-8 * f.cwiseAbs().maxCoeff());
    const Signal c5 = s.chi(5);
    const ComplexSignal r5 = reconstruct(s, g, transform(s, g, c5));
    EXPECT_LE((r5 - c5.cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Reconstruct, Errors) {
  const Spectrum s = eigendecompose(path(20));
  const Signal f = Signal::Ones(20);
  const Kernel ramp = Kernel::polynomial({0.0, 1.0});
  try {
    reconstruct(s, ramp, transform(s, ramp, f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::zero_mean_window);
  }
  // chi_1 of path(21) vanishes at the centre vertex, leaving only the tiny DC term there
  const Spectrum odd = eigendecompose(path(21));
  Eigen::VectorXd gh = Eigen::VectorXd::Zero(21);
  gh(0) = 1e-13;
  gh(1) = 1.0;
  const Kernel w = Kernel::sampled(gh);
  try {
    reconstruct(odd, w, transform(odd, w, Signal(Signal::Ones(21))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::near_singular_norm);
  }
  EXPECT_THROW(reconstruct(s, Kernel::heat(1), transform(odd, Kernel::heat(1), Signal(Signal::Ones(21)))), Error);
}

TEST(Spectrogram, ThreeSegmentArgmax) {
  const Spectrum s = eigendecompose(path(180));
  const Eigen::MatrixXd sg = spectrogram(transform(s, Kernel::heat(300.0, true), three_segment_signal(s)));
  const Index expect[3] = {10, 60, 30};
  for (Index i = 0; i < 180; ++i) {
    const Index seg = i / 60, offset = i % 60;
    const bool interior = (seg == 0 || offset >= 10) && (seg == 2 || offset < 50);
    if (!interior) continue;
    Index arg = 0;
    sg.row(i).maxCoeff(&arg);
    EXPECT_EQ(arg, expect[seg]) << "vertex " << i;
  }
  EXPECT_GE(sg.minCoeff(), 0.0);
}

TEST(Spectrogram, PermutationEquivariance) {
  std::mt19937_64 rng(26);
  const Graph gr = test::sensor(70, 8);
  const Spectrum s = eigendecompose(gr);
  for (Index l = 1; l < s.size(); ++l) ASSERT_GT(s.lambda(l) - s.lambda(l - 1), 1e-8);
  std::vector<Index> perm(70);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd w(70, 70);
  Eigen::VectorXd f = test::random_vector(70, rng), pf(70);
  for (Index a = 0; a < 70; ++a) {
    pf(perm[a]) = f(a);
    for (Index b = 0; b < 70; ++b) w(perm[a], perm[b]) = gr.adjacency()(a, b);
  }
  const Spectrum ps = eigendecompose(Graph::from_adjacency(w));
  const Kernel g = Kernel::heat(2.0);
  const Eigen::MatrixXd sg = spectrogram(transform(s, g, f));
  const Eigen::MatrixXd psg = spectrogram(transform(ps, g, pf));
  for (Index a = 0; a < 70; ++a) EXPECT_LE((psg.row(perm[a]) - sg.row(a)).cwiseAbs().maxCoeff(), 1e-9);
}
