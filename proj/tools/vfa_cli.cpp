// vfa: command-line front end for the vertex-frequency analysis library.
//
// Vertex indices on the command line and in files are 1-based.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "vfa/kernel_json.hpp"
#include "vfa/vfa.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { ok = 0, usage = 2, generation = 3, data = 4, numerical = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(vfa::ErrorKind k) {
  using vfa::ErrorKind;
  switch (k) {
    case ErrorKind::infeasible_spec:
      return usage;
    case ErrorKind::connectivity_retries_exceeded:
      return generation;
    case ErrorKind::eigensolver_failure:
    case ErrorKind::zero_kernel:
    case ErrorKind::zero_window:
    case ErrorKind::zero_mean_window:
    case ErrorKind::near_singular_norm:
    case ErrorKind::zero_signal:
    case ErrorKind::zero_dc:
    case ErrorKind::degenerate_degrees:
    case ErrorKind::disconnected_dual:
      return numerical;
    default:
      return data;
  }
}

// ---------------------------------------------------------------------------
// Options shared by every command

struct GraphFlags {
  std::string file;
  std::string type;
  long long n = 0;
  long long degree = 0;
  long long center_degree = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

struct WindowFlags {
  std::string window = "heat";
  double tau = 1.0;
  std::vector<double> coeffs;
  bool normalize = false;
  std::string kernel_json;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string variant = "combinatorial";
  GraphFlags graph;
};

vfa::Variant parse_variant(const std::string& v) {
  return v == "normalized" ? vfa::Variant::normalized : vfa::Variant::combinatorial;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

vfa::GraphSpec make_spec(const std::string& type_in, long long n, long long degree, long long center_degree,
                         double sigma1, double sigma2, std::uint64_t seed) {
  const std::string type = lower(type_in);
  if (n <= 0) throw UsageError("--n must be positive for --type " + type);
  const auto N = static_cast<vfa::Index>(n);
  if (type == "path") return vfa::PathSpec{N};
  if (type == "ring") return vfa::RingSpec{N};
  if (type == "comet") {
    if (center_degree <= 0) throw UsageError("comet needs --center-degree");
    return vfa::CometSpec{N, static_cast<vfa::Index>(center_degree)};
  }
  if (type == "random_regular" || type == "random-regular") {
    if (degree <= 0) throw UsageError("random_regular needs --degree");
    return vfa::RandomRegularSpec{N, static_cast<vfa::Index>(degree), seed};
  }
  if (type == "sensor" || type == "swiss_roll" || type == "swiss-roll") {
    auto [d1, d2] = vfa::default_sensor_sigmas(N);
    const double s1 = sigma1 > 0.0 ? sigma1 : d1;
    const double s2 = sigma2 > 0.0 ? sigma2 : d2;
    if (type == "sensor") return vfa::SensorSpec{N, s1, s2, seed};
    return vfa::SwissRollSpec{N, s1, s2, seed};
  }
  throw UsageError("unknown graph type '" + type_in + "'");
}

vfa::Graph load_graph(const Globals& g) {
  const bool have_file = !g.graph.file.empty();
  const bool have_type = !g.graph.type.empty();
  if (have_file == have_type) throw UsageError("give exactly one of --graph-file or --type");
  if (have_file) return vfa::io::read_edge_list_file(g.graph.file);
  return vfa::generate_graph(make_spec(g.graph.type, g.graph.n, g.graph.degree, g.graph.center_degree,
                                       g.graph.sigma1, g.graph.sigma2, g.seed));
}

vfa::Kernel make_window(const WindowFlags& w) {
  if (!w.kernel_json.empty()) {
    std::string text = w.kernel_json;
    if (fs::exists(text)) {
      std::ifstream in(text);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return vfa::io::kernel_from_json_text(text);
  }
  if (w.window == "heat") {
    if (w.tau < 0.0) throw UsageError("--tau must be nonnegative");
    return vfa::Kernel::heat(w.tau, w.normalize);
  }
  if (w.coeffs.empty()) throw UsageError("--window poly needs --coeffs");
  return vfa::Kernel::polynomial(w.coeffs, w.normalize);
}

void add_window_flags(CLI::App* cmd, WindowFlags& w) {
  auto* kernel = cmd->add_option("--kernel", w.kernel_json, "kernel spec as JSON text or a JSON file path");
  cmd->add_option("--window", w.window, "window family")
      ->check(CLI::IsMember({"heat", "poly"}))
      ->excludes(kernel);
  cmd->add_option("--tau", w.tau, "heat window parameter")->excludes(kernel);
  cmd->add_option("--coeffs", w.coeffs, "polynomial coefficients a_0 a_1 ...")->excludes(kernel);
  cmd->add_flag("--normalize", w.normalize, "scale the window to unit norm")->excludes(kernel);
}

// ---------------------------------------------------------------------------
// Spectrum cache

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[md[k] >> 4]);
    out.push_back(hex[md[k] & 15]);
  }
  return out;
}

std::optional<fs::path> cache_dir() {
  if (const char* env = std::getenv("VF_CACHE_DIR"); env && *env) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "vfa";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "vfa";
  return std::nullopt;
}

constexpr char kCacheMagic[8] = {'V', 'F', 'A', 'S', 'P', 'E', 'C', '1'};

vfa::Spectrum spectrum_for(const vfa::Graph& g, vfa::Variant variant) {
  const std::string key = sha256_hex(vfa::io::edge_list_text(g) + std::string(vfa::to_string(variant)));
  const auto dir = cache_dir();
  const vfa::Index n = g.size();
  const std::uint64_t source_hash = vfa::detail::hash_matrix(vfa::laplacian(g, variant));
  if (dir) {
    std::ifstream in(*dir / (key + ".bin"), std::ios::binary);
    char magic[8] = {};
    if (in && in.read(magic, 8) && std::equal(magic, magic + 8, kCacheMagic)) {
      try {
        const double stored = vfa::io::detail::get_le(in);
        if (stored == static_cast<double>(n)) {
          Eigen::VectorXd values(n);
          for (vfa::Index l = 0; l < n; ++l) values(l) = vfa::io::detail::get_le(in);
          Eigen::MatrixXd vectors = vfa::io::read_eigenvectors_bin(in, n);
          return vfa::Spectrum(std::move(values), std::move(vectors), variant, g.degrees(), source_hash);
        }
      } catch (const vfa::Error&) {
        // corrupt entry: recompute and overwrite
      }
    }
  }
  vfa::Spectrum s = vfa::eigendecompose(g, variant);
  if (dir) {
    std::error_code ec;
    fs::create_directories(*dir, ec);
    const fs::path tmp = *dir / (key + ".tmp" + std::to_string(::getpid()));
    {
      std::ofstream out(tmp, std::ios::binary);
      if (out) {
        out.write(kCacheMagic, 8);
        vfa::io::detail::put_le(out, static_cast<double>(n));
        for (vfa::Index l = 0; l < n; ++l) vfa::io::detail::put_le(out, s.lambda(l));
        vfa::io::write_eigenvectors_bin(out, s);
      }
    }
    fs::rename(tmp, *dir / (key + ".bin"), ec);
    if (ec) fs::remove(tmp, ec);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Helpers

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) { return vfa::io::detail::open_out(p.string()); }

vfa::Signal load_signal(const std::string& path, const vfa::Graph& g) {
  vfa::Signal f = vfa::io::read_signal_file(path);
  vfa::detail::check_dims(g.size(), f.size(), "signal file");
  return f;
}

vfa::Index vertex_arg(long long v, vfa::Index n) {
  if (v < 1 || v > n)
    vfa::detail::fail(vfa::ErrorKind::index_out_of_range,
                      "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return static_cast<vfa::Index>(v - 1);
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void require_combinatorial(const Globals& g, const char* cmd) {
  if (parse_variant(g.variant) != vfa::Variant::combinatorial)
    vfa::detail::fail(vfa::ErrorKind::variant_mismatch, std::string(cmd) + " uses the combinatorial Laplacian");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_gen_graph(const Globals& g, const std::string& name) {
  if (g.graph.type.empty()) throw UsageError("gen-graph needs --type");
  if (!g.graph.file.empty()) throw UsageError("gen-graph does not read --graph-file");
  const vfa::Graph graph = load_graph(g);
  {
    auto out = open_out(out_path(g, name + ".csv"));
    vfa::io::write_edge_list(out, graph);
  }
  if (graph.coordinates().size() != 0) {
    auto out = open_out(out_path(g, name + "_coords.csv"));
    vfa::io::write_coordinates(out, graph.coordinates());
  }
  std::cout << "vertices," << graph.size() << "\nedges," << graph.edges().size() << '\n';
  return ok;
}

int cmd_spectrum(const Globals& g, bool dump_vectors) {
  const vfa::Graph graph = load_graph(g);
  const vfa::Spectrum s = spectrum_for(graph, parse_variant(g.variant));
  {
    auto out = open_out(out_path(g, "spectrum.csv"));
    vfa::io::write_spectrum_csv(out, s);
  }
  if (dump_vectors) {
    auto out = open_out(out_path(g, "eigenvectors.bin"));
    vfa::io::write_eigenvectors_bin(out, s);
  }
  std::cout << "lambda_max," << vfa::io::format_double(s.lambda_max()) << "\nmu,"
            << vfa::io::format_double(vfa::coherence(s).mu) << '\n';
  return ok;
}

int cmd_spectrogram(const Globals& g, const std::string& signal, const WindowFlags& w) {
  require_combinatorial(g, "spectrogram");
  const vfa::Graph graph = load_graph(g);
  const vfa::Signal f = load_signal(signal, graph);
  const vfa::Kernel window = make_window(w);
  const vfa::Spectrum s = spectrum_for(graph, vfa::Variant::combinatorial);
  const vfa::WgftCoefficients c = vfa::transform(s, window, f);
  const Eigen::MatrixXd sg = vfa::spectrogram(c);
  {
    auto out = open_out(out_path(g, "spectrogram.csv"));
    vfa::io::write_matrix_csv(out, sg);
  }
  {
    auto out = open_out(out_path(g, "spectrogram.pgm"));
    vfa::io::write_pgm(out, sg);
  }
  const vfa::FrameBounds fb = vfa::frame_bounds(s, window);
  nlohmann::ordered_json side;
  side["A"] = fb.a;
  side["B"] = fb.b;
  side["mu"] = vfa::coherence(s).mu;
  side["window"] = vfa::io::kernel_to_json(window);
  side["window_hash"] = hex64(c.window_ref);
  side["window_norm"] = vfa::kernel_evaluate(window, s).norm();
  side["graph_hash"] = hex64(c.graph_ref);
  auto out = open_out(out_path(g, "spectrogram.json"));
  out << side.dump(2) << '\n';
  return ok;
}

struct ReportGraph {
  std::string label;
  vfa::Graph graph;
};

ReportGraph parse_report_graph(const std::string& token, std::uint64_t seed) {
  if (fs::exists(token)) return {token, vfa::io::read_edge_list_file(token)};
  std::vector<std::string> parts;
  std::stringstream ss(token);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto num = [&](std::size_t k) -> double {
    if (k >= parts.size()) return 0.0;
    try {
      return std::stod(parts[k]);
    } catch (const std::exception&) {
      throw UsageError("bad number in graph spec '" + token + "'");
    }
  };
  const std::string type = lower(parts.empty() ? "" : parts[0]);
  const auto n = static_cast<long long>(num(1));
  vfa::GraphSpec spec;
  if (type == "comet")
    spec = make_spec(type, n, 0, static_cast<long long>(num(2)), 0, 0, seed);
  else if (type == "random_regular" || type == "random-regular")
    spec = make_spec(type, n, static_cast<long long>(num(2)), 0, 0, 0, seed);
  else
    spec = make_spec(type, n, 0, 0, num(2), num(3), seed);
  return {token, vfa::generate_graph(spec)};
}

int cmd_frame_report(const Globals& g, const std::vector<std::string>& graphs, const std::vector<double>& taus,
                     long long max_n) {
  require_combinatorial(g, "frame-report");
  if (graphs.empty() && g.graph.file.empty() && g.graph.type.empty()) throw UsageError("frame-report needs at least one --graph");
  if (taus.empty()) throw UsageError("frame-report needs at least one --taus value");
  std::vector<ReportGraph> list;
  if (!g.graph.file.empty() || !g.graph.type.empty()) list.push_back({g.graph.file.empty() ? g.graph.type : g.graph.file, load_graph(g)});
  for (const auto& t : graphs) list.push_back(parse_report_graph(t, g.seed));

  auto out = open_out(out_path(g, "frame_report.csv"));
  out << "graph,mu,tau,lower_theory,A,B,upper_theory\n";
  for (const auto& rg : list) {
    if (rg.graph.size() > max_n)
      vfa::detail::fail(vfa::ErrorKind::dimension_mismatch,
                        rg.label + ": N=" + std::to_string(rg.graph.size()) + " exceeds --max-n");
    const vfa::Spectrum s = spectrum_for(rg.graph, vfa::Variant::combinatorial);
    const double mu = vfa::coherence(s).mu;
    for (double tau : taus) {
      const vfa::FrameBounds fb = vfa::frame_bounds(s, vfa::Kernel::heat(tau, true));
      out << rg.label << ',' << vfa::io::format_double(mu) << ',' << vfa::io::format_double(tau) << ','
          << vfa::io::format_double(fb.lower_theory) << ',' << vfa::io::format_double(fb.a) << ','
          << vfa::io::format_double(fb.b) << ',' << vfa::io::format_double(fb.upper_theory) << '\n';
    }
  }
  return ok;
}

int cmd_reconstruct(const Globals& g, const std::string& signal, const WindowFlags& w) {
  require_combinatorial(g, "reconstruct");
  const vfa::Graph graph = load_graph(g);
  const vfa::Signal f = load_signal(signal, graph);
  const vfa::Kernel window = make_window(w);
  const vfa::Spectrum s = spectrum_for(graph, vfa::Variant::combinatorial);
  const vfa::ComplexSignal r = vfa::reconstruct(s, window, vfa::transform(s, window, f));
  const vfa::Signal real = r.real();
  {
    auto out = open_out(out_path(g, "reconstruction.csv"));
    vfa::io::write_signal(out, real);
  }
  const double scale = f.cwiseAbs().maxCoeff();
  const double err = (r - f.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
  std::cout << "max_abs_error," << vfa::io::format_double(err) << "\nrelative_error,"
            << vfa::io::format_double(scale > 0.0 ? err / scale : err) << '\n';
  return ok;
}

int cmd_cluster(const Globals& g, const std::string& signal, const WindowFlags& w, double alpha, int k) {
  require_combinatorial(g, "cluster");
  const vfa::Graph graph = load_graph(g);
  const vfa::Spectrum s = spectrum_for(graph, vfa::Variant::combinatorial);
  vfa::ClusterAssignment a;
  if (signal.empty()) {
    a = vfa::spectral_cluster(s, k, g.seed);
  } else {
    const vfa::Signal f = load_signal(signal, graph);
    a = vfa::signal_adapted_cluster(s, f, make_window(w), alpha, k, g.seed);
  }
  {
    auto out = open_out(out_path(g, "clusters.csv"));
    out << "vertex,label\n";
    for (std::size_t v = 0; v < a.labels.size(); ++v) out << v + 1 << ',' << a.labels[v] << '\n';
  }
  std::cout << "inertia," << vfa::io::format_double(a.inertia) << '\n';
  return ok;
}

struct BoundsFlags {
  std::string kind = "poly";
  long long vertex = 1;
  long long degree = 1;
  std::vector<double> coeffs;
  double tau = 1.0;
  long long frequency = 0;
  double gamma = -1.0;
  double eps = 0.1;
};

void bound_row(std::ostream& out, const std::string& name, double lhs, double rhs, bool sat, bool vac) {
  out << name << ',' << vfa::io::format_double(lhs) << ',' << vfa::io::format_double(rhs) << ','
      << (sat ? "true" : "false") << ',' << (vac ? "true" : "false") << '\n';
}

int cmd_check_bounds(const Globals& g, const BoundsFlags& b) {
  const vfa::Graph graph = load_graph(g);
  const vfa::Variant variant = parse_variant(g.variant);
  const vfa::Spectrum s = spectrum_for(graph, variant);
  const vfa::DistanceMatrix dm = vfa::geodesic_distances(graph);
  const vfa::Index i = vertex_arg(b.vertex, graph.size());
  auto out = open_out(out_path(g, "bounds.csv"));
  out << "bound_name,lhs,rhs,satisfied,vacuous\n";
  const std::string at = std::to_string(b.vertex);

  if (b.kind == "poly") {
    std::vector<double> a = b.coeffs;
    if (a.empty()) a.assign(static_cast<std::size_t>(std::max(0LL, b.degree) + 1), 1.0);
    const vfa::Kernel p = vfa::Kernel::polynomial(a);
    const vfa::Signal t = variant == vfa::Variant::combinatorial ? vfa::translate(s, p, i)
                                                                 : vfa::translate_normalized(s, p, i);
    const double tol = 1e-8 * t.cwiseAbs().maxCoeff();
    for (vfa::Index n = 0; n < graph.size(); ++n) {
      if (dm(i, n) <= p.degree()) continue;
      bound_row(out, "poly_outside_ball:" + at + "->" + std::to_string(n + 1), std::abs(t(n)), tol,
                std::abs(t(n)) <= tol, false);
    }
  } else if (b.kind == "decay") {
    const vfa::Kernel h = vfa::Kernel::heat(b.tau);
    for (vfa::Index n = 0; n < graph.size(); ++n) {
      if (n == i) continue;
      const vfa::BoundReport r = vfa::smooth_decay_bound(dm, s, h, i, n);
      bound_row(out, "heat_decay:" + at + "->" + std::to_string(n + 1), r.lhs, r.rhs, r.satisfied, r.vacuous);
    }
  } else if (b.kind == "norm") {
    const vfa::NormBounds nb = vfa::translation_norm_bounds(s, vfa::Kernel::heat(b.tau), i);
    bound_row(out, "translation_norm_lower:" + at, nb.lower, nb.value, nb.lower <= nb.value + vfa::kBoundSlack, false);
    bound_row(out, "translation_norm_upper:" + at, nb.value, nb.upper, nb.value <= nb.upper + vfa::kBoundSlack, false);
  } else if (b.kind == "spread") {
    require_combinatorial(g, "check-bounds --kind spread");
    const vfa::SpreadReport r = vfa::heat_spread_check(graph, dm, s, b.tau, i);
    bound_row(out, "heat_spread:" + at, r.spread_sq, r.bound, r.satisfied, false);
    const double tau = vfa::tau_for_spread(graph, s, b.eps, i);
    const vfa::SpreadReport t = vfa::graph_spread(dm, vfa::translate(s, vfa::Kernel::heat(tau), i), i, b.eps);
    bound_row(out, "spread_target:" + at + ":tau=" + vfa::io::format_double(tau), t.spread_sq, b.eps, t.satisfied,
              false);
  } else {
    const vfa::Index k = static_cast<vfa::Index>(b.frequency);
    const vfa::Kernel h = vfa::Kernel::heat(b.tau);
    auto probe = [&](double gamma) {
      return variant == vfa::Variant::combinatorial ? vfa::modulation_concentration(s, h, k, gamma)
                                                    : vfa::modulation_concentration_normalized(s, h, k, gamma);
    };
    double gamma = b.gamma;
    if (gamma <= 0.0) gamma = probe(1.0).max_gamma;
    const vfa::ModulationConcentration m = probe(gamma > 0.0 ? gamma : 1.0);
    const std::string tag = ":k=" + std::to_string(b.frequency);
    bound_row(out, "modulation_hypothesis" + tag, m.hypothesis_lhs, m.hypothesis_rhs, m.condition_met, false);
    double worst = 0.0;
    for (vfa::Index l = 0; l < s.size(); ++l)
      if (l != k) worst = std::max(worst, m.gamma * m.magnitudes(l));
    bound_row(out, "modulation_conclusion" + tag, worst, m.magnitudes(k), m.conclusion_holds, !m.condition_met);
    if (m.energy_bound)
      bound_row(out, "modulation_energy" + tag, *m.energy_bound, m.energy_ratio, m.corollary_holds, !m.condition_met);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-frequency analysis on graphs"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::Throw);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "random seed for generators and k-means");
  app.add_option("--graph-file", g.graph.file, "edge-list CSV (i,j,weight)");
  app.add_option("--out-dir", g.out_dir, "directory for output files");
  app.add_option("--variant", g.variant, "Laplacian variant")
      ->check(CLI::IsMember({"combinatorial", "normalized"}));
  app.add_option("--type", g.graph.type, "generator: path, ring, comet, random_regular, sensor, swiss_roll");
  app.add_option("--n", g.graph.n, "number of vertices");
  app.add_option("--degree", g.graph.degree, "random regular degree");
  app.add_option("--center-degree", g.graph.center_degree, "comet center degree");
  app.add_option("--sigma1", g.graph.sigma1, "Gaussian width for geometric graphs");
  app.add_option("--sigma2", g.graph.sigma2, "distance threshold for geometric graphs");

  auto* gen = app.add_subcommand("gen-graph", "generate a graph and write its edge list")->fallthrough();
  std::string gen_name = "graph";
  gen->add_option("--name", gen_name, "output file stem");

  auto* spec = app.add_subcommand("spectrum", "eigendecompose the Laplacian")->fallthrough();
  bool dump_vectors = false;
  spec->add_flag("--eigenvectors", dump_vectors, "also write eigenvectors.bin");

  auto* sgram = app.add_subcommand("spectrogram", "windowed graph Fourier spectrogram")->fallthrough();
  std::string sgram_signal;
  WindowFlags sgram_w;
  sgram->add_option("--signal", sgram_signal, "signal CSV (vertex,value)")->required();
  add_window_flags(sgram, sgram_w);

  auto* frame = app.add_subcommand("frame-report", "frame bounds for normalized heat windows")->fallthrough();
  std::vector<std::string> frame_graphs;
  std::vector<double> frame_taus;
  long long max_n = 3000;
  frame->add_option("--graph", frame_graphs, "graph file or spec such as path:500, comet:500:200");
  frame->add_option("--taus", frame_taus, "heat window parameters");
  frame->add_option("--max-n", max_n, "largest graph accepted");

  auto* recon = app.add_subcommand("reconstruct", "transform and reconstruct a signal")->fallthrough();
  std::string recon_signal;
  WindowFlags recon_w;
  recon->add_option("--signal", recon_signal, "signal CSV (vertex,value)")->required();
  add_window_flags(recon, recon_w);

  auto* clus = app.add_subcommand("cluster", "spectral or signal-adapted clustering")->fallthrough();
  std::string clus_signal;
  WindowFlags clus_w;
  double alpha = 0.75;
  int k = 2;
  clus->add_option("--signal", clus_signal, "signal CSV; omit for plain spectral clustering");
  clus->add_option("--alpha", alpha, "feature compression tanh(alpha |Sf|)");
  clus->add_option("--k", k, "number of clusters");
  add_window_flags(clus, clus_w);

  auto* bounds = app.add_subcommand("check-bounds", "evaluate localization bounds")->fallthrough();
  BoundsFlags bf;
  bounds->add_option("--kind", bf.kind, "bound family")
      ->check(CLI::IsMember({"poly", "decay", "norm", "spread", "modulation"}));
  bounds->add_option("--vertex", bf.vertex, "center vertex (1-based)");
  bounds->add_option("--degree", bf.degree, "polynomial degree (all-ones coefficients)");
  bounds->add_option("--coeffs", bf.coeffs, "explicit polynomial coefficients");
  bounds->add_option("--tau", bf.tau, "heat kernel parameter");
  bounds->add_option("--frequency", bf.frequency, "modulation frequency index (0-based)");
  bounds->add_option("--gamma", bf.gamma, "concentration level; default is the largest admissible");
  bounds->add_option("--eps", bf.eps, "spread target for the tau selection row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_gen_graph(g, gen_name);
    if (*spec) return cmd_spectrum(g, dump_vectors);
    if (*sgram) return cmd_spectrogram(g, sgram_signal, sgram_w);
    if (*frame) return cmd_frame_report(g, frame_graphs, frame_taus, max_n);
    if (*recon) return cmd_reconstruct(g, recon_signal, recon_w);
    if (*clus) return cmd_cluster(g, clus_signal, clus_w, alpha, k);
    if (*bounds) return cmd_check_bounds(g, bf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return usage;
  } catch (const vfa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return data;
  }
  return usage;
}
