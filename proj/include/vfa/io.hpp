#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/graph.hpp"
#include "vfa/spectral.hpp"

/// Text and binary file formats. Every index written to or read from a file
/// is 1-based; the in-memory API is 0-based.
namespace vfa::io {

/// Shortest decimal form that round-trips a double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  vfa::detail::fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": not a number: '" + s + "'");
}

inline long long parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  vfa::detail::fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": not an integer: '" + s + "'");
}

// Reads a CSV body after checking the header; returns trimmed rows.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in, const std::string& header,
                                                      std::size_t min_cols, std::size_t max_cols) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  if (trim(line) != header)
    vfa::detail::fail(ErrorKind::parse_error, "expected header '" + header + "', got '" + trim(line) + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split(trim(line));
    for (auto& f : fields) f = trim(f);
    if (fields.size() < min_cols || fields.size() > max_cols)
      vfa::detail::fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": wrong number of fields");
    fields.push_back(std::to_string(lineno));
    rows.push_back(std::move(fields));
  }
  return rows;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  vfa::detail::require(static_cast<bool>(in), ErrorKind::parse_error, "cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  vfa::detail::require(static_cast<bool>(out), ErrorKind::parse_error, "cannot write " + path);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge lists: header `i,j,weight`, one undirected edge per line.

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "i,j,weight\n";
  for (const Edge& e : g.edges()) out << e.i + 1 << ',' << e.j + 1 << ',' << format_double(e.weight) << '\n';
}

inline std::string edge_list_text(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

/// Parses an edge list; N is the largest vertex index present.
inline Graph read_edge_list(std::istream& in) {
  const auto rows = detail::read_csv(in, "i,j,weight", 3, 3);
  std::vector<Edge> edges;
  Index n = 0;
  for (const auto& r : rows) {
    const int line = std::stoi(r.back());
    const long long i = detail::parse_int(r[0], line);
    const long long j = detail::parse_int(r[1], line);
    vfa::detail::require(i >= 1 && j >= 1, ErrorKind::index_out_of_range,
                         "line " + std::to_string(line) + ": vertex indices are 1-based");
    edges.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), detail::parse_double(r[2], line)});
    n = std::max<Index>(n, static_cast<Index>(std::max(i, j)));
  }
  vfa::detail::require(n > 0, ErrorKind::parse_error, "edge list is empty");
  return Graph::from_edges(edges, n);
}

inline Graph read_edge_list_file(const std::string& path) {
  auto in = detail::open_in(path);
  return read_edge_list(in);
}

/// Coordinates: header `vertex,x,y` or `vertex,x,y,z`.
inline void write_coordinates(std::ostream& out, const Eigen::MatrixXd& coords) {
  out << (coords.cols() == 3 ? "vertex,x,y,z\n" : "vertex,x,y\n");
  for (Index v = 0; v < coords.rows(); ++v) {
    out << v + 1;
    for (Index c = 0; c < coords.cols(); ++c) out << ',' << format_double(coords(v, c));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Signals: header `vertex,value`.

inline void write_signal(std::ostream& out, const Signal& f) {
  out << "vertex,value\n";
  for (Index v = 0; v < f.size(); ++v) out << v + 1 << ',' << format_double(f(v)) << '\n';
}

/// Reads a signal; every vertex 1..N must appear exactly once.
inline Signal read_signal(std::istream& in) {
  const auto rows = detail::read_csv(in, "vertex,value", 2, 2);
  Signal f = Signal::Constant(static_cast<Index>(rows.size()), std::nan(""));
  for (const auto& r : rows) {
    const int line = std::stoi(r.back());
    const long long v = detail::parse_int(r[0], line);
    vfa::detail::require(v >= 1 && v <= f.size(), ErrorKind::index_out_of_range,
                         "line " + std::to_string(line) + ": vertex out of range");
    vfa::detail::require(std::isnan(f(v - 1)), ErrorKind::parse_error,
                         "line " + std::to_string(line) + ": vertex listed twice");
    f(v - 1) = detail::parse_double(r[1], line);
  }
  return f;
}

inline Signal read_signal_file(const std::string& path) {
  auto in = detail::open_in(path);
  return read_signal(in);
}

// ---------------------------------------------------------------------------
// Spectrum export: `l,lambda` CSV plus an optional raw eigenvector dump.

inline void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "l,lambda\n";
  for (Index l = 0; l < s.size(); ++l) out << l << ',' << format_double(s.lambda(l)) << '\n';
}

inline Eigen::VectorXd read_spectrum_csv(std::istream& in) {
  const auto rows = detail::read_csv(in, "l,lambda", 2, 2);
  Eigen::VectorXd values(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int line = std::stoi(rows[k].back());
    vfa::detail::require(detail::parse_int(rows[k][0], line) == static_cast<long long>(k), ErrorKind::parse_error,
                         "eigenvalue indices must be 0..N-1 in order");
    values(static_cast<Index>(k)) = detail::parse_double(rows[k][1], line);
  }
  return values;
}

namespace detail {

inline void put_le(std::ostream& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  vfa::detail::require(in.gcount() == 8, ErrorKind::parse_error, "truncated eigenvector dump");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace detail

/// Row-major N x N little-endian float64 dump of the eigenvector matrix.
inline void write_eigenvectors_bin(std::ostream& out, const Spectrum& s) {
  const Eigen::MatrixXd& v = s.eigenvectors();
  for (Index r = 0; r < v.rows(); ++r)
    for (Index c = 0; c < v.cols(); ++c) detail::put_le(out, v(r, c));
}

inline Eigen::MatrixXd read_eigenvectors_bin(std::istream& in, Index n) {
  Eigen::MatrixXd v(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) v(r, c) = detail::get_le(in);
  return v;
}

// ---------------------------------------------------------------------------
// Matrices and images

/// Plain numeric CSV, one matrix row per line, no header.
inline void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

inline Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& f : detail::split(detail::trim(line))) row.push_back(detail::parse_double(detail::trim(f), lineno));
    vfa::detail::require(rows.empty() || row.size() == rows.front().size(), ErrorKind::parse_error,
                         "ragged matrix CSV at line " + std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

/// Binary 8-bit PGM (P5) of a vertex x frequency matrix: image column = vertex,
/// image row = frequency with the highest index at the top. Pixel value is
/// floor(255 * entry / max entry); an all-zero matrix gives a black image.
inline void write_pgm(std::ostream& out, const Eigen::MatrixXd& m) {
  const double peak = m.size() ? m.maxCoeff() : 0.0;
  out << "P5\n" << m.rows() << ' ' << m.cols() << "\n255\n";
  for (Index k = m.cols() - 1; k >= 0; --k) {
    for (Index v = 0; v < m.rows(); ++v) {
      const double x = peak > 0.0 ? std::floor(255.0 * m(v, k) / peak) : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::clamp(x, 0.0, 255.0))));
    }
  }
}

}  // namespace vfa::io
