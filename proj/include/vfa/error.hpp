#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vfa {

/// Failure categories raised by the library. The CLI maps each one onto an
/// exit code, so keep the list in sync with tools/vfa_cli.cpp.
enum class ErrorKind {
  // graph construction
  disconnected_graph,
  self_loop,
  non_positive_weight,
  duplicate_edge,
  infeasible_spec,
  connectivity_retries_exceeded,
  // linear algebra
  not_symmetric,
  eigensolver_failure,
  dimension_mismatch,
  index_out_of_range,
  variant_mismatch,
  // kernels and operators
  zero_kernel,
  unsupported_kernel_form,
  disconnected_dual,
  // transform
  zero_window,
  zero_mean_window,
  near_singular_norm,
  zero_signal,
  // localization
  wrong_kernel_form,
  same_vertex,
  degenerate_degrees,
  zero_dc,
  // clustering
  bad_k,
  bad_band,
  // io
  parse_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::disconnected_graph: return "DisconnectedGraph";
    case ErrorKind::self_loop: return "SelfLoop";
    case ErrorKind::non_positive_weight: return "NonPositiveWeight";
    case ErrorKind::duplicate_edge: return "DuplicateEdge";
    case ErrorKind::infeasible_spec: return "InfeasibleSpec";
    case ErrorKind::connectivity_retries_exceeded: return "ConnectivityRetriesExceeded";
    case ErrorKind::not_symmetric: return "NotSymmetric";
    case ErrorKind::eigensolver_failure: return "EigensolverFailure";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::variant_mismatch: return "VariantMismatch";
    case ErrorKind::zero_kernel: return "ZeroKernel";
    case ErrorKind::unsupported_kernel_form: return "UnsupportedKernelForm";
    case ErrorKind::disconnected_dual: return "DisconnectedDual";
    case ErrorKind::zero_window: return "ZeroWindow";
    case ErrorKind::zero_mean_window: return "ZeroMeanWindow";
    case ErrorKind::near_singular_norm: return "NearSingularNorm";
    case ErrorKind::zero_signal: return "ZeroSignal";
    case ErrorKind::wrong_kernel_form: return "WrongKernelForm";
    case ErrorKind::same_vertex: return "SameVertex";
    case ErrorKind::degenerate_degrees: return "DegenerateDegrees";
    case ErrorKind::zero_dc: return "ZeroDC";
    case ErrorKind::bad_k: return "BadK";
    case ErrorKind::bad_band: return "BadBand";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace detail
}  // namespace vfa
