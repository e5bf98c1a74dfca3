#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vfa/error.hpp"
#include "vfa/spectral.hpp"

namespace vfa {

struct HeatForm {
  double tau = 1.0;
};

/// ghat(lambda) = sum_k coeffs[k] * lambda^k.
struct PolynomialForm {
  std::vector<double> coeffs;
};

/// One value per eigenvalue, in ascending eigenvalue order.
struct SampledForm {
  Eigen::VectorXd values;
};

/// Spectral-domain window ghat. The value at lambda is scale() times the
/// form, unless the kernel is normalized, in which case the constant is chosen
/// per spectrum so that sum_l ghat(lambda_l)^2 = 1.
class Kernel {
 public:
  using Form = std::variant<HeatForm, PolynomialForm, SampledForm>;

  static Kernel heat(double tau, bool normalized = false) {
    detail::require(tau >= 0.0 && std::isfinite(tau), ErrorKind::unsupported_kernel_form,
                    "heat kernel needs tau >= 0");
    return Kernel(HeatForm{tau}, normalized);
  }

  static Kernel polynomial(std::vector<double> coeffs, bool normalized = false) {
    detail::require(!coeffs.empty(), ErrorKind::unsupported_kernel_form, "polynomial kernel needs a_0");
    return Kernel(PolynomialForm{std::move(coeffs)}, normalized);
  }

  static Kernel sampled(Eigen::VectorXd values, bool normalized = false) {
    return Kernel(SampledForm{std::move(values)}, normalized);
  }

  const Form& form() const { return form_; }
  bool is_normalized() const { return normalized_; }
  double scale() const { return scale_; }
  bool analytic() const { return !std::holds_alternative<SampledForm>(form_); }
  bool is_heat() const { return std::holds_alternative<HeatForm>(form_); }
  bool is_polynomial() const { return std::holds_alternative<PolynomialForm>(form_); }

  double tau() const {
    detail::require(is_heat(), ErrorKind::wrong_kernel_form, "kernel is not a heat kernel");
    return std::get<HeatForm>(form_).tau;
  }

  /// Polynomial degree K (trailing zero coefficients ignored).
  int degree() const {
    detail::require(is_polynomial(), ErrorKind::wrong_kernel_form, "kernel is not polynomial");
    const auto& a = std::get<PolynomialForm>(form_).coeffs;
    int k = static_cast<int>(a.size()) - 1;
    while (k > 0 && a[static_cast<std::size_t>(k)] == 0.0) --k;
    return k;
  }

  Kernel with_scale(double c) const {
    Kernel k = *this;
    k.scale_ = c;
    k.normalized_ = false;
    return k;
  }

  Kernel with_normalization(bool on) const {
    Kernel k = *this;
    k.normalized_ = on;
    return k;
  }

  /// Analytic value including scale(); ignores the normalization flag.
  double operator()(double lambda) const {
    return scale_ * std::visit(
                        [lambda](const auto& f) -> double {
                          using F = std::decay_t<decltype(f)>;
                          if constexpr (std::is_same_v<F, HeatForm>) {
                            return std::exp(-f.tau * lambda);
                          } else if constexpr (std::is_same_v<F, PolynomialForm>) {
                            double acc = 0.0;
                            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * lambda + *it;
                            return acc;
                          } else {
                            detail::fail(ErrorKind::unsupported_kernel_form,
                                         "sampled kernels have no value off the spectrum");
                          }
                        },
                        form_);
  }

  std::uint64_t content_hash() const {
    std::uint64_t h = detail::fnv1a(&scale_, sizeof(scale_));
    const char flag = normalized_ ? 1 : 0;
    h = detail::fnv1a(&flag, 1, h);
    return std::visit(
        [h](const auto& f) -> std::uint64_t {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, HeatForm>) {
            return detail::fnv1a(&f.tau, sizeof(f.tau), detail::fnv1a("heat", 4, h));
          } else if constexpr (std::is_same_v<F, PolynomialForm>) {
            return detail::fnv1a(f.coeffs.data(), f.coeffs.size() * sizeof(double), detail::fnv1a("poly", 4, h));
          } else {
            return detail::hash_matrix(f.values, detail::fnv1a("samp", 4, h));
          }
        },
        form_);
  }

 private:
  Kernel(Form form, bool normalized) : form_(std::move(form)), normalized_(normalized) {}

  Form form_;
  bool normalized_ = false;
  double scale_ = 1.0;
};

namespace detail {

inline Eigen::VectorXd evaluate_form(const Kernel& k, const Spectrum& s) {
  if (const auto* samp = std::get_if<SampledForm>(&k.form())) {
    check_dims(s.size(), samp->values.size(), "sampled kernel");
    return k.scale() * samp->values;
  }
  return s.eigenvalues().unaryExpr([&k](double lambda) { return k(lambda); });
}

}  // namespace detail

/// ghat(lambda_l) for every eigenvalue of `s`.
inline Eigen::VectorXd kernel_evaluate(const Kernel& k, const Spectrum& s) {
  Eigen::VectorXd v = detail::evaluate_form(k, s);
  if (k.is_normalized()) {
    const double norm = v.norm();
    detail::require(norm > 0.0, ErrorKind::zero_kernel, "cannot normalize an all-zero kernel");
    v /= norm;
  }
  return v;
}

/// The constant C such that kernel_evaluate(k, s) equals C times the bare form.
inline double normalization_constant(const Kernel& k, const Spectrum& s) {
  const Eigen::VectorXd bare = detail::evaluate_form(k.with_scale(1.0), s);
  if (!k.is_normalized()) return k.scale();
  const double norm = bare.norm();
  detail::require(norm > 0.0, ErrorKind::zero_kernel, "cannot normalize an all-zero kernel");
  return 1.0 / norm;
}

/// Folds any per-spectrum normalization into a fixed scale.
inline Kernel resolve(const Kernel& k, const Spectrum& s) { return k.with_scale(normalization_constant(k, s)); }

}  // namespace vfa
