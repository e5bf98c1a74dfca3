#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vfa/error.hpp"
#include "vfa/kernel.hpp"

// Kernel specs as JSON text:
//   {"form": "heat", "params": {"tau": 300}, "normalized": true}
//   {"form": "polynomial", "params": {"coeffs": [1, 0, -0.5]}, "normalized": false}
//   {"form": "sampled", "params": {"values": [...]}, "normalized": false}
// An explicit scale, when not 1, is stored as params.scale.
namespace vfa::io {

inline nlohmann::json kernel_to_json(const Kernel& k) {
  nlohmann::json j;
  std::visit(
      [&j](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, HeatForm>) {
          j["form"] = "heat";
          j["params"] = {{"tau", f.tau}};
        } else if constexpr (std::is_same_v<F, PolynomialForm>) {
          j["form"] = "polynomial";
          j["params"] = {{"coeffs", f.coeffs}};
        } else {
          j["form"] = "sampled";
          j["params"] = {{"values", std::vector<double>(f.values.data(), f.values.data() + f.values.size())}};
        }
      },
      k.form());
  if (k.scale() != 1.0) j["params"]["scale"] = k.scale();
  j["normalized"] = k.is_normalized();
  return j;
}

inline Kernel kernel_from_json(const nlohmann::json& j) {
  try {
    const std::string form = j.at("form").get<std::string>();
    const nlohmann::json& p = j.at("params");
    const bool normalized = j.value("normalized", false);
    Kernel k = [&] {
      if (form == "heat") return Kernel::heat(p.at("tau").get<double>(), normalized);
      if (form == "polynomial") return Kernel::polynomial(p.at("coeffs").get<std::vector<double>>(), normalized);
      if (form == "sampled") {
        const auto v = p.at("values").get<std::vector<double>>();
        return Kernel::sampled(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size())), normalized);
      }
      vfa::detail::fail(ErrorKind::parse_error, "unknown kernel form '" + form + "'");
    }();
    if (p.contains("scale")) k = k.with_scale(p.at("scale").get<double>()).with_normalization(normalized);
    return k;
  } catch (const nlohmann::json::exception& e) {
    vfa::detail::fail(ErrorKind::parse_error, std::string("bad kernel spec: ") + e.what());
  }
}

inline Kernel kernel_from_json_text(const std::string& text) {
  try {
    return kernel_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    vfa::detail::fail(ErrorKind::parse_error, std::string("bad kernel spec: ") + e.what());
  }
}

}  // namespace vfa::io
