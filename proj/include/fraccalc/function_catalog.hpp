#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fraccalc/grid.hpp"

namespace fraccalc::catalog {

using ParamMap = std::map<std::string, double>;

/// Closed-form transform: (order, t) -> value.
using ClosedForm = std::function<double(double, double)>;

/// A named test function with the closed forms used as oracles.
/// All closed forms are taken with base point t0.
struct AnalyticFunction {
  std::string name;
  std::string id;  // name plus parameters, e.g. "power:p=0.5"
  ParamMap params;
  double t0 = 0.0;

  std::function<double(double)> eval;
  /// f(t0), f'(t0), ... as far as they are finite and known.
  std::vector<double> taylor_at_t0;
  /// True when eval is unbounded at t0; sample() then places the marker.
  bool singular_at_start = false;

  std::optional<ClosedForm> closed_rl_integral;
  std::optional<ClosedForm> closed_rl_derivative;
  std::optional<ClosedForm> closed_caputo_derivative;
  /// Classical derivative: (m, t) -> f^{(m)}(t).
  std::optional<std::function<double(int, double)>> classical_derivative;
};

struct ParamSpec {
  std::string name;
  double default_value;
  std::string constraint;
};

struct ClosedFormDoc {
  std::string transform;
  std::string formula;
  std::string anchor;
};

/// Static description of a catalog id, printed by `catalog describe`.
struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<ClosedFormDoc> closed_forms;
};

const std::vector<CatalogEntry>& entries();
const CatalogEntry& entry(std::string_view name);

/// Builds a catalog function. Every entry accepts an optional "t0" (default
/// 0). Throws Errc::unknown_name or Errc::invalid_parameter.
///
///   constant            c
///   power               p >= 0           (t - t0)^p
///   ml_exp              alpha in [0.3, 3] E_alpha((t - t0)^alpha)
///   step                at > t0          0 before `at`, 1 from `at` on
///   weierstrass_shifted alpha in (0,1), sigma > 1   W(t) - W(t0)
AnalyticFunction builtin(std::string_view name, const ParamMap& params = {});

/// Parses "name" or "name:key=value,key=value".
AnalyticFunction parse_spec(std::string_view spec, const ParamMap& extra = {});

/// Samples f on [t0, t1] with n nodes. t0 must equal f.t0.
GridFunction sample(const AnalyticFunction& f, double t0, double t1,
                    std::size_t n);

/// Samples an arbitrary map on [t0, t1].
GridFunction sample(const std::function<double(double)>& f, double t0,
                    double t1, std::size_t n);

}  // namespace fraccalc::catalog
