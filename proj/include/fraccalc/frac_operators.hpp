#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fraccalc/grid.hpp"

namespace fraccalc::ops {

/// Left-endpoint nodes excluded from accuracy statements. Product
/// integration loses an order next to the weakly singular endpoint.
inline constexpr std::size_t kExclusionWindow = 8;

enum class DerivativeMethod {
  integral_then_difference,  // d^m/dt^m J^{m - alpha}
  marchaud,                  // singular integral of increments, 0 < alpha < 1
};

DerivativeMethod parse_method(std::string_view name);
std::string_view method_name(DerivativeMethod method);

/// Marchaud for 0 < alpha < 1, integrate-then-difference otherwise.
DerivativeMethod default_method(const FracOrder& order);

/// Riemann-Liouville integral J^order by product integration against the
/// piecewise-linear interpolant of g. order == 0 returns g unchanged.
///
/// A singular marker at index 0 is handled by modelling the first cell as
/// g_1 ((s - t0)/h)^{-gamma}, with gamma fitted from g_1 and g_2; gamma >= 1
/// raises Errc::unintegrable_singularity.
GridFunction frac_integral(const GridFunction& g, double order);

/// Riemann-Liouville derivative. Index 0 carries the singular marker when
/// the values at nodes 1, 2, 4, ..., 2^R (R <= 5) increase monotonically
/// toward t0 and at least double over those refinements.
GridFunction rl_derivative(const GridFunction& g, const FracOrder& order,
                           DerivativeMethod method);
GridFunction rl_derivative(const GridFunction& g, const FracOrder& order);

/// Marchaud form of D^alpha, 0 < alpha < 1:
///   D f(t) = alpha/Gamma(1-alpha) int_{t0}^t (f(t) - f(s)) (t-s)^{-alpha-1} ds
///            + f(t) (t - t0)^{-alpha} / Gamma(1-alpha),
/// with output[0] = 0.
GridFunction marchaud_derivative(const GridFunction& g, double alpha);

/// Caputo derivative: subtract the Taylor polynomial built from
/// taylor[0..ceil(alpha)-1], then apply the default RL method.
GridFunction caputo_derivative(const GridFunction& g, const FracOrder& order,
                               std::span<const double> taylor);

/// Right-hand side of the fractional Leibniz rule for D^alpha(u v).
GridFunction leibniz_rl(const GridFunction& u, const GridFunction& v,
                        double alpha);

/// Caputo variant of the Leibniz rule for cD^alpha(u v).
GridFunction leibniz_caputo(const GridFunction& u, const GridFunction& v,
                            double alpha);

/// Second-order finite-difference derivative of the given order: centered
/// in the interior, one-sided three/four-point stencils at the ends.
std::vector<double> differentiate(std::span<const double> y, double h,
                                  int order);

/// True when |d[1]|, |d[2]|, |d[4]|, ... decrease strictly and the value at
/// node 1 is at least twice the value at the last refinement level.
bool blows_up_at_start(std::span<const double> d);

}  // namespace fraccalc::ops
