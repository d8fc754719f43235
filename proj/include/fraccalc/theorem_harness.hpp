#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fraccalc/function_catalog.hpp"
#include "fraccalc/grid.hpp"

namespace fraccalc::harness {

/// Outcome of one identity / counterexample check.
/// Invariant: passed == (max_error <= tolerance).
struct CheckReport {
  std::string check_id;
  std::string anchor;  // the formula being checked, quoted verbatim
  std::size_t grid_n = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, double> details;
  std::string error;  // set when the check threw
};

/// max_error assigned when a qualitative condition of a check fails.
inline constexpr double kQualitativeFailure = 1.0e300;

/// Frozen tolerances, fixed by grid-refinement studies against the
/// closed-form oracles of the catalog.
namespace tol {
inline constexpr double semigroup = 1e-4;
inline constexpr double integral_shift = 1e-4;
inline constexpr double derivative_commute = 1e-3;
inline constexpr double inversion = 5e-3;
inline constexpr double vanishing = 1e-12;
inline constexpr double hardy_littlewood = 5e-3;
inline constexpr double embedding_excess = 0.05;
inline constexpr double leibniz = 1e-2;
inline constexpr double banach_limit = 1e-2;
inline constexpr double step_reproduction = 5e-2;
inline constexpr double step_exponent = 0.05;
inline constexpr double weierstrass_exponent = 0.1;
/// Inter-refinement deviation must shrink by at least this factor to count
/// as convergence.
inline constexpr double convergence_shrink = 1.5;
}  // namespace tol

/// Anchor formula for a check id (empty if unknown).
std::string_view anchor_for(std::string_view check_id);

CheckReport check_semigroup(double alpha, double beta, std::size_t n,
                            double tolerance = tol::semigroup);

CheckReport check_integral_shift(double alpha, int m, std::size_t n,
                                 double tolerance = tol::integral_shift);

CheckReport check_derivative_commute(double alpha, int m, std::size_t n,
                                     double tolerance = tol::derivative_commute);

CheckReport check_inversion(double alpha, std::size_t n,
                            double tolerance = tol::inversion);

CheckReport check_vanishing_at_start(double alpha, std::size_t n = 2049);

CheckReport check_hardy_littlewood(double alpha, double beta, std::size_t n,
                                   double tolerance = tol::hardy_littlewood);

/// Hoelder-alpha seminorm of J^alpha h divided by 2 sup|h| / Gamma(alpha+1).
/// Zero when h vanishes identically.
double embedding_ratio(const GridFunction& h, double alpha);

/// Continuous piecewise-linear function through 16 uniformly spaced knots
/// on [0, 1], zero at the first knot, other knot values uniform in [-1, 1].
GridFunction random_knot_function(std::uint64_t seed, std::size_t n);

CheckReport check_embedding_constant(double alpha, std::size_t trials,
                                     std::size_t n, std::uint64_t seed);

CheckReport check_leibniz(double alpha, std::size_t n, bool caputo,
                          double tolerance = tol::leibniz);

CheckReport check_banach_algebra(double alpha, std::size_t n);

/// Step jumping at `jump` (on or between nodes).
CheckReport check_counterexample_step(double alpha, std::size_t n,
                                      double jump = 0.5);

/// Deviations of Marchaud derivatives between successive refinements
/// n -> 2n-1 -> 4n-3, compared on the nodes of the coarsest grid beyond
/// the exclusion window.
struct RefinementStudy {
  double dev_first = 0.0;   // levels 0 -> 1
  double dev_second = 0.0;  // levels 1 -> 2
  double shrink = 0.0;      // dev_first / dev_second
  bool converges = false;   // shrink >= tol::convergence_shrink
};

RefinementStudy refinement_study(const catalog::AnalyticFunction& f,
                                 double alpha, std::size_t n);

CheckReport check_weierstrass_nonmembership(double alpha, double sigma,
                                            std::size_t n);

struct SuiteConfig {
  std::size_t n = 2049;
  std::uint64_t seed = 7;
  std::vector<std::string> checks;  // empty means all
  unsigned threads = 0;             // 0: FRACCALC_THREADS or hardware
};

/// Check ids in suite order.
std::vector<std::string> suite_ids();

/// Runs the selected checks with the frozen default parameters. Checks
/// that throw become failed reports. Report order follows suite_ids().
/// Throws Errc::unknown_name for an unknown id.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

bool aggregate_pass(const std::vector<CheckReport>& reports);

}  // namespace fraccalc::harness
