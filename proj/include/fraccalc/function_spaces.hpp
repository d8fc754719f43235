#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "fraccalc/grid.hpp"

namespace fraccalc::spaces {

/// Lower bound on the Hoelder seminorm [f]_gamma over the pairs examined.
struct HolderEstimate {
  double gamma = 1.0;
  double seminorm_lower_bound = 0.0;
  std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
  std::size_t pairs_examined = 0;
};

inline constexpr std::size_t kDefaultPairBudget = 4'000'000;
/// Nodes at each end whose pairs are always examined.
inline constexpr std::size_t kEndpointNodes = 32;

/// max |g(t) - g(s)| / |t - s|^gamma. All pairs when N(N-1)/2 fits the
/// budget; otherwise every pair touching the first/last kEndpointNodes
/// nodes plus all pairs of a power-of-two stride lattice (which also
/// contains the last node). Lattices for larger budgets contain those for
/// smaller ones, so the bound never decreases as the budget grows.
HolderEstimate holder_seminorm(const GridFunction& g, double gamma,
                               std::size_t pair_budget = kDefaultPairBudget);

/// Log-log slope of the modulus of continuity over dyadic lags
/// h, 2h, ..., up to (N-1)h/4, clamped to (0, 1].
double holder_exponent(const GridFunction& g);

struct ContinuityTolerances {
  double abs_tol = 1e-8;
  double rel_tol = 0.1;
  /// Spread must shrink at least by this factor under one refinement.
  double refinement_shrink = 0.9;
};

/// Classifies whether g has a finite limit at t0 from the first 16 nodes
/// after the exclusion window. True when their spread is within
/// max(abs_tol, rel_tol * sup|g|) or at most refinement_shrink times the
/// spread of the matching nodes on the once-coarsened grid.
bool continuous_at_start(const GridFunction& g,
                         const ContinuityTolerances& tol = {});

/// Same test centred on an interior node k (needs 32 nodes on each side).
bool continuous_at(const GridFunction& g, std::size_t k,
                   const ContinuityTolerances& tol = {});

/// sup|g| + sup|D^alpha g| (Marchaud), derivative over the non-excluded
/// nodes. 0 < alpha < 1. Throws Errc::membership when the derivative is
/// singular at t0 or fails continuous_at_start.
double rl_norm(const GridFunction& g, const FracOrder& order);

/// sup|g| + sup|cD^alpha g| with the given Taylor data.
double c_norm(const GridFunction& g, const FracOrder& order,
              std::span<const double> taylor);

}  // namespace fraccalc::spaces
