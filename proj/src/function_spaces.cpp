#include "fraccalc/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fraccalc/errors.hpp"
#include "fraccalc/frac_operators.hpp"

namespace fraccalc::spaces {
namespace {

double spread(const GridFunction& g, std::size_t first, std::size_t last,
              std::size_t stride) {
  double lo = g[first];
  double hi = g[first];
  for (std::size_t k = first; k <= last; k += stride) {
    lo = std::min(lo, g[k]);
    hi = std::max(hi, g[k]);
  }
  return hi - lo;
}

void require_unit_order(const FracOrder& order, const char* who) {
  if (!(order.alpha() < 1.0)) {
    std::ostringstream os;
    os << who << ": norms are defined here for orders in (0,1), got "
       << order.alpha();
    throw Error(Errc::order_out_of_range, os.str());
  }
}

double norm_with_derivative(const GridFunction& g, const GridFunction& d,
                            const char* space) {
  if (d.singular_start() || !continuous_at_start(d)) {
    throw Error(Errc::membership,
                std::string("function is not in ") + space +
                    ": its derivative has no finite limit at t0");
  }
  return sup_norm(g) + sup_norm(d, ops::kExclusionWindow);
}

}  // namespace

HolderEstimate holder_seminorm(const GridFunction& g, double gamma,
                               std::size_t pair_budget) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::invalid_parameter,
                "holder_seminorm: exponent must lie in (0, 1]");
  }
  const std::size_t n = g.size();
  const std::size_t first = g.singular_start() ? 1 : 0;

  std::vector<double> lag_pow(n, 0.0);
  for (std::size_t d = 1; d < n; ++d) {
    lag_pow[d] = std::pow(static_cast<double>(d) * g.step(), gamma);
  }

  HolderEstimate est;
  est.gamma = gamma;
  auto visit = [&](std::size_t i, std::size_t j) {  // i < j
    const double q = std::fabs(g[j] - g[i]) / lag_pow[j - i];
    ++est.pairs_examined;
    if (q > est.seminorm_lower_bound) {
      est.seminorm_lower_bound = q;
      est.argmax_pair = {i, j};
    }
  };

  const std::size_t m = n - first;
  if (m * (m - 1) / 2 <= pair_budget) {
    for (std::size_t i = first; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) visit(i, j);
    }
    return est;
  }

  std::size_t stride = 1;
  std::vector<std::size_t> lattice;
  for (;; stride *= 2) {
    lattice.clear();
    for (std::size_t k = first; k < n; k += stride) lattice.push_back(k);
    if (lattice.back() != n - 1) lattice.push_back(n - 1);
    const std::size_t l = lattice.size();
    if (l * (l - 1) / 2 <= pair_budget) break;
  }

  auto is_endpoint = [&](std::size_t k) {
    return k < first + kEndpointNodes || k + kEndpointNodes >= n;
  };
  // Pairs with at least one endpoint node.
  for (std::size_t i = first; i < n; ++i) {
    if (!is_endpoint(i)) continue;
    for (std::size_t j = first; j < n; ++j) {
      if (j == i || (is_endpoint(j) && j < i)) continue;
      visit(std::min(i, j), std::max(i, j));
    }
  }
  // Lattice pairs between interior nodes.
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    if (is_endpoint(lattice[a])) continue;
    for (std::size_t b = a + 1; b < lattice.size(); ++b) {
      if (is_endpoint(lattice[b])) continue;
      visit(lattice[a], lattice[b]);
    }
  }
  return est;
}

double holder_exponent(const GridFunction& g) {
  const std::size_t n = g.size();
  const std::size_t first = g.singular_start() ? 1 : 0;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t d = 1; d <= (n - 1) / 4; d *= 2) {
    double omega = 0.0;
    for (std::size_t k = first; k + d < n; ++k) {
      omega = std::max(omega, std::fabs(g[k + d] - g[k]));
    }
    if (omega > 0.0) {
      xs.push_back(std::log(static_cast<double>(d) * g.step()));
      ys.push_back(std::log(omega));
    }
  }
  if (xs.empty()) {
    throw Error(Errc::constant_input, "holder_exponent: input is constant");
  }
  if (xs.size() < 2) {
    throw Error(Errc::grid_too_small,
                "holder_exponent: need at least two dyadic lags");
  }
  const double nx = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= nx;
  my /= nx;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::clamp(sxy / sxx, 1e-12, 1.0);
}

bool continuous_at_start(const GridFunction& g,
                         const ContinuityTolerances& tol) {
  if (g.singular_start()) return false;
  const std::size_t n = g.size();
  const std::size_t w0 = ops::kExclusionWindow;
  constexpr std::size_t kWindow = 16;
  const double threshold =
      std::max(tol.abs_tol, tol.rel_tol * sup_norm(g, std::min(w0, n - 1)));
  if (n < 2 * (w0 + kWindow) - 1) {
    const std::size_t first = std::min(w0, n - 1);
    return spread(g, first, std::min(n - 1, first + kWindow - 1), 1) <=
           threshold;
  }
  const double fine = spread(g, w0, w0 + kWindow - 1, 1);
  const double coarse = spread(g, 2 * w0, 2 * (w0 + kWindow - 1), 2);
  return fine <= threshold || fine <= tol.refinement_shrink * coarse;
}

bool continuous_at(const GridFunction& g, std::size_t k,
                   const ContinuityTolerances& tol) {
  constexpr std::size_t kHalf = 16;
  if (k < 2 * kHalf + (g.singular_start() ? 1 : 0) || k + 2 * kHalf >= g.size()) {
    throw Error(Errc::invalid_parameter,
                "continuous_at: node needs 32 neighbours on each side");
  }
  const double threshold =
      std::max(tol.abs_tol, tol.rel_tol * sup_norm(g, ops::kExclusionWindow));
  const double fine = spread(g, k - kHalf, k + kHalf, 1);
  const double coarse = spread(g, k - 2 * kHalf, k + 2 * kHalf, 2);
  return fine <= threshold || fine <= tol.refinement_shrink * coarse;
}

double rl_norm(const GridFunction& g, const FracOrder& order) {
  require_unit_order(order, "rl_norm");
  const GridFunction d =
      ops::rl_derivative(g, order, ops::DerivativeMethod::marchaud);
  return norm_with_derivative(g, d, "RL^alpha");
}

double c_norm(const GridFunction& g, const FracOrder& order,
              std::span<const double> taylor) {
  require_unit_order(order, "c_norm");
  const GridFunction d = ops::caputo_derivative(g, order, taylor);
  return norm_with_derivative(g, d, "C^alpha");
}

}  // namespace fraccalc::spaces
