#include "fraccalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fraccalc/errors.hpp"

namespace fraccalc {

FracOrder::FracOrder(double alpha) : alpha_(alpha), ceil_(0) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "fractional order must be positive and finite, got " << alpha;
    throw Error(Errc::order_out_of_range, os.str());
  }
  ceil_ = static_cast<int>(std::ceil(alpha));
}

GridFunction::GridFunction(double t0, double t1, std::vector<double> values,
                           bool singular_start)
    : t0_(t0), t1_(t1), step_(0.0), values_(std::move(values)),
      singular_start_(singular_start) {
  if (!(t0 < t1) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw Error(Errc::invalid_parameter, "grid requires finite t0 < t1");
  }
  if (values_.size() < 2) {
    throw Error(Errc::grid_too_small, "grid requires at least 2 nodes");
  }
  step_ = (t1_ - t0_) / static_cast<double>(values_.size() - 1);
  if (singular_start_) {
    values_[0] = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t k = singular_start_ ? 1 : 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      std::ostringstream os;
      os << "non-finite grid value at index " << k;
      throw Error(Errc::non_finite_value, os.str());
    }
  }
}

double GridFunction::node(std::size_t k) const noexcept {
  if (k + 1 == values_.size()) return t1_;
  return t0_ + static_cast<double>(k) * step_;
}

GridFunction GridFunction::with_values(std::vector<double> values,
                                       bool singular_start) const {
  if (values.size() != values_.size()) {
    throw Error(Errc::grid_mismatch, "with_values: length differs from grid");
  }
  return GridFunction(t0_, t1_, std::move(values), singular_start);
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return t0_ == other.t0_ && t1_ == other.t1_ && size() == other.size();
}

double sup_norm(const GridFunction& g, std::size_t first) {
  double m = 0.0;
  for (std::size_t k = std::max<std::size_t>(first, g.singular_start() ? 1 : 0);
       k < g.size(); ++k) {
    m = std::max(m, std::fabs(g[k]));
  }
  return m;
}

}  // namespace fraccalc
