#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraccalc {

/// A positive order alpha together with ceil(alpha).
class FracOrder {
 public:
  explicit FracOrder(double alpha);

  double alpha() const noexcept { return alpha_; }
  /// Smallest integer >= alpha.
  int ceil() const noexcept { return ceil_; }
  bool is_integer() const noexcept { return alpha_ == static_cast<double>(ceil_); }

 private:
  double alpha_;
  int ceil_;
};

/// Samples of a real function on the uniform grid
/// t_k = t0 + k (t1 - t0) / (N - 1), k = 0..N-1.
///
/// Every value is finite, except that index 0 may carry the singular marker
/// (stored as NaN) for functions that blow up at the left endpoint.
class GridFunction {
 public:
  GridFunction(double t0, double t1, std::vector<double> values,
               bool singular_start = false);

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return step_; }
  double node(std::size_t k) const noexcept;

  bool singular_start() const noexcept { return singular_start_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  /// Same grid, new values.
  GridFunction with_values(std::vector<double> values,
                           bool singular_start = false) const;

  bool same_grid(const GridFunction& other) const noexcept;

 private:
  double t0_;
  double t1_;
  double step_;
  std::vector<double> values_;
  bool singular_start_;
};

/// Sup-norm over indices [first, N). The singular marker is skipped.
double sup_norm(const GridFunction& g, std::size_t first = 0);

}  // namespace fraccalc
