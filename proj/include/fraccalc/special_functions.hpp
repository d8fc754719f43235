#pragma once

#include <cstddef>

namespace fraccalc::special {

/// Truncation policy for the infinite series below.
struct SeriesControl {
  double tolerance = 1e-16;     // absolute bound on the discarded tail
  std::size_t max_terms = 20000;
};

/// Euler gamma function. Lanczos approximation (g = 607/128, 15 terms) with
/// reflection below 1/2. Throws Errc::pole at 0, -1, -2, ...
double gamma(double x);

/// log|Gamma(x)| for x > 0, same Lanczos sum. Used where Gamma itself
/// overflows (Mittag-Leffler terms with large index).
double log_gamma(double x);

/// 1/Gamma(x), returning 0 at the poles instead of throwing.
double reciprocal_gamma(double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by its power
/// series, summed from j = 0 with compensated summation.
///
/// The series is entire, but for negative z the terms alternate and grow to
/// roughly E_{alpha,1}(|z|) before decaying, so cancellation limits the
/// usable box to |z| <= 5 with alpha >= 0.3. Truncation stops once the
/// term ratio has dropped below one and the geometric bound on the
/// remaining tail is below ctl.tolerance. Throws Errc::nonconvergence when
/// ctl.max_terms is exhausted first.
double mittag_leffler(double alpha, double beta, double z,
                      const SeriesControl& ctl = {});

/// Number of Weierstrass terms needed so the tail bound meets `tolerance`.
std::size_t weierstrass_terms(double alpha, double sigma, double tolerance);

/// sigma^{-n alpha} / (1 - sigma^{-alpha}): bound on the terms j >= n.
double weierstrass_tail_bound(double alpha, double sigma, std::size_t n);

/// W(t) = sum_j sigma^{-j alpha} cos(sigma^j t), 0 < alpha < 1, sigma > 1.
/// Once sigma^j t exceeds 2^53 the cosine sees the rounded argument, so the
/// absolute accuracy is limited by the amplitude of those terms.
double weierstrass(double alpha, double sigma, double t,
                   const SeriesControl& ctl = {});

}  // namespace fraccalc::special
