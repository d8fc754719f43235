#include "fraccalc/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fraccalc/errors.hpp"

namespace fraccalc::special {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;

constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5,
};

// Lanczos series for Gamma(x), x >= 1/2, in the shifted form
// Gamma(x) = sqrt(2 pi) / x * sum(x) * tmp^(x + 1/2) * exp(-tmp).
double lanczos_sum(double x) {
  double sum = 0.0;
  for (std::size_t i = kLanczos.size() - 1; i > 0; --i) {
    sum += kLanczos[i] / (x + static_cast<double>(i));
  }
  return sum + kLanczos[0];
}

bool is_pole(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// sin(pi x) with exact argument reduction.
double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;  // exact, |r| <= 1/2
  const double s = std::sin(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double gamma_positive(double x) {
  const double tmp = x + kLanczosG + 0.5;
  const double sum = lanczos_sum(x);
  // Split the power so tmp^(x+1/2) does not overflow before exp(-tmp) acts.
  const double half = std::pow(tmp, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) / x * sum * half *
         (half * std::exp(-tmp));
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_pole(x)) {
    std::ostringstream os;
    os << "gamma: pole at non-positive integer " << x;
    throw Error(Errc::pole, os.str());
  }
  if (x < 0.5) {
    return std::numbers::pi / (sin_pi(x) * gamma_positive(1.0 - x));
  }
  return gamma_positive(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw Error(Errc::pole, "log_gamma: argument must be positive");
  }
  if (x < 0.5) {
    return std::log(std::numbers::pi / (sin_pi(x) * gamma_positive(1.0 - x)));
  }
  const double tmp = x + kLanczosG + 0.5;
  return (x + 0.5) * std::log(tmp) - tmp +
         std::log(std::sqrt(2.0 * std::numbers::pi) * lanczos_sum(x) / x);
}

double reciprocal_gamma(double x) {
  if (is_pole(x)) return 0.0;
  if (x > 171.0) return std::exp(-log_gamma(x));
  return 1.0 / gamma(x);
}

double mittag_leffler(double alpha, double beta, double z,
                      const SeriesControl& ctl) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(Errc::invalid_parameter,
                "mittag_leffler: alpha and beta must be positive");
  }
  if (z == 0.0) return reciprocal_gamma(beta);

  const double log_abs_z = std::log(std::fabs(z));
  const bool alternating = z < 0.0;
  // |term_j| = exp(j log|z| - log Gamma(alpha j + beta))
  auto log_term = [&](std::size_t j) {
    const double jd = static_cast<double>(j);
    return jd * log_abs_z - log_gamma(alpha * jd + beta);
  };

  double sum = 0.0;
  double comp = 0.0;
  double current = log_term(0);
  for (std::size_t j = 0; j < ctl.max_terms; ++j) {
    const double mag = std::exp(current);
    const double term = (alternating && (j % 2 == 1)) ? -mag : mag;
    const double y = term - comp;
    const double next_sum = sum + y;
    comp = (next_sum - sum) - y;
    sum = next_sum;

    const double next = log_term(j + 1);
    const double ratio = std::exp(next - current);
    // Gamma is log-convex, so the term ratio is non-increasing in j and
    // bounds every later ratio once it drops below one.
    if (ratio < 1.0 && std::exp(next) / (1.0 - ratio) <= ctl.tolerance) {
      return sum;
    }
    current = next;
  }
  std::ostringstream os;
  os << "mittag_leffler: series did not meet tolerance " << ctl.tolerance
     << " within " << ctl.max_terms << " terms";
  throw Error(Errc::nonconvergence, os.str());
}

double weierstrass_tail_bound(double alpha, double sigma, std::size_t n) {
  const double q = std::pow(sigma, -alpha);
  return std::pow(q, static_cast<double>(n)) / (1.0 - q);
}

std::size_t weierstrass_terms(double alpha, double sigma, double tolerance) {
  const double q = std::pow(sigma, -alpha);
  const double needed =
      std::log(tolerance * (1.0 - q)) / std::log(q);  // q^n <= tol (1-q)
  return needed <= 0.0 ? 1 : static_cast<std::size_t>(std::ceil(needed));
}

double weierstrass(double alpha, double sigma, double t,
                   const SeriesControl& ctl) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(sigma > 1.0)) {
    throw Error(Errc::invalid_parameter,
                "weierstrass: requires 0 < alpha < 1 and sigma > 1");
  }
  if (!(ctl.tolerance > 0.0)) {
    throw Error(Errc::invalid_parameter, "weierstrass: tolerance must be > 0");
  }
  const std::size_t n = weierstrass_terms(alpha, sigma, ctl.tolerance);
  if (n > ctl.max_terms) {
    std::ostringstream os;
    os << "weierstrass: " << n << " terms needed, max_terms is "
       << ctl.max_terms;
    throw Error(Errc::nonconvergence, os.str());
  }
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    const double term =
        std::pow(sigma, -jd * alpha) * std::cos(std::pow(sigma, jd) * t);
    const double y = term - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  return sum;
}

}  // namespace fraccalc::special
