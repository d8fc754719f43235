#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraccalc/errors.hpp"
#include "fraccalc/frac_operators.hpp"
#include "fraccalc/function_catalog.hpp"
#include "fraccalc/function_spaces.hpp"
#include "fraccalc/special_functions.hpp"

using namespace fraccalc;
using catalog::builtin;
using catalog::sample;
using spaces::holder_seminorm;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::pole;
}

GridFunction power(double p, std::size_t n) {
  return sample(builtin("power", {{"p", p}}), 0, 1, n);
}

GridFunction constant(double c, std::size_t n) {
  return sample(builtin("constant", {{"c", c}}), 0, 1, n);
}

double brute_force(const GridFunction& g, double gamma) {
  double best = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      best = std::max(best, std::fabs(g[j] - g[i]) / std::pow(g.node(j) - g.node(i), gamma));
  return best;
}

}  // namespace

TEST_CASE("Hoelder seminorm on small grids") {
  CHECK(holder_seminorm(constant(5.0, 33), 0.5).seminorm_lower_bound == 0.0);

  const auto r = power(0.5, 33);
  const auto est = holder_seminorm(r, 0.5);
  CHECK(est.seminorm_lower_bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(est.argmax_pair.first == 0);
  CHECK(est.pairs_examined == 33 * 32 / 2);

  // Lipschitz data at gamma = 1/2: |t - s|^{1/2} is largest on the full span.
  const auto lin = power(1.0, 33);
  const auto e2 = holder_seminorm(lin, 0.5);
  CHECK(e2.seminorm_lower_bound == doctest::Approx(brute_force(lin, 0.5)).epsilon(1e-14));
  CHECK(e2.seminorm_lower_bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e2.argmax_pair == std::pair<std::size_t, std::size_t>{0, 32});

  const auto w = sample(builtin("weierstrass_shifted"), 0, 1, 200);
  CHECK(holder_seminorm(w, 0.4).seminorm_lower_bound ==
        doctest::Approx(brute_force(w, 0.4)).epsilon(1e-14));
}

TEST_CASE("Hoelder seminorm is monotone in the budget") {
  const auto w = sample(builtin("weierstrass_shifted"), 0, 1, 4097);
  double prev = 0.0;
  std::size_t prev_pairs = 0;
  for (std::size_t budget : {1000, 10000, 100000, 1000000, 10000000}) {
    const auto e = holder_seminorm(w, 0.5, budget);
    CHECK(e.seminorm_lower_bound >= prev);
    CHECK(e.pairs_examined >= prev_pairs);
    prev = e.seminorm_lower_bound;
    prev_pairs = e.pairs_examined;
  }
  CHECK(prev == doctest::Approx(brute_force(w, 0.5)).epsilon(1e-14));
}

TEST_CASE("Hoelder exponent") {
  CHECK(spaces::holder_exponent(power(0.5, 2049)) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(spaces::holder_exponent(power(1.0, 2049)) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::fabs(spaces::holder_exponent(power(0.3, 2049)) - 0.3) < 0.05);
  const auto step = sample(builtin("step", {{"at", 0.5}}), 0, 1, 2049);
  CHECK(std::fabs(spaces::holder_exponent(ops::frac_integral(step, 0.5)) - 0.5) <= 0.05);
  const auto w = sample(builtin("weierstrass_shifted", {{"alpha", 0.5}}), 0, 1, 4097);
  CHECK(std::fabs(spaces::holder_exponent(w) - 0.5) <= 0.1);
  CHECK(code_of([] { spaces::holder_exponent(constant(2.0, 65)); }) == Errc::constant_input);
}

TEST_CASE("continuity at the start") {
  const auto dp = ops::rl_derivative(power(0.5, 2049), FracOrder(0.5));
  CHECK(spaces::continuous_at_start(dp));
  const auto dc = ops::rl_derivative(constant(1.0, 2049), FracOrder(0.5));
  CHECK_FALSE(spaces::continuous_at_start(dc));
  CHECK(spaces::continuous_at_start(constant(0.0, 129)));
  // Oscillation that does not settle.
  const auto osc = sample([](double t) { return std::sin(1.0 / (t + 1e-9)); }, 0, 1, 2049);
  CHECK_FALSE(spaces::continuous_at_start(osc));
  // Bounded but slowly varying toward t0: spread shrinks under refinement.
  const auto root = power(0.2, 2049);
  CHECK(spaces::continuous_at_start(root));
}

TEST_CASE("interior continuity") {
  const auto step = sample(builtin("step", {{"at", 0.5}}), 0, 1, 2049);
  CHECK_FALSE(spaces::continuous_at(step, 1024));
  CHECK(spaces::continuous_at(step, 300));
  CHECK(spaces::continuous_at(power(0.5, 2049), 1024));
  CHECK(code_of([&] { spaces::continuous_at(step, 10); }) == Errc::invalid_parameter);
}

TEST_CASE("RL and Caputo norms") {
  CHECK(spaces::rl_norm(power(0.5, 2049), FracOrder(0.5)) ==
        doctest::Approx(1.0 + special::gamma(1.5)).epsilon(5e-3));
  CHECK(spaces::rl_norm(constant(0.0, 257), FracOrder(0.3)) == 0.0);
  CHECK(code_of([] { spaces::rl_norm(constant(1.0, 2049), FracOrder(0.5)); }) == Errc::membership);
  CHECK(code_of([] { spaces::rl_norm(power(1.0, 257), FracOrder(1.5)); }) ==
        Errc::order_out_of_range);

  const double one[] = {1.0};
  const double zero[] = {0.0};
  CHECK(spaces::c_norm(constant(1.0, 2049), FracOrder(0.5), one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spaces::c_norm(constant(0.0, 257), FracOrder(0.4), zero) == 0.0);

  const auto ml = builtin("ml_exp", {{"alpha", 0.7}});
  const double e1 = special::mittag_leffler(0.7, 1.0, 1.0);
  CHECK(spaces::c_norm(sample(ml, 0, 1, 4097), FracOrder(0.7), ml.taylor_at_t0) ==
        doctest::Approx(2.0 * e1).epsilon(1e-2));
}
