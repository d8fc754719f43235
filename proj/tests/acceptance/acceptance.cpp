// One PASS/FAIL line per acceptance criterion; exit status 0 only when all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "fraccalc/errors.hpp"
#include "fraccalc/frac_operators.hpp"
#include "fraccalc/function_catalog.hpp"
#include "fraccalc/function_spaces.hpp"
#include "fraccalc/special_functions.hpp"
#include "fraccalc/theorem_harness.hpp"

using namespace fraccalc;
using catalog::builtin;
using catalog::sample;
using ops::kExclusionWindow;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %-34s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GridFunction power(double p, std::size_t n) {
  return sample(builtin("power", {{"p", p}}), 0, 1, n);
}

double max_dev(const GridFunction& g, const std::function<double(double)>& f, std::size_t first) {
  double e = 0.0;
  for (std::size_t k = first; k < g.size(); ++k) e = std::max(e, std::fabs(g[k] - f(g.node(k))));
  return e;
}

double max_dev(const GridFunction& a, const GridFunction& b, std::size_t first) {
  double e = 0.0;
  for (std::size_t k = first; k < a.size(); ++k) e = std::max(e, std::fabs(a[k] - b[k]));
  return e;
}

void power_rule() {
  const auto start = std::chrono::steady_clock::now();
  const auto d = ops::rl_derivative(power(0.5, 2049), FracOrder(0.5), ops::DerivativeMethod::marchaud);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double err = max_dev(d, [](double) { return special::gamma(1.5); }, kExclusionWindow);
  report(1, "power-rule derivative", err <= 5e-3 && secs < 1.0,
         fmt("max error %.3e (<= 5e-3), %.3f s (< 1 s)", err, secs));
}

void semigroup() {
  const auto r = harness::check_semigroup(0.3, 0.4, 2049);
  const double nested = r.details.at("nested_vs_closed");
  const double direct = r.details.at("direct_vs_closed");
  report(2, "semigroup", r.max_error <= 1e-4 && nested <= 1e-4 && direct <= 1e-4,
         fmt("sides %.3e, vs closed form %.3e / %.3e (<= 1e-4)", r.max_error, nested, direct));
}

void inversion() {
  const double e2049 = harness::check_inversion(0.6, 2049).max_error;
  const double e4097 = harness::check_inversion(0.6, 4097).max_error;
  report(3, "inversion", e2049 <= 5e-3 && e4097 < e2049,
         fmt("N=2049 %.3e (<= 5e-3), N=4097 %.3e (smaller)", e2049, e4097));
}

void caputo_constant() {
  const auto g = sample(builtin("constant", {{"c", 7}}), 0, 1, 257);
  const double taylor[] = {7.0};
  const auto c = ops::caputo_derivative(g, FracOrder(0.4), taylor);
  const double err = max_dev(c, [](double) { return 0.0; }, 0);
  report(4, "Caputo annihilates constants", err <= 1e-10, fmt("max %.3e (<= 1e-10)", err));
}

void mittag_leffler_fixed_point() {
  const auto f = builtin("ml_exp", {{"alpha", 0.7}});
  const auto g = sample(f, 0, 1, 4097);
  const auto c = ops::caputo_derivative(g, FracOrder(0.7), f.taylor_at_t0);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.node(k) >= 0.1) worst = std::max(worst, std::fabs(c[k] - g[k]) / std::fabs(g[k]));
  }
  report(5, "Mittag-Leffler fixed point", worst <= 1e-2, fmt("max relative %.3e (<= 1e-2)", worst));
}

void leibniz() {
  const auto l = ops::leibniz_rl(power(0.6, 2049), power(0.8, 2049), 0.5);
  const auto closed = *builtin("power", {{"p", 1.4}}).closed_rl_derivative;
  const double err = max_dev(l, [&](double t) { return closed(0.5, t); }, kExclusionWindow);
  report(6, "Leibniz consistency", err <= 1e-2, fmt("max error %.3e (<= 1e-2)", err));
}

void embedding() {
  const auto r = harness::check_embedding_constant(0.5, 20, 2049, 7);
  const double worst = r.details.at("worst_ratio");
  report(7, "embedding constant", worst <= 1.05, fmt("worst ratio %.4f over 20 seeds (<= 1.05)", worst));
}

void special_functions() {
  double ml_excess = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = -5.0 + 10.0 * i / 99.0;
    const double err = std::fabs(special::mittag_leffler(1, 1, z) - std::exp(z));
    ml_excess = std::max(ml_excess, err / std::exp(std::fabs(z)));
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-10.0, 30.0);
  double residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double g1 = special::gamma(x + 1.0);
    residual = std::max(residual, std::fabs(g1 - x * special::gamma(x)) / std::fabs(g1));
  }
  report(8, "special functions", ml_excess <= 1e-10 && residual <= 1e-11,
         fmt("E_{1,1} %.2e (<= 1e-10 e^|z|), recurrence %.2e (<= 1e-11)", ml_excess, residual));
}

void step_counterexample() {
  const auto r = harness::check_counterexample_step(0.5, 2049);
  const double expo = r.details.at("holder_exponent");
  const double repro = r.details.at("reproduction_error");
  report(9, "step counterexample", expo >= 0.45 && expo <= 0.55 && repro <= 5e-2,
         fmt("exponent %.4f (in [0.45, 0.55]), reproduction %.3e (<= 5e-2)", expo, repro));
}

void classifiers() {
  const FracOrder half(0.5);
  const auto one = sample(builtin("constant", {{"c", 1}}), 0, 1, 2049);
  const auto d_const = ops::rl_derivative(one, half);
  const bool const_rejected = !spaces::continuous_at_start(d_const);
  const double taylor[] = {1.0};
  const auto c_const = ops::caputo_derivative(one, half, taylor);
  const bool const_in_c = !c_const.singular_start() && spaces::continuous_at_start(c_const);
  const auto d_root = ops::rl_derivative(power(0.5, 2049), half);
  const bool root_in_rl = !d_root.singular_start() && spaces::continuous_at_start(d_root);
  const auto w = harness::refinement_study(builtin("weierstrass_shifted", {{"alpha", 0.5}, {"sigma", 2}}),
                                           0.5, 1025);
  report(10, "strict-inclusion classifiers", const_rejected && const_in_c && root_in_rl && !w.converges,
         fmt("1 not in RL %d, 1 in C %d, t^0.5 in RL %d, Weierstrass shrink %.3f (< 1.5)",
             const_rejected, const_in_c, root_in_rl, w.shrink));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("fraccalc_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string bin = FRACCALC_BINARY;
  const auto a = (dir / "a.json").string();
  const auto b = (dir / "b.json").string();
  const int ra = std::system((bin + " verify --suite all --seed 7 --json " + a + " > /dev/null").c_str());
  const int rb = std::system((bin + " verify --suite all --seed 7 --json " + b + " > /dev/null").c_str());
  const std::string ja = slurp(a);
  const std::string jb = slurp(b);
  std::filesystem::remove_all(dir);
  const bool ok = WIFEXITED(ra) && WIFEXITED(rb) && !ja.empty() && ja == jb;
  report(11, "suite determinism", ok,
         fmt("exit %d/%d, %zu bytes, identical %d", WEXITSTATUS(ra), WEXITSTATUS(rb), ja.size(), ja == jb));
}

void guarded(int id, const char* name, void (*criterion)()) {
  try {
    criterion();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, "power-rule derivative", power_rule);
  guarded(2, "semigroup", semigroup);
  guarded(3, "inversion", inversion);
  guarded(4, "Caputo annihilates constants", caputo_constant);
  guarded(5, "Mittag-Leffler fixed point", mittag_leffler_fixed_point);
  guarded(6, "Leibniz consistency", leibniz);
  guarded(7, "embedding constant", embedding);
  guarded(8, "special functions", special_functions);
  guarded(9, "step counterexample", step_counterexample);
  guarded(10, "strict-inclusion classifiers", classifiers);
  guarded(11, "suite determinism", determinism);
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
