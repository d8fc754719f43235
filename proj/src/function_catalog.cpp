#include "fraccalc/function_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fraccalc/errors.hpp"
#include "fraccalc/special_functions.hpp"

namespace fraccalc::catalog {
namespace {

using special::gamma;
using special::mittag_leffler;
using special::reciprocal_gamma;

constexpr int kTaylorOrders = 4;

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void bad_param(std::string_view name, const std::string& msg) {
  throw Error(Errc::invalid_parameter, std::string(name) + ": " + msg);
}

ParamMap resolve(const CatalogEntry& e, const ParamMap& given) {
  ParamMap out;
  for (const auto& p : e.params) out[p.name] = p.default_value;
  out["t0"] = 0.0;
  for (const auto& [key, value] : given) {
    if (!out.contains(key)) {
      bad_param(e.name, "unknown parameter '" + key + "'");
    }
    if (!std::isfinite(value)) bad_param(e.name, key + " must be finite");
    out[key] = value;
  }
  return out;
}

std::string make_id(const CatalogEntry& e, const ParamMap& params) {
  std::string id = e.name;
  char sep = ':';
  for (const auto& p : e.params) {
    id += sep;
    id += p.name + "=" + format_number(params.at(p.name));
    sep = ',';
  }
  if (params.at("t0") != 0.0) {
    id += sep;
    id += "t0=" + format_number(params.at("t0"));
  }
  return id;
}

bool is_integer(double v) { return v == std::nearbyint(v); }

// Falling factorial p (p-1) ... (p-m+1).
double falling(double p, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= p - i;
  return r;
}

void build_constant(AnalyticFunction& f) {
  const double c = f.params.at("c");
  const double t0 = f.t0;
  f.eval = [c](double) { return c; };
  f.taylor_at_t0.assign(kTaylorOrders, 0.0);
  f.taylor_at_t0[0] = c;
  f.closed_rl_integral = [c, t0](double beta, double t) {
    return c * std::pow(t - t0, beta) * reciprocal_gamma(beta + 1.0);
  };
  f.closed_rl_derivative = [c, t0](double beta, double t) {
    return c * std::pow(t - t0, -beta) * reciprocal_gamma(1.0 - beta);
  };
  f.closed_caputo_derivative = [](double, double) { return 0.0; };
  f.classical_derivative = [c](int m, double) { return m == 0 ? c : 0.0; };
}

void build_power(AnalyticFunction& f) {
  const double p = f.params.at("p");
  const double t0 = f.t0;
  if (!(p >= 0.0)) bad_param("power", "exponent p must be >= 0");
  f.eval = [p, t0](double t) { return std::pow(t - t0, p); };
  for (int j = 0; j < kTaylorOrders; ++j) {
    if (p == j) {
      f.taylor_at_t0.push_back(std::tgamma(j + 1.0));
    } else if (p > j || is_integer(p)) {
      f.taylor_at_t0.push_back(0.0);
    } else {
      break;  // derivative of order j is unbounded at t0
    }
  }
  const double gp1 = gamma(p + 1.0);
  f.closed_rl_integral = [p, t0, gp1](double beta, double t) {
    return gp1 * reciprocal_gamma(p + beta + 1.0) * std::pow(t - t0, p + beta);
  };
  auto rl = [p, t0, gp1](double beta, double t) {
    return gp1 * reciprocal_gamma(p - beta + 1.0) * std::pow(t - t0, p - beta);
  };
  f.closed_rl_derivative = rl;
  f.closed_caputo_derivative = [p, rl](double beta, double t) {
    const int m = static_cast<int>(std::ceil(beta));
    if (is_integer(p) && p <= m - 1) return 0.0;
    if (p > m - 1) return rl(beta, t);
    throw Error(Errc::taylor_mismatch,
                "power: Caputo derivative needs Taylor data unbounded at t0");
  };
  f.classical_derivative = [p, t0](int m, double t) {
    if (is_integer(p) && m > p) return 0.0;
    return falling(p, m) * std::pow(t - t0, p - m);
  };
}

void build_ml_exp(AnalyticFunction& f) {
  const double a = f.params.at("alpha");
  const double t0 = f.t0;
  if (!(a >= 0.3 && a <= 3.0)) {
    bad_param("ml_exp", "alpha must lie in [0.3, 3]");
  }
  f.eval = [a, t0](double t) {
    return mittag_leffler(a, 1.0, std::pow(t - t0, a));
  };
  // The j-th derivative at t0 of x^{a i} / Gamma(a i + 1) is 1 if a i == j
  // and 0 if a i > j. A non-integer a i below j makes it unbounded.
  f.taylor_at_t0.push_back(1.0);
  for (int j = 1; j < kTaylorOrders; ++j) {
    double value = 0.0;
    bool bounded = true;
    for (int i = 1; a * i <= j + 1e-12; ++i) {
      const double ai = a * i;
      if (std::fabs(ai - j) <= 1e-12) {
        value = 1.0;
      } else if (!is_integer(ai)) {
        bounded = false;
      }
    }
    if (!bounded) break;
    f.taylor_at_t0.push_back(value);
  }
  f.closed_rl_integral = [a, t0](double beta, double t) {
    const double x = t - t0;
    return std::pow(x, beta) * mittag_leffler(a, beta + 1.0, std::pow(x, a));
  };
  auto caputo = [a, t0](double beta, double t) {
    if (!(beta > 0.0 && beta < 1.0)) {
      throw Error(Errc::order_out_of_range,
                  "ml_exp: closed Caputo form covers orders in (0,1)");
    }
    const double x = t - t0;
    return std::pow(x, a - beta) *
           mittag_leffler(a, 1.0 + a - beta, std::pow(x, a));
  };
  f.closed_caputo_derivative = caputo;
  f.closed_rl_derivative = [t0, caputo](double beta, double t) {
    return caputo(beta, t) + std::pow(t - t0, -beta) / gamma(1.0 - beta);
  };
}

void build_step(AnalyticFunction& f) {
  const double at = f.params.at("at");
  if (!(at > f.t0)) bad_param("step", "jump point 'at' must exceed t0");
  f.eval = [at](double t) { return t < at ? 0.0 : 1.0; };
  f.taylor_at_t0.assign(kTaylorOrders, 0.0);
  f.closed_rl_integral = [at](double beta, double t) {
    if (t < at) return 0.0;
    return std::pow(t - at, beta) * reciprocal_gamma(beta + 1.0);
  };
  auto deriv = [at](double beta, double t) {
    if (!(beta > 0.0 && beta < 1.0)) {
      throw Error(Errc::order_out_of_range,
                  "step: closed derivative covers orders in (0,1)");
    }
    if (t <= at) return t < at ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(t - at, -beta) / gamma(1.0 - beta);
  };
  f.closed_rl_derivative = deriv;
  f.closed_caputo_derivative = deriv;
}

void build_weierstrass(AnalyticFunction& f) {
  const double a = f.params.at("alpha");
  const double sigma = f.params.at("sigma");
  if (!(a > 0.0 && a < 1.0)) {
    bad_param("weierstrass_shifted", "alpha must lie in (0, 1)");
  }
  if (!(sigma > 1.0)) bad_param("weierstrass_shifted", "sigma must exceed 1");
  const double w0 = special::weierstrass(a, sigma, f.t0);
  f.eval = [a, sigma, w0](double t) {
    return special::weierstrass(a, sigma, t) - w0;
  };
  // Only f(t0) = 0 is known; higher derivatives do not exist.
  f.taylor_at_t0 = {0.0};
}

}  // namespace

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = {
      {"constant",
       "constant function c",
       {{"c", 1.0, "any real"}},
       {{"caputo derivative", "cD^b c = 0", "cD^\\alpha_{t_0,t}c=0"},
        {"RL derivative", "D^b c = c (t-t0)^{-b} / Gamma(1-b)",
         "D^\\alpha_{t_0,t}c=\\dfrac{(t-t_0)^{-\\alpha}c}{\\Gamma(1-\\alpha)}"},
        {"RL integral", "J^b c = c (t-t0)^b / Gamma(b+1)", ""}}},
      {"power",
       "power function (t-t0)^p",
       {{"p", 1.0, "p >= 0"}},
       {{"RL derivative",
         "D^b (t-t0)^p = Gamma(p+1)/Gamma(p-b+1) (t-t0)^{p-b}",
         "\\dfrac{\\Gamma(\\alpha+1)}{\\Gamma(\\alpha-\\beta+1)}t^{\\alpha-\\beta}"},
        {"RL integral",
         "J^b (t-t0)^p = Gamma(p+1)/Gamma(p+b+1) (t-t0)^{p+b}", ""},
        {"caputo derivative",
         "equals the RL form when p > ceil(b)-1; 0 for integer p < ceil(b)",
         ""}}},
      {"ml_exp",
       "Mittag-Leffler exponential E_a((t-t0)^a)",
       {{"alpha", 0.5, "0.3 <= alpha <= 3"}},
       {{"caputo derivative (b = alpha)", "cD^a E_a = E_a",
         "cD^\\alpha_{t_0,t}E_\\alpha\\big(t^\\alpha\\big)=E_\\alpha\\big((t-t_0)^\\alpha\\big)"},
        {"caputo derivative",
         "cD^b E_a = (t-t0)^{a-b} E_{a,1+a-b}((t-t0)^a), 0 < b < 1",
         "E_{\\alpha,1+\\alpha-\\beta}\\big((t-t_0)^\\alpha\\big)"},
        {"RL derivative",
         "D^b E_a = cD^b E_a + (t-t0)^{-b} / Gamma(1-b)", ""},
        {"RL integral", "J^b E_a = (t-t0)^b E_{a,b+1}((t-t0)^a)", ""}}},
      {"step",
       "unit step: 0 on [t0, at), 1 on [at, t1]",
       {{"at", 0.5, "t0 < at < t1"}},
       {{"RL integral", "J^b step = (t-at)^b / Gamma(b+1) for t >= at, else 0",
         "\\dfrac{1}{\\Gamma(\\alpha+1)}(t - \\tilde{t})^{\\alpha}"},
        {"RL derivative", "D^b step = (t-at)^{-b} / Gamma(1-b) for t > at", ""}}},
      {"weierstrass_shifted",
       "W(t) - W(t0), W(t) = sum_j sigma^{-j alpha} cos(sigma^j t)",
       {{"alpha", 0.5, "0 < alpha < 1"}, {"sigma", 2.0, "sigma > 1"}},
       {{"none", "Hoelder of order alpha, no fractional derivative of order alpha",
         "W_\\alpha(t) = \\sum_{j=0}^{\\infty} \\sigma^{-j\\alpha} \\cos{(\\sigma^j t)}"}}},
  };
  return table;
}

const CatalogEntry& entry(std::string_view name) {
  const auto& table = entries();
  auto it = std::find_if(table.begin(), table.end(),
                         [&](const CatalogEntry& e) { return e.name == name; });
  if (it == table.end()) {
    throw Error(Errc::unknown_name,
                "unknown catalog id '" + std::string(name) + "'");
  }
  return *it;
}

AnalyticFunction builtin(std::string_view name, const ParamMap& params) {
  const CatalogEntry& e = entry(name);
  AnalyticFunction f;
  f.name = e.name;
  f.params = resolve(e, params);
  f.t0 = f.params.at("t0");
  f.id = make_id(e, f.params);
  if (name == "constant") {
    build_constant(f);
  } else if (name == "power") {
    build_power(f);
  } else if (name == "ml_exp") {
    build_ml_exp(f);
  } else if (name == "step") {
    build_step(f);
  } else {
    build_weierstrass(f);
  }
  return f;
}

AnalyticFunction parse_spec(std::string_view spec, const ParamMap& extra) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  ParamMap params = extra;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        bad_param(name, "malformed parameter '" + std::string(item) + "'");
      }
      const std::string_view value = item.substr(eq + 1);
      double v = 0.0;
      auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        bad_param(name, "cannot parse value '" + std::string(value) + "'");
      }
      params[std::string(item.substr(0, eq))] = v;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return builtin(name, params);
}

GridFunction sample(const AnalyticFunction& f, double t0, double t1,
                    std::size_t n) {
  if (t0 != f.t0) {
    throw Error(Errc::invalid_parameter,
                "sample: grid start differs from the function's base point");
  }
  if (f.name == "step" && !(f.params.at("at") < t1)) {
    throw Error(Errc::invalid_parameter, "step: jump point must precede t1");
  }
  if (!(t0 < t1)) {
    throw Error(Errc::invalid_parameter, "sample: requires t0 < t1");
  }
  if (n < 2) throw Error(Errc::grid_too_small, "sample: requires n >= 2");
  std::vector<double> values(n);
  const GridFunction probe(t0, t1, std::vector<double>(n, 0.0));
  bool singular = false;
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = f.eval(probe.node(k));
    if (!std::isfinite(values[k])) {
      if (k == 0 && f.singular_at_start) {
        singular = true;
        continue;
      }
      std::ostringstream os;
      os << f.id << ": non-finite value at t = " << probe.node(k);
      throw Error(Errc::non_finite_value, os.str());
    }
  }
  return GridFunction(t0, t1, std::move(values), singular);
}

GridFunction sample(const std::function<double(double)>& f, double t0,
                    double t1, std::size_t n) {
  const GridFunction probe(t0, t1, std::vector<double>(n, 0.0));
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = f(probe.node(k));
  return probe.with_values(std::move(values));
}

}  // namespace fraccalc::catalog
