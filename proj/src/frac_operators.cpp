#include "fraccalc/frac_operators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fraccalc/errors.hpp"
#include "fraccalc/special_functions.hpp"

namespace fraccalc::ops {
namespace {

using special::gamma;

constexpr int kGaussPoints = 12;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};    // on [0, 1]
  std::array<double, kGaussPoints> weights{};
};

// Gauss-Legendre rule mapped to [0, 1], nodes by Newton on P_n.
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      r.nodes[i] = 0.5 * (1.0 - x);
      r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// int_{m-1}^{m} x^e l^pl r^pr dx with l = x - (m-1), r = m - x.
// The cell touching the kernel singularity (m = 1) is a Beta integral; the
// others have a smooth integrand whose nearest singularity sits at least
// one cell away, where 12-point Gauss-Legendre is exact to rounding.
double cell_moment(std::size_t m, double e, int pl, int pr) {
  if (m == 1) {
    const double a = e + pl + 1.0;  // Beta(a, pr + 1)
    double denom = a;
    double num = 1.0;
    for (int i = 1; i <= pr; ++i) {
      num *= i;
      denom *= a + i;
    }
    return num / denom;
  }
  const GaussRule& rule = gauss_rule();
  const double base = static_cast<double>(m - 1);
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    const double y = rule.nodes[i];
    sum += rule.weights[i] * std::pow(base + y, e) * std::pow(y, pl) *
           std::pow(1.0 - y, pr);
  }
  return sum;
}

// Moments indexed by cell distance m = k - j, m = 1..n-1 (index 0 unused).
std::vector<double> moment_table(std::size_t n, double e, int pl, int pr,
                                 std::size_t first = 1) {
  std::vector<double> t(n, 0.0);
  for (std::size_t m = first; m < n; ++m) t[m] = cell_moment(m, e, pl, pr);
  return t;
}

void require_alpha_unit(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << who << ": order must lie in (0, 1), got " << alpha;
    throw Error(Errc::order_out_of_range, os.str());
  }
}

void require_regular(const GridFunction& g, const char* who) {
  if (g.singular_start()) {
    throw Error(Errc::unintegrable_singularity,
                std::string(who) + ": input carries a singular marker");
  }
}

// Exponent gamma of a model g_1 ((s - t0)/h)^{-gamma} on the first cell.
double fit_start_exponent(const GridFunction& g) {
  if (g.size() < 3) return 0.0;
  const double g1 = g[1];
  const double g2 = g[2];
  if (!(g1 * g2 > 0.0) || !(std::fabs(g1) > std::fabs(g2))) return 0.0;
  return std::log2(g1 / g2);
}

// int_0^1 (k - x)^{order-1} x^{-gamma} dx, in units of h^order.
double singular_first_cell(std::size_t k, double order, double gamma_exp) {
  if (k == 1) {
    return gamma(order) * gamma(1.0 - gamma_exp) / gamma(1.0 + order - gamma_exp);
  }
  // x = y^q, q = 1/(1-gamma) removes the endpoint singularity.
  const double q = 1.0 / (1.0 - gamma_exp);
  const GaussRule& rule = gauss_rule();
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    const double x = std::pow(rule.nodes[i], q);
    sum += rule.weights[i] * std::pow(static_cast<double>(k) - x, order - 1.0);
  }
  return q * sum;
}


// Shape of g on the first cell (t0, t0 + h) in x = (s - t0)/h:
// g_0 + (g_1 - g_0) x^gamma. gamma is fitted from g_0, g_1, g_2 and the
// model is used only when the data are visibly non-linear there (root-type
// starts such as (t - t0)^p, 0 < p < 1); otherwise the cell stays linear.
struct StartModel {
  bool power = false;
  double gamma = 1.0;
};

constexpr double kMaxStartExponent = 0.95;

StartModel fit_start_model(const GridFunction& g) {
  StartModel model;
  if (g.size() < 3 || g.singular_start()) return model;
  const double d1 = g[1] - g[0];
  const double d2 = g[2] - g[0];
  if (d1 == 0.0) return model;
  const double ratio = d2 / d1;
  if (!(ratio > 1.0 && ratio < 2.0)) return model;
  const double gamma_exp = std::log2(ratio);
  if (gamma_exp < kMaxStartExponent) {
    model.power = true;
    model.gamma = gamma_exp;
  }
  return model;
}

// int_0^1 x^p (k - x)^e dx for k >= 2 (smooth kernel on the first cell).
// x = y^q with q = 1/(p + 1) turns x^p dx into q dy.
double first_cell_power_moment(std::size_t k, double p, double e) {
  const double q = 1.0 / (p + 1.0);
  const GaussRule& rule = gauss_rule();
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    const double x = std::pow(rule.nodes[i], q);
    sum += rule.weights[i] * std::pow(static_cast<double>(k) - x, e);
  }
  return q * sum;
}

}  // namespace

DerivativeMethod parse_method(std::string_view name) {
  if (name == "integral_then_difference") {
    return DerivativeMethod::integral_then_difference;
  }
  if (name == "marchaud") return DerivativeMethod::marchaud;
  throw Error(Errc::unknown_name,
              "unknown derivative method '" + std::string(name) + "'");
}

std::string_view method_name(DerivativeMethod method) {
  return method == DerivativeMethod::marchaud ? "marchaud"
                                              : "integral_then_difference";
}

DerivativeMethod default_method(const FracOrder& order) {
  return order.alpha() < 1.0 ? DerivativeMethod::marchaud
                             : DerivativeMethod::integral_then_difference;
}

GridFunction frac_integral(const GridFunction& g, double order) {
  if (!(order >= 0.0) || !std::isfinite(order)) {
    throw Error(Errc::order_out_of_range,
                "frac_integral: order must be finite and >= 0");
  }
  if (order == 0.0) return g;

  const std::size_t n = g.size();
  const double h = g.step();
  // Cell (t_j, t_{j+1}) with m = k - j: left node weight l_m, right r_m.
  const auto left = moment_table(n, order - 1.0, 1, 0);
  const auto right = moment_table(n, order - 1.0, 0, 1);

  double gamma_exp = 0.0;
  if (g.singular_start()) {
    gamma_exp = fit_start_exponent(g);
    if (gamma_exp >= 1.0) {
      std::ostringstream os;
      os << "frac_integral: endpoint singularity of estimated exponent "
         << gamma_exp << " is not integrable";
      throw Error(Errc::unintegrable_singularity, os.str());
    }
  }

  const StartModel start = fit_start_model(g);
  const double scale = std::pow(h, order) / gamma(order);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    std::size_t j0 = 0;
    if (g.singular_start()) {
      acc += singular_first_cell(k, order, gamma_exp) * g[1];
      j0 = 1;
    } else if (start.power) {
      // int_0^1 (k-x)^{order-1} [g_0 + (g_1 - g_0) x^gamma] dx
      const double power_part =
          k == 1 ? gamma(start.gamma + 1.0) * gamma(order) /
                       gamma(start.gamma + 1.0 + order)
                 : first_cell_power_moment(k, start.gamma, order - 1.0);
      acc += g[0] * (left[k] + right[k]) + (g[1] - g[0]) * power_part;
      j0 = 1;
    }
    for (std::size_t j = j0; j < k; ++j) {
      const std::size_t m = k - j;
      acc += left[m] * g[j] + right[m] * g[j + 1];
    }
    out[k] = scale * acc;
  }
  return g.with_values(std::move(out));
}

GridFunction marchaud_derivative(const GridFunction& g, double alpha) {
  require_alpha_unit(alpha, "marchaud_derivative");
  require_regular(g, "marchaud_derivative");

  const std::size_t n = g.size();
  const double h = g.step();
  // Kernel x^{-alpha-1}; the right-node weight of the last cell multiplies
  // g_k - g_k = 0 and is never needed (it diverges).
  const auto left = moment_table(n, -alpha - 1.0, 1, 0);
  const auto right = moment_table(n, -alpha - 1.0, 0, 1, 2);

  const StartModel start = fit_start_model(g);
  // Power-model first cell at k = 1: int_0^1 (x^gamma - 1)(1-x)^{-alpha-1} dx
  // by continuation of the Beta function in its second argument.
  const double start_k1 =
      start.power ? gamma(-alpha) * (gamma(start.gamma + 1.0) /
                                         gamma(start.gamma + 1.0 - alpha) -
                                     1.0 / gamma(1.0 - alpha))
                  : 0.0;

  const double scale = std::pow(h, -alpha) / gamma(1.0 - alpha);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double gk = g[k];
    const double d1 = g[1] - g[0];
    double acc = 0.0;
    std::size_t j0 = 0;
    if (start.power) {
      if (k == 1) {
        acc = d1 * start_k1;
      } else {
        acc = (g[0] - gk) * (left[k] + right[k]) +
              d1 * first_cell_power_moment(k, start.gamma, -alpha - 1.0);
      }
      j0 = 1;
    }
    if (k > j0) acc += left[1] * (g[k - 1] - gk);
    for (std::size_t j = j0; j + 1 < k; ++j) {
      const std::size_t m = k - j;
      acc += left[m] * (g[j] - gk) + right[m] * (g[j + 1] - gk);
    }
    out[k] = scale * (-alpha * acc +
                      gk * std::pow(static_cast<double>(k), -alpha));
  }
  return g.with_values(std::move(out));
}

bool blows_up_at_start(std::span<const double> d) {
  const std::size_t n = d.size();
  std::size_t last = 1;
  while (last * 2 <= 32 && last * 2 <= (n - 1) / 2) last *= 2;
  if (last < 4) return false;
  double prev = std::fabs(d[1]);
  for (std::size_t k = 2; k <= last; k *= 2) {
    const double cur = std::fabs(d[k]);
    if (!(cur < prev)) return false;
    prev = cur;
  }
  return std::fabs(d[1]) >= 2.0 * prev;
}

std::vector<double> differentiate(std::span<const double> y, double h,
                                  int order) {
  std::vector<double> cur(y.begin(), y.end());
  const std::size_t n = cur.size();
  while (order > 0) {
    std::vector<double> next(n);
    if (order >= 2) {
      if (n < 4) throw Error(Errc::grid_too_small, "differentiate: n < 4");
      const double s = 1.0 / (h * h);
      next[0] = s * (2.0 * cur[0] - 5.0 * cur[1] + 4.0 * cur[2] - cur[3]);
      next[n - 1] = s * (2.0 * cur[n - 1] - 5.0 * cur[n - 2] +
                         4.0 * cur[n - 3] - cur[n - 4]);
      for (std::size_t k = 1; k + 1 < n; ++k) {
        next[k] = s * (cur[k + 1] - 2.0 * cur[k] + cur[k - 1]);
      }
      order -= 2;
    } else {
      if (n < 3) throw Error(Errc::grid_too_small, "differentiate: n < 3");
      const double s = 0.5 / h;
      next[0] = s * (-3.0 * cur[0] + 4.0 * cur[1] - cur[2]);
      next[n - 1] = s * (3.0 * cur[n - 1] - 4.0 * cur[n - 2] + cur[n - 3]);
      for (std::size_t k = 1; k + 1 < n; ++k) {
        next[k] = s * (cur[k + 1] - cur[k - 1]);
      }
      order -= 1;
    }
    cur = std::move(next);
  }
  return cur;
}

GridFunction rl_derivative(const GridFunction& g, const FracOrder& order,
                           DerivativeMethod method) {
  const double alpha = order.alpha();
  std::vector<double> d;
  if (method == DerivativeMethod::marchaud) {
    if (!(alpha < 1.0)) {
      std::ostringstream os;
      os << "rl_derivative: marchaud method needs order in (0,1), got "
         << alpha;
      throw Error(Errc::method_order_mismatch, os.str());
    }
    const GridFunction out = marchaud_derivative(g, alpha);
    d.assign(out.values().begin(), out.values().end());
  } else {
    const int m = order.ceil();
    if (g.size() < static_cast<std::size_t>(2 * m + 2)) {
      std::ostringstream os;
      os << "rl_derivative: grid of " << g.size() << " nodes too small for "
         << "order " << alpha << " (need " << 2 * m + 2 << ")";
      throw Error(Errc::grid_too_small, os.str());
    }
    const GridFunction inner = frac_integral(g, m - alpha);
    require_regular(inner, "rl_derivative");
    d = differentiate(inner.values(), g.step(), m);
  }
  const bool singular = blows_up_at_start(d);
  return g.with_values(std::move(d), singular);
}

GridFunction rl_derivative(const GridFunction& g, const FracOrder& order) {
  return rl_derivative(g, order, default_method(order));
}

GridFunction caputo_derivative(const GridFunction& g, const FracOrder& order,
                               std::span<const double> taylor) {
  const int m = order.ceil();
  if (taylor.size() < static_cast<std::size_t>(m)) {
    std::ostringstream os;
    os << "caputo_derivative: order " << order.alpha() << " needs " << m
       << " Taylor coefficients, got " << taylor.size();
    throw Error(Errc::taylor_mismatch, os.str());
  }
  require_regular(g, "caputo_derivative");
  std::vector<double> shifted(g.values().begin(), g.values().end());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.node(k) - g.t0();
    double poly = 0.0;
    double pw = 1.0;
    double fact = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j > 0) {
        pw *= x;
        fact *= j;
      }
      poly += taylor[j] / fact * pw;
    }
    shifted[k] -= poly;
  }
  return rl_derivative(g.with_values(std::move(shifted)), order);
}

namespace {

// int_{t0}^{t_k} (t_k - s)^{-alpha-1} [u(s) - u_k][v(s) - v_k] ds for all k,
// with u, v piecewise linear.
std::vector<double> double_increment_integral(const GridFunction& u,
                                              const GridFunction& v,
                                              double alpha) {
  const std::size_t n = u.size();
  const double e = -alpha - 1.0;
  const auto qll = moment_table(n, e, 2, 0);
  const auto qlr = moment_table(n, e, 1, 1, 2);
  const auto qrr = moment_table(n, e, 0, 2, 2);
  const double scale = std::pow(u.step(), -alpha);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double uk = u[k];
    const double vk = v[k];
    double acc = qll[1] * (u[k - 1] - uk) * (v[k - 1] - vk);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      const std::size_t m = k - j;
      const double ul = u[j] - uk;
      const double ur = u[j + 1] - uk;
      const double vl = v[j] - vk;
      const double vr = v[j + 1] - vk;
      acc += qll[m] * ul * vl + qlr[m] * (ul * vr + ur * vl) + qrr[m] * ur * vr;
    }
    out[k] = scale * acc;
  }
  return out;
}

void require_leibniz_inputs(const GridFunction& u, const GridFunction& v,
                            double alpha, const char* who) {
  if (!u.same_grid(v)) {
    throw Error(Errc::grid_mismatch,
                std::string(who) + ": u and v must share one grid");
  }
  require_alpha_unit(alpha, who);
  require_regular(u, who);
  require_regular(v, who);
}

GridFunction shift_to_zero(const GridFunction& g) {
  std::vector<double> out(g.values().begin(), g.values().end());
  const double g0 = out[0];
  for (double& x : out) x -= g0;
  return g.with_values(std::move(out));
}

}  // namespace

GridFunction leibniz_rl(const GridFunction& u, const GridFunction& v,
                        double alpha) {
  require_leibniz_inputs(u, v, alpha, "leibniz_rl");
  const GridFunction du = marchaud_derivative(u, alpha);
  const GridFunction dv = marchaud_derivative(v, alpha);
  const auto cross = double_increment_integral(u, v, alpha);
  const double inv_g = 1.0 / gamma(1.0 - alpha);
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double tk = u.node(k) - u.t0();
    out[k] = u[k] * dv[k] + v[k] * du[k] - alpha * inv_g * cross[k] -
             u[k] * v[k] * inv_g * std::pow(tk, -alpha);
  }
  const bool singular = !(u[0] == 0.0 && v[0] == 0.0);
  return u.with_values(std::move(out), singular);
}

GridFunction leibniz_caputo(const GridFunction& u, const GridFunction& v,
                            double alpha) {
  require_leibniz_inputs(u, v, alpha, "leibniz_caputo");
  const GridFunction du = marchaud_derivative(shift_to_zero(u), alpha);
  const GridFunction dv = marchaud_derivative(shift_to_zero(v), alpha);
  const auto cross = double_increment_integral(u, v, alpha);
  const double inv_g = 1.0 / gamma(1.0 - alpha);
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double tk = u.node(k) - u.t0();
    out[k] = u[k] * dv[k] + v[k] * du[k] - alpha * inv_g * cross[k] -
             (u[k] - u[0]) * (v[k] - v[0]) * inv_g * std::pow(tk, -alpha);
  }
  return u.with_values(std::move(out));
}

}  // namespace fraccalc::ops
