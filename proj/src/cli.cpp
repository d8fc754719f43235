#include "fraccalc/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fraccalc/csv.hpp"
#include "fraccalc/errors.hpp"
#include "fraccalc/frac_operators.hpp"
#include "fraccalc/function_catalog.hpp"
#include "fraccalc/report.hpp"
#include "fraccalc/theorem_harness.hpp"
#include "fraccalc/version.hpp"

namespace fraccalc::cli {
namespace {

constexpr int kSuiteFailed = 1;
constexpr int kUsage = 2;

struct TransformArgs {
  std::string input;
  std::string fn;
  std::string input2;
  std::string fn2;
  std::string op;
  double alpha = 0.0;
  std::string method;
  std::size_t n = 2049;
  std::optional<double> t0;
  std::optional<double> t1;
  std::vector<double> taylor;
  std::string output;
};

struct VerifyArgs {
  std::vector<std::string> suite{"all"};
  std::size_t n = 2049;
  std::uint64_t seed = 7;
  std::string json;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_params(const catalog::CatalogEntry& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.params.size(); ++i) {
    if (i) os << ',';
    os << e.params[i].name << '=' << e.params[i].default_value;
  }
  return os.str();
}

void catalog_list(std::ostream& out) {
  for (const auto& e : catalog::entries()) {
    out << std::left << std::setw(22) << e.name << std::setw(22) << format_params(e)
        << e.summary << '\n';
  }
}

void catalog_describe(std::string_view id, std::ostream& out) {
  const auto name = id.substr(0, id.find(':'));
  const auto& e = catalog::entry(name);
  out << e.name << ": " << e.summary << "\n\nparameters:\n";
  for (const auto& p : e.params) {
    out << "  " << p.name << " (default " << p.default_value << "): " << p.constraint
        << '\n';
  }
  out << "  t0 (default 0): base point\n";
  if (!e.closed_forms.empty()) out << "\nclosed forms:\n";
  for (const auto& c : e.closed_forms) {
    out << "  " << c.transform << ": " << c.formula << '\n';
    if (!c.anchor.empty()) out << "    anchor: " << c.anchor << '\n';
  }
}

struct Operand {
  GridFunction grid;
  std::vector<double> taylor;
};

Operand load_operand(const std::string& input, const std::string& fn,
                     const TransformArgs& a, const char* which) {
  if (input.empty() == fn.empty()) {
    throw UsageError(std::string("exactly one of --input") + which + " / --fn" +
                     which + " is required");
  }
  if (!input.empty()) {
    if (a.t0 || a.t1) throw UsageError("--t0/--t1 only apply to --fn");
    return {io::read_csv(input), {}};
  }
  const auto f = catalog::parse_spec(fn);
  const double t0 = a.t0.value_or(f.t0);
  const double t1 = a.t1.value_or(t0 + 1.0);
  if (t0 != f.t0) {
    throw Error(Errc::invalid_parameter,
                "--t0 differs from the function's base point; pass t0 in --fn");
  }
  return {catalog::sample(f, t0, t1, a.n), f.taylor_at_t0};
}

GridFunction transform(const TransformArgs& a) {
  Operand u = load_operand(a.input, a.fn, a, "");
  if (!a.method.empty() && a.op != "D") {
    throw UsageError("--method only applies to --op D");
  }
  const bool needs_second = a.op == "leibniz";
  if (!needs_second && !(a.input2.empty() && a.fn2.empty())) {
    throw UsageError("--input2/--fn2 only apply to --op leibniz");
  }
  if (a.op == "J") return ops::frac_integral(u.grid, a.alpha);
  if (a.op == "D") {
    const FracOrder order(a.alpha);
    const auto method =
        a.method.empty() ? ops::default_method(order) : ops::parse_method(a.method);
    return ops::rl_derivative(u.grid, order, method);
  }
  if (a.op == "cD") {
    const FracOrder order(a.alpha);
    std::vector<double> taylor = a.taylor.empty() ? u.taylor : a.taylor;
    if (taylor.empty() && order.ceil() == 1 && !u.grid.singular_start()) {
      taylor.push_back(u.grid[0]);
    }
    return ops::caputo_derivative(u.grid, order, taylor);
  }
  Operand v = load_operand(a.input2, a.fn2, a, "2");
  return ops::leibniz_rl(u.grid, v.grid, a.alpha);
}

int verify(const VerifyArgs& a, std::ostream& out) {
  harness::SuiteConfig config;
  config.n = a.n;
  config.seed = a.seed;
  if (!(a.suite.size() == 1 && a.suite.front() == "all")) config.checks = a.suite;
  const auto reports = harness::run_suite(config);

  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-34s n=%-5zu max_error=%.3e  tolerance=%.1e",
                  r.passed ? "PASS" : "FAIL", r.check_id.c_str(), r.grid_n,
                  r.max_error, r.tolerance);
    out << line;
    if (!r.error.empty()) out << "  error: " << r.error;
    out << '\n';
  }
  const bool pass = harness::aggregate_pass(reports);
  out << "aggregate: " << (pass ? "PASS" : "FAIL") << '\n';
  if (!a.json.empty()) io::write_atomic(a.json, io::report_document(reports, config));
  return pass ? 0 : kSuiteFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional integrals and derivatives on uniform grids", "fraccalc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* cat = app.add_subcommand("catalog", "List or describe the built-in functions");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "One line per function with default parameters");
  std::string describe_id;
  auto* describe = cat->add_subcommand("describe", "Parameters and closed forms");
  describe->add_option("id", describe_id, "Function name, e.g. power")->required();

  TransformArgs ta;
  auto* tr = app.add_subcommand("transform", "Apply J, D, cD or the Leibniz rule");
  auto* in_opt = tr->add_option("--input", ta.input, "CSV with header t,value");
  auto* fn_opt = tr->add_option("--fn", ta.fn, "Catalog function, e.g. power:p=0.5");
  in_opt->excludes(fn_opt);
  tr->add_option("--input2", ta.input2, "Second factor for leibniz (CSV)");
  tr->add_option("--fn2", ta.fn2, "Second factor for leibniz (catalog)");
  tr->add_option("--op", ta.op, "Operator")
      ->required()
      ->check(CLI::IsMember({"J", "D", "cD", "leibniz"}));
  tr->add_option("--alpha", ta.alpha, "Order")->required();
  tr->add_option("--method", ta.method, "Derivative method for D")
      ->check(CLI::IsMember({"integral_then_difference", "marchaud"}));
  tr->add_option("--n", ta.n, "Grid size for --fn")->capture_default_str();
  tr->add_option("--t0", ta.t0, "Left endpoint for --fn");
  tr->add_option("--t1", ta.t1, "Right endpoint for --fn (default t0 + 1)");
  tr->add_option("--taylor", ta.taylor, "f(t0), f'(t0), ... for cD on CSV input")
      ->delimiter(',');
  tr->add_option("--output", ta.output, "Output CSV (default stdout)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the identity and counterexample checks");
  ver->add_option("--suite", va.suite, "all, or check ids")
      ->delimiter(',')
      ->capture_default_str();
  ver->add_option("--n", va.n, "Grid size")->capture_default_str();
  ver->add_option("--seed", va.seed, "Seed for random inputs")->capture_default_str();
  ver->add_option("--json", va.json, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (cat->got_subcommand("list")) {
      catalog_list(out);
    } else if (*describe) {
      catalog_describe(describe_id, out);
    } else if (*tr) {
      const std::string csv = io::to_csv(transform(ta));
      if (ta.output.empty()) {
        out << csv;
      } else {
        io::write_atomic(ta.output, csv);
      }
    } else if (*ver) {
      return verify(va, out);
    }
  } catch (const UsageError& e) {
    err << "fraccalc: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "fraccalc: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}

}  // namespace fraccalc::cli
