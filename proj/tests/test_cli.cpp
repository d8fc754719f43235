#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "fraccalc/cli.hpp"
#include "fraccalc/csv.hpp"
#include "fraccalc/errors.hpp"

namespace fs = std::filesystem;
using namespace fraccalc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fraccalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

GridFunction parse(const std::string& csv) {
  std::istringstream in(csv);
  return io::from_csv(in);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fraccalc_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::pole;
}

}  // namespace

TEST_CASE("catalog list and describe") {
  const auto list = run({"catalog", "list"});
  CHECK(list.code == 0);
  std::istringstream lines(list.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 5);

  const auto power = run({"catalog", "describe", "power"});
  CHECK(power.code == 0);
  CHECK(power.out.find(R"(\dfrac{\Gamma(\alpha+1)}{\Gamma(\alpha-\beta+1)}t^{\alpha-\beta})") !=
        std::string::npos);
  CHECK(power.out.find("RL derivative") != std::string::npos);
  CHECK(run({"catalog", "describe", "nosuch"}).code == 2);
  CHECK(run({"catalog"}).code == 2);
}

TEST_CASE("transform of a catalog function") {
  const auto r = run({"transform", "--fn", "power:p=0.5", "--op", "D", "--alpha", "0.5", "--n", "2049"});
  REQUIRE(r.code == 0);
  const auto g = parse(r.out);
  CHECK(g.size() == 2049);
  for (std::size_t k = 8; k < g.size(); ++k) CHECK(std::fabs(g[k] - 0.886227) < 5e-3);

  const auto c = parse(run({"transform", "--fn", "constant:c=1", "--op", "cD", "--alpha", "0.5"}).out);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == 0.0);

  const auto l = run({"transform", "--fn", "power:p=0.6", "--fn2", "power:p=0.8", "--op", "leibniz",
                      "--alpha", "0.5", "--n", "513"});
  CHECK(l.code == 0);
  CHECK(parse(l.out).size() == 513);
}

TEST_CASE("transform of CSV input") {
  TempDir dir;
  const auto in = dir.file("in.csv");
  const auto out = dir.file("out.csv");
  REQUIRE(run({"transform", "--fn", "ml_exp:alpha=0.7", "--op", "J", "--alpha", "0.3", "--n", "257",
               "--output", in}).code == 0);
  REQUIRE(run({"transform", "--input", in, "--op", "J", "--alpha", "0", "--output", out}).code == 0);
  CHECK(slurp(in) == slurp(out));
  for (const auto& e : fs::directory_iterator(dir.path)) {
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  }

  // cD on CSV takes f(t0) from the data when no --taylor is given.
  REQUIRE(run({"transform", "--fn", "constant:c=3", "--op", "J", "--alpha", "0", "--n", "65",
               "--output", in}).code == 0);
  const auto zero = parse(run({"transform", "--input", in, "--op", "cD", "--alpha", "0.4"}).out);
  for (std::size_t k = 0; k < zero.size(); ++k) CHECK(zero[k] == 0.0);
  CHECK(run({"transform", "--input", in, "--op", "cD", "--alpha", "1.4"}).code == 4);
  CHECK(run({"transform", "--input", in, "--op", "cD", "--alpha", "1.4", "--taylor", "3,0"}).code == 0);
}

TEST_CASE("singular marker is written as sing") {
  const auto r = run({"transform", "--fn", "constant", "--op", "D", "--alpha", "0.5", "--n", "65"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,value\n0,sing\n", 0) == 0);
  const auto g = parse(r.out);
  CHECK(g.singular_start());
  CHECK(io::to_csv(g) == r.out);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto uneven = dir.file("uneven.csv");
  std::ofstream(uneven) << "t,value\n0,1\n0.1,2\n0.3,3\n";
  const auto bad = run({"transform", "--input", uneven, "--op", "J", "--alpha", "0.5"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("spacing") != std::string::npos);

  const auto garbage = dir.file("garbage.csv");
  std::ofstream(garbage) << "t,value\n0,1\n0.5,x\n1,2\n";
  CHECK(run({"transform", "--input", garbage, "--op", "J", "--alpha", "0.5"}).code == 3);
  CHECK(run({"transform", "--input", dir.file("missing.csv"), "--op", "J", "--alpha", "0.5"}).code == 3);

  CHECK(run({"transform", "--fn", "constant", "--op", "D", "--alpha", "1.5", "--method", "marchaud"}).code == 4);
  CHECK(run({"transform", "--op", "J", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "power", "--input", uneven, "--op", "J", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "power", "--op", "X", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "power", "--op", "J", "--alpha", "0.5", "--method", "marchaud"}).code == 2);
  CHECK(run({"transform", "--fn", "power", "--op", "leibniz", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "nosuch", "--op", "J", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "power:p=-1", "--op", "J", "--alpha", "0.5"}).code == 2);
  CHECK(run({"transform", "--fn", "power", "--op", "D", "--alpha", "0"}).code == 4);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("CSV round trip is bit-exact") {
  std::mt19937_64 rng(99);
  std::vector<double> v(1000);
  for (auto& x : v) {
    do {
      x = std::bit_cast<double>(rng());
    } while (!std::isfinite(x));
  }
  v[1] = -0.0;
  v[2] = std::numeric_limits<double>::denorm_min();
  v[3] = std::numeric_limits<double>::max();
  const GridFunction g(0.0, 1.0, v);
  const auto back = parse(io::to_csv(g));
  REQUIRE(back.size() == g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::bit_cast<std::uint64_t>(back[k]) == std::bit_cast<std::uint64_t>(g[k]));
  }
  CHECK(back.t0() == 0.0);
  CHECK(back.t1() == 1.0);
}

TEST_CASE("CSV reader rejects malformed input") {
  CHECK(code_of([] { parse("x,y\n0,1\n1,2\n"); }) == Errc::malformed_input);
  CHECK(code_of([] { parse("t,value\n0,1\n"); }) == Errc::malformed_input);
  CHECK(code_of([] { parse("t,value\n0,1,2\n1,2\n"); }) == Errc::malformed_input);
  CHECK(code_of([] { parse("t,value\n0,1\n1,sing\n"); }) == Errc::malformed_input);
  CHECK(code_of([] { parse("t,value\n0,nan\n1,2\n"); }) == Errc::malformed_input);
  CHECK(code_of([] { parse("t,value\n1,1\n0,2\n"); }) == Errc::non_uniform_grid);
  CHECK(code_of([] { parse("t,value\n0,1\n0,2\n"); }) == Errc::non_uniform_grid);
  // CRLF and a trailing blank line are accepted.
  CHECK(parse("t,value\r\n0,1\r\n1,2\r\n\n").size() == 2);
  // Spacing within the relative tolerance passes.
  CHECK(parse("t,value\n0,1\n0.5000000001,2\n1,3\n").size() == 3);
  CHECK(code_of([] { parse("t,value\n0,1\n0.500001,2\n1,3\n"); }) == Errc::non_uniform_grid);
}

TEST_CASE("verify") {
  TempDir dir;
  const auto json = dir.file("report.json");
  const auto one = run({"verify", "--suite", "check_semigroup", "--json", json});
  CHECK(one.code == 0);
  const auto doc = nlohmann::json::parse(slurp(json));
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("tool_version").is_string());
  CHECK(doc.at("config_echo").at("n") == 2049);
  CHECK(doc.at("config_echo").at("seed") == 7);
  REQUIRE(doc.at("reports").size() == 1);
  const auto& r = doc.at("reports")[0];
  for (const char* key : {"check_id", "anchor", "grid_n", "max_error", "tolerance", "passed", "details"}) {
    CHECK(r.contains(key));
  }
  CHECK(r.at("check_id") == "check_semigroup");
  CHECK(doc.at("aggregate_pass") == true);

  CHECK(run({"verify", "--suite", "nosuch"}).code == 2);
  CHECK(run({"verify", "--suite", "check_inversion,check_leibniz"}).out.find("aggregate: PASS") !=
        std::string::npos);
}

TEST_CASE("verify of the full suite through the binary") {
  TempDir dir;
  const auto a = dir.file("a.json");
  const auto b = dir.file("b.json");
  const std::string bin = FRACCALC_BINARY;
  const int ra = std::system(("FRACCALC_THREADS=1 " + bin + " verify --suite all --seed 7 --json " + a +
                              " > /dev/null").c_str());
  const int rb = std::system((bin + " verify --suite all --seed 7 --json " + b + " > /dev/null").c_str());
  CHECK(WEXITSTATUS(ra) == 0);
  CHECK(WEXITSTATUS(rb) == 0);
  CHECK(slurp(a) == slurp(b));
  const auto doc = nlohmann::json::parse(slurp(a));
  CHECK(doc.at("reports").size() == 12);
  CHECK(doc.at("aggregate_pass") == true);
}
