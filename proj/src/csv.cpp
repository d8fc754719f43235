#include "fraccalc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "fraccalc/errors.hpp"

namespace fraccalc::io {
namespace {

void append_double(std::string& out, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw Error(Errc::malformed_input, "line " + std::to_string(line) +
                                           ": not a finite number: '" +
                                           std::string(s) + "'");
  }
  return x;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_csv(const GridFunction& g) {
  std::string out = "t,value\n";
  out.reserve(out.size() + g.size() * 48);
  for (std::size_t k = 0; k < g.size(); ++k) {
    append_double(out, g.node(k));
    out += ',';
    if (k == 0 && g.singular_start()) {
      out += kSingularToken;
    } else {
      append_double(out, g[k]);
    }
    out += '\n';
  }
  return out;
}

GridFunction from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != "t,value") {
    throw Error(Errc::malformed_input, "expected header 't,value'");
  }
  std::vector<double> t;
  std::vector<double> v;
  bool singular = false;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw Error(Errc::malformed_input,
                  "line " + std::to_string(lineno) + ": expected two columns");
    }
    t.push_back(parse_double(row.substr(0, comma), lineno));
    const std::string_view value = row.substr(comma + 1);
    if (value == kSingularToken) {
      if (!v.empty()) {
        throw Error(Errc::malformed_input, "line " + std::to_string(lineno) +
                                               ": 'sing' is only allowed in the first row");
      }
      singular = true;
      v.push_back(0.0);
    } else {
      v.push_back(parse_double(value, lineno));
    }
  }
  if (t.size() < 2) {
    throw Error(Errc::malformed_input, "need at least two data rows");
  }
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double dt = t[k] - t[k - 1];
    if (!(dt > 0.0) || std::fabs(dt - h) > kUniformityTolerance * h) {
      std::ostringstream os;
      os.precision(17);
      os << "spacing " << dt << " between rows " << k << " and "
         << k + 1 << " differs from " << h;
      throw Error(Errc::non_uniform_grid, os.str());
    }
  }
  return GridFunction(t.front(), t.back(), std::move(v), singular);
}

GridFunction read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::malformed_input, "cannot open '" + path.string() + "'");
  }
  return from_csv(in);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(Errc::malformed_input, "cannot write '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::malformed_input,
                "cannot replace '" + path.string() + "': " + ec.message());
  }
}

}  // namespace fraccalc::io
