#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fraccalc/grid.hpp"

namespace fraccalc::io {

/// Literal written in place of the singular marker at index 0.
inline constexpr std::string_view kSingularToken = "sing";

/// Relative tolerance on the spacing of input t columns.
inline constexpr double kUniformityTolerance = 1e-9;

/// Header `t,value`, one row per node, shortest round-trip decimals.
std::string to_csv(const GridFunction& g);

/// Parses the format written by to_csv. Throws Errc::malformed_input on a
/// bad header, row or number and Errc::non_uniform_grid when t is not
/// strictly increasing with uniform spacing.
GridFunction from_csv(std::istream& in);

GridFunction read_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fraccalc::io
