#pragma once

#include <stdexcept>
#include <string>

namespace fraccalc {

/// Failure conditions raised by the library. Each maps to one CLI exit code.
enum class Errc {
  pole,
  nonconvergence,
  unknown_name,
  invalid_parameter,
  non_finite_value,
  grid_too_small,
  grid_mismatch,
  method_order_mismatch,
  order_out_of_range,
  unintegrable_singularity,
  taylor_mismatch,
  membership,
  constant_input,
  non_uniform_grid,
  malformed_input,
};

const char* errc_name(Errc code) noexcept;

/// Exit-code classes: 2 usage, 3 data, 4 numerical precondition.
int exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fraccalc
