#include "fraccalc/errors.hpp"

namespace fraccalc {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::pole: return "pole";
    case Errc::nonconvergence: return "nonconvergence";
    case Errc::unknown_name: return "unknown_name";
    case Errc::invalid_parameter: return "invalid_parameter";
    case Errc::non_finite_value: return "non_finite_value";
    case Errc::grid_too_small: return "grid_too_small";
    case Errc::grid_mismatch: return "grid_mismatch";
    case Errc::method_order_mismatch: return "method_order_mismatch";
    case Errc::order_out_of_range: return "order_out_of_range";
    case Errc::unintegrable_singularity: return "unintegrable_singularity";
    case Errc::taylor_mismatch: return "taylor_mismatch";
    case Errc::membership: return "membership";
    case Errc::constant_input: return "constant_input";
    case Errc::non_uniform_grid: return "non_uniform_grid";
    case Errc::malformed_input: return "malformed_input";
  }
  return "unknown";
}

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_name:
    case Errc::invalid_parameter:
      return 2;
    case Errc::non_finite_value:
    case Errc::grid_mismatch:
    case Errc::non_uniform_grid:
    case Errc::malformed_input:
    case Errc::constant_input:
      return 3;
    default:
      return 4;
  }
}

}  // namespace fraccalc
