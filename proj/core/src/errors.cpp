#include "wedgetail/errors.hpp"

namespace wedgetail {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::zero_point: return "zero_point";
    case errc::out_of_range_angle: return "out_of_range_angle";
    case errc::inside_forbidden_zone: return "inside_forbidden_zone";
    case errc::insufficient_data: return "insufficient_data";
    case errc::nonpositive_tail: return "nonpositive_tail";
    case errc::degenerate_fit: return "degenerate_fit";
    case errc::length_mismatch: return "length_mismatch";
    case errc::empty_angles: return "empty_angles";
    case errc::degenerate_wedge: return "degenerate_wedge";
    case errc::insufficient_exceedances: return "insufficient_exceedances";
    case errc::empty_branch: return "empty_branch";
    case errc::nonpositive_alpha: return "nonpositive_alpha";
    case errc::nonpositive_threshold: return "nonpositive_threshold";
    case errc::file_not_found: return "file_not_found";
    case errc::parse_error: return "parse_error";
    case errc::empty_file: return "empty_file";
    case errc::nonpositive_price: return "nonpositive_price";
    case errc::too_short: return "too_short";
    case errc::io_error: return "io_error";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

}  // namespace wedgetail
