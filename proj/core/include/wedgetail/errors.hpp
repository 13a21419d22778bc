#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wedgetail {

// Every failure mode the library reports. Codes are stable identifiers;
// messages are for humans and may change.
enum class errc {
  zero_point,               // operation undefined at the origin
  out_of_range_angle,       // angle arguments outside 0 < theta_l <= theta_u < 1
  inside_forbidden_zone,    // point lies in the closed wedge, distance is 0
  insufficient_data,        // fewer observations than the estimator needs
  nonpositive_tail,         // fewer than k+1 strictly positive values
  degenerate_fit,           // estimator has no usable slope (constant tail)
  length_mismatch,          // paired inputs of different length
  empty_angles,             // wedge fit requested on an empty angular sample
  degenerate_wedge,         // theta_l == theta_u collapses the wedge to a ray
  insufficient_exceedances, // fewer points beyond the threshold than requested
  empty_branch,             // no points strictly on the requested wedge side
  nonpositive_alpha,        // tail index parameter must be > 0
  nonpositive_threshold,    // threshold parameter must be > 0
  file_not_found,
  parse_error,
  empty_file,
  nonpositive_price,
  too_short,                // series shorter than the transform requires
  io_error,
  invalid_argument          // remaining precondition violations
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Carries the 1-based position of the offending input. column 0 means the
// row as a whole could not be split into fields.
class parse_error : public error {
 public:
  parse_error(std::size_t row, std::size_t column, const std::string& what)
      : error(errc::parse_error, what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace wedgetail
