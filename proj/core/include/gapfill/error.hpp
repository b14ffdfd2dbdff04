#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapfill {

enum class ErrorKind {
  invalid_params,
  dimension_mismatch,
  invalid_range,
  length_mismatch,
  zero_energy_original,
  unsupported_scheme,
  invalid_config,
  insufficient_context,
  segment_exceeds_gap,
  non_monotone_knots,
  order_too_large,
  placement_infeasible,
  malformed_input,
  io,
  numerical,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` lets callers (the CLI in
// particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gapfill
