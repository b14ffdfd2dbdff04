#include "gapfill/error.hpp"

namespace gapfill {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::invalid_range: return "invalid-range";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::zero_energy_original: return "zero-energy-original";
    case ErrorKind::unsupported_scheme: return "unsupported-scheme";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::insufficient_context: return "insufficient-context";
    case ErrorKind::segment_exceeds_gap: return "segment-exceeds-gap";
    case ErrorKind::non_monotone_knots: return "non-monotone-knots";
    case ErrorKind::order_too_large: return "order-too-large";
    case ErrorKind::placement_infeasible: return "placement-infeasible";
    case ErrorKind::malformed_input: return "malformed-input";
    case ErrorKind::io: return "io";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace gapfill
