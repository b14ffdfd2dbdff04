#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gapfill/gap_model.hpp"

namespace gapfill {

struct JanssenConfig {
  std::size_t iterations = 50;
  std::size_t frame_length = 2800;      // w in the order rule; also the context kept on each side of a gap
  std::optional<std::size_t> order;     // overrides the order rule when set
};

void validate(const JanssenConfig& config);

// p = min(3H + 2, floor(w / 3))
std::size_t janssen_order(std::size_t missing, std::size_t frame_length);

/// Monic prediction-error filter (1, a_1, ..., a_p) of the segment by the
/// autocorrelation method and Levinson-Durbin recursion. A silent segment
/// yields the trivial filter; the recursion stops early (remaining
/// coefficients zero) if the prediction error vanishes.
std::vector<double> estimate_ar(std::span<const double> segment, std::size_t order);

/// Alternates AR estimation on the filled segment with the least-squares
/// update of the missing samples, which minimises |A z|^2 over the gap
/// samples (A: convolution by the filter, full-overlap rows only). Reliable
/// samples are returned unchanged. Throws order_too_large when the order
/// leaves too few equations.
Signal janssen_inpaint(std::span<const double> segment, const ReliableMask& mask, const JanssenConfig& config);

// |A z|_2^2 for the filter `a` (rows t = p .. n-1).
double prediction_error_energy(std::span<const double> signal, std::span<const double> a);

}  // namespace gapfill
