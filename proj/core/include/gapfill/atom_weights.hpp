#pragma once

#include <string_view>
#include <vector>

#include "gapfill/gabor_frame.hpp"
#include "gapfill/gap_model.hpp"

namespace gapfill {

enum class WeightScheme { none, supp, abs, norm, energy, iterative };

std::string_view to_string(WeightScheme scheme) noexcept;
// Accepts the CLI spellings none|supp|abs|norm|energy|iterative.
WeightScheme parse_weight_scheme(std::string_view name);

// Lower clamp for atoms whose window lies entirely inside the gap.
inline constexpr double kWeightFloor = 1e-6;

struct WeightVector {
  std::vector<double> values;
  WeightScheme scheme = WeightScheme::none;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t n) const { return values[n]; }
};

WeightVector uniform_weights(std::size_t count);

/// Per-atom weights w_n for the weighted l1 norm.
///
///   supp:   |supp(M_R d_n)| / |supp(d_n)|
///   abs:    |M_R d_n|_1 / |d_n|_1
///   norm:   |M_R d_n|_2 / |d_n|_2
///   energy: |M_R d_n|_2^2 / |d_n|_2^2   (computed as norm * norm)
///
/// |d_n| depends only on the time frame, so each ratio is evaluated once per
/// frame on the tight window and broadcast over the channels. `iterative` is
/// rejected with unsupported_scheme; those weights come from the reweighting
/// drivers.
WeightVector compute_weights(const TightGaborFrame& frame, const ReliableMask& mask, WeightScheme scheme);

// The per-frame ratios behind compute_weights (length = number of frames).
std::vector<double> frame_weights(const TightGaborFrame& frame, const ReliableMask& mask, WeightScheme scheme);

}  // namespace gapfill
