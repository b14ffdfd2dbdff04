#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gapfill/gap_model.hpp"

namespace gapfill {

struct TdcConfig {
  std::size_t num_artificial_gaps = 4;
  std::size_t num_segments = 10;       // m
  std::size_t segment_length = 0;      // 0 selects floor(h / 4)
  std::size_t window_length = 2800;    // w: distance of the first artificial gap and half its shift
  bool clamp_below_one = true;
};

void validate(const TdcConfig& config);

/// Artificial gaps of the true gap's length, half on each side (an odd count
/// puts the extra one on the right). The nearest gap on each side is
/// separated from the true gap by w reliable samples; each further gap moves
/// out by max(w/2, h) so that no two gaps overlap. Returned left to right.
/// Throws insufficient_context when a gap would leave [1, signal_length].
std::vector<GapSpec> place_artificial_gaps(const GapSpec& gap, const TdcConfig& config, std::size_t signal_length);

// Segment layout inside a gap of length h, relative to the gap start: starts
// are 0-based offsets, centres are real-valued offsets.
struct SegmentLayout {
  std::size_t segment_length = 0;
  std::vector<std::size_t> starts;
  std::vector<double> centers;
};

// m segments of the given length, centres equally spaced so that the first
// starts at the gap start and the last ends at the gap end.
SegmentLayout segment_layout(std::size_t gap_length, std::size_t m, std::size_t segment_length);

// Energy (sum of squares) of each segment of `gap` in `signal`.
std::vector<double> energy_progression(std::span<const double> signal, const GapSpec& gap, std::size_t m,
                                       std::size_t segment_length);

// Columns are artificial gaps, rows are segments.
struct EnergyMatrices {
  std::vector<std::vector<double>> inpainted;  // X, one column per gap
  std::vector<std::vector<double>> original;   // Y

  std::size_t rows() const noexcept { return inpainted.empty() ? 0 : inpainted.front().size(); }
  std::size_t cols() const noexcept { return inpainted.size(); }
};

struct Multipliers {
  std::vector<double> values;
  std::vector<bool> degenerate;  // row of X was all zero; value set to 1
};

// m_i = sum_j y_ij x_ij / sum_j x_ij^2
Multipliers solve_multipliers(const EnergyMatrices& energies);

// n_i <- (n_i + n_{m+1-i}) / 2 for the first floor(m/2) entries, then mirror.
std::vector<double> symmetrize(std::span<const double> n);

struct CompensationCurve {
  std::vector<double> multipliers;
  std::vector<double> amplitudes;   // sqrt of the multipliers
  std::vector<double> symmetrized;
  std::vector<double> knots;        // absolute 1-based positions: s, t_1..t_m, f
  std::vector<double> samples;      // q at s, s+1, ..., f
  std::vector<bool> degenerate;
  bool unimodal = true;
  bool clamped = false;             // some sample was raised to 1
};

/// Clamped cubic spline through (s, 1), (t_i, n_i), (f, 1) with zero slope at
/// s and f, sampled at the gap positions. With `clamp_below_one` samples
/// under 1 are raised to 1.
CompensationCurve build_curve(std::span<const double> n, std::span<const double> centers, const GapSpec& gap,
                              bool clamp_below_one = true);

// True when q is non-decreasing up to the centre and non-increasing after it.
bool is_unimodal(std::span<const double> q, double tolerance = 1e-12);

struct GapFill {
  std::vector<double> samples;  // restored values of the target gap
  std::size_t iterations = 0;
  bool converged = true;
};

// Fills `target` in `degraded`, treating every sample covered by `unreliable`
// (which includes `target`) as missing. Must not read unreliable samples.
using GapInpainter =
    std::function<GapFill(std::span<const double> degraded, std::span<const GapSpec> unreliable, const GapSpec& target)>;

struct TdcResult {
  Signal restored;
  CompensationCurve curve;
  std::vector<GapSpec> artificial_gaps;
  std::size_t iterations = 0;
  bool converged = true;
};

/// Time-domain compensation. The true gap and each artificial gap are filled
/// by `inner` with identical settings; the energy drop measured on the
/// artificial gaps gives a gain curve that multiplies the filled true gap.
/// `other_gaps` lists further missing runs of `observed` (kept missing in
/// every inner run). Samples outside `gap` are returned unchanged.
TdcResult tdc_inpaint(std::span<const double> observed, const GapSpec& gap, std::span<const GapSpec> other_gaps,
                      const GapInpainter& inner, const TdcConfig& config);

}  // namespace gapfill
