#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "gapfill/gradual.hpp"
#include "gapfill/janssen.hpp"
#include "gapfill/method.hpp"
#include "gapfill/time_compensation.hpp"

namespace gapfill {

struct PipelineConfig {
  GaborParams frame;               // signal_length is ignored; set per segment
  std::size_t context_windows = 4; // reliable context on each side of a gap, in window lengths
  SolverConfig solver;
  ReweightConfig reweight;
  double gradual_step = 0.125;
  bool gradual_strict = false;
  TdcConfig tdc;                   // window_length is taken from `frame`
  JanssenConfig janssen;
};

void validate(const PipelineConfig& config);

// Part of the signal processed for one gap: 0-based `start` and `length` in
// the signal, `padded_length` >= length (zero padding at the end).
struct SegmentPlan {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t padded_length = 0;
};

// Length h + 2 * context rounded up to a multiple of `hop` (and at least
// `window`), centred on the gap and shifted to stay inside the signal. A
// signal shorter than that is processed whole with zero padding.
SegmentPlan plan_segment(std::size_t signal_length, const GapSpec& gap, std::size_t context, std::size_t window,
                         std::size_t hop);

// Image of `gap` under the circular shift i -> i - offset on [1, length];
// a gap that wraps around is split in two.
std::vector<GapSpec> shift_gap(const GapSpec& gap, std::int64_t offset, std::size_t length);

/// Fills single gaps of a degraded signal with one method of the matrix.
///
/// Each call cuts a context segment around the target gap (every sample of
/// `gaps` inside it is treated as missing), applies the frame offset, runs
/// the method, undoes the offset and returns the restored target samples.
/// Frames are cached per segment length. Thread-safe.
class GapRestorer {
 public:
  explicit GapRestorer(PipelineConfig config);

  const PipelineConfig& config() const noexcept { return config_; }

  GapFill fill(std::span<const double> degraded, std::span<const GapSpec> gaps, std::size_t target,
               const MethodSpec& method) const;

  // Fills every gap independently and splices the results; samples outside
  // the gaps are copied unchanged.
  Signal restore(std::span<const double> degraded, std::span<const GapSpec> gaps, const MethodSpec& method,
                 std::vector<GapFill>* fills = nullptr) const;

  std::shared_ptr<const TightGaborFrame> frame_for(std::size_t length) const;

 private:
  GapFill fill_core(std::span<const double> degraded, std::span<const GapSpec> unreliable, const GapSpec& target,
                    const MethodSpec& method) const;
  GapFill fill_janssen(std::span<const double> degraded, std::span<const GapSpec> unreliable,
                       const GapSpec& target) const;

  PipelineConfig config_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const TightGaborFrame>> cache_;
};

}  // namespace gapfill
