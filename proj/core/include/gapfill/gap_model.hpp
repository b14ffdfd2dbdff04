#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gapfill/gabor_frame.hpp"

namespace gapfill {

// Compact run of missing samples, 1-based and inclusive on both ends.
struct GapSpec {
  std::int64_t start = 1;
  std::int64_t end = 1;

  std::int64_t length() const noexcept { return end - start + 1; }
  // floor((s + f) / 2), 1-based.
  std::int64_t center() const noexcept { return (start + end) / 2; }
  bool contains(std::int64_t index) const noexcept { return index >= start && index <= end; }
  bool overlaps(const GapSpec& o) const noexcept { return start <= o.end && o.start <= end; }

  static GapSpec from_length(std::int64_t start, std::int64_t length) { return {start, start + length - 1}; }

  friend bool operator==(const GapSpec&, const GapSpec&) = default;
};

/// Binary reliable-mask M_R derived from a list of gaps.
///
/// Gap ranges are the source of truth; the per-sample flags are derived on
/// construction. Throws invalid_range for a gap outside [1, L] and
/// invalid_params if no reliable sample remains.
class ReliableMask {
 public:
  ReliableMask() = default;
  ReliableMask(std::size_t length, std::span<const GapSpec> gaps);

  static ReliableMask all_reliable(std::size_t length) { return ReliableMask(length, {}); }

  std::size_t size() const noexcept { return flags_.size(); }
  bool reliable(std::size_t i) const noexcept { return flags_[i] != 0; }
  std::span<const std::uint8_t> flags() const noexcept { return flags_; }
  std::span<const GapSpec> gaps() const noexcept { return gaps_; }
  std::size_t missing_count() const noexcept { return missing_; }

 private:
  std::vector<std::uint8_t> flags_;
  std::vector<GapSpec> gaps_;
  std::size_t missing_ = 0;
};

// M_R x: reliable samples copied, gap samples zeroed.
Signal mask_apply(const ReliableMask& mask, std::span<const double> signal);

// proj_Gamma(x) = (Id - M_R) x + M_R y.
Signal project_feasible(const ReliableMask& mask, std::span<const double> observed,
                        std::span<const double> candidate);
void project_feasible_inplace(const ReliableMask& mask, std::span<const double> observed,
                              std::span<double> candidate);

// True iff `candidate` equals `observed` bit-exactly on every reliable sample.
bool is_feasible(const ReliableMask& mask, std::span<const double> observed,
                 std::span<const double> candidate);

inline constexpr double kDefaultSnrCapDb = 99.0;

// 10 log10(|y_orig|^2 / |y_orig - y_inp|^2) evaluated over the gap samples
// only. Returns `cap_db` for an exact reconstruction; throws
// zero_energy_original when the original is silent inside the gaps.
double snr_db(std::span<const double> original, std::span<const double> inpainted,
              std::span<const GapSpec> gaps, double cap_db = kDefaultSnrCapDb);

}  // namespace gapfill
