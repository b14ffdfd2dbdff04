#include "gapfill/gap_model.hpp"

#include <cmath>
#include <string>

namespace gapfill {

namespace {
void require_length(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorKind::length_mismatch, std::string(what) + ": expected " + std::to_string(expected) +
                                                " samples, got " + std::to_string(actual));
  }
}
}  // namespace

ReliableMask::ReliableMask(std::size_t length, std::span<const GapSpec> gaps)
    : flags_(length, 1), gaps_(gaps.begin(), gaps.end()) {
  const auto n = static_cast<std::int64_t>(length);
  for (const GapSpec& g : gaps_) {
    if (g.start < 1 || g.start > g.end || g.end > n) {
      throw Error(ErrorKind::invalid_range, "gap [" + std::to_string(g.start) + ", " + std::to_string(g.end) +
                                                "] outside signal of length " + std::to_string(length));
    }
    for (std::int64_t i = g.start; i <= g.end; ++i) flags_[static_cast<std::size_t>(i - 1)] = 0;
  }
  for (auto f : flags_) missing_ += (f == 0);
  if (missing_ == length) throw Error(ErrorKind::invalid_params, "mask has no reliable sample");
}

Signal mask_apply(const ReliableMask& mask, std::span<const double> signal) {
  require_length(mask.size(), signal.size(), "mask_apply");
  Signal out(signal.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mask.reliable(i) ? signal[i] : 0.0;
  return out;
}

Signal project_feasible(const ReliableMask& mask, std::span<const double> observed,
                        std::span<const double> candidate) {
  Signal out(candidate.begin(), candidate.end());
  project_feasible_inplace(mask, observed, out);
  return out;
}

void project_feasible_inplace(const ReliableMask& mask, std::span<const double> observed,
                              std::span<double> candidate) {
  require_length(mask.size(), observed.size(), "project_feasible (observed)");
  require_length(mask.size(), candidate.size(), "project_feasible (candidate)");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (mask.reliable(i)) candidate[i] = observed[i];
  }
}

bool is_feasible(const ReliableMask& mask, std::span<const double> observed,
                 std::span<const double> candidate) {
  require_length(mask.size(), observed.size(), "is_feasible (observed)");
  require_length(mask.size(), candidate.size(), "is_feasible (candidate)");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (mask.reliable(i) && candidate[i] != observed[i]) return false;
  }
  return true;
}

double snr_db(std::span<const double> original, std::span<const double> inpainted,
              std::span<const GapSpec> gaps, double cap_db) {
  require_length(original.size(), inpainted.size(), "snr");
  if (gaps.empty()) throw Error(ErrorKind::invalid_params, "snr requires at least one gap");
  const auto n = static_cast<std::int64_t>(original.size());
  double signal_energy = 0.0;
  double error_energy = 0.0;
  for (const GapSpec& g : gaps) {
    if (g.start < 1 || g.start > g.end || g.end > n) throw Error(ErrorKind::invalid_range, "snr gap outside signal");
    for (std::int64_t i = g.start - 1; i < g.end; ++i) {
      const double o = original[static_cast<std::size_t>(i)];
      const double e = o - inpainted[static_cast<std::size_t>(i)];
      signal_energy += o * o;
      error_energy += e * e;
    }
  }
  if (signal_energy == 0.0) throw Error(ErrorKind::zero_energy_original, "original is silent inside the gap");
  if (error_energy == 0.0) return cap_db;
  return 10.0 * std::log10(signal_energy / error_energy);
}

}  // namespace gapfill
