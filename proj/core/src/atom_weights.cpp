#include "gapfill/atom_weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapfill {

std::string_view to_string(WeightScheme scheme) noexcept {
  switch (scheme) {
    case WeightScheme::none: return "none";
    case WeightScheme::supp: return "supp";
    case WeightScheme::abs: return "abs";
    case WeightScheme::norm: return "norm";
    case WeightScheme::energy: return "energy";
    case WeightScheme::iterative: return "iterative";
  }
  return "none";
}

WeightScheme parse_weight_scheme(std::string_view name) {
  for (auto s : {WeightScheme::none, WeightScheme::supp, WeightScheme::abs, WeightScheme::norm,
                 WeightScheme::energy, WeightScheme::iterative}) {
    if (name == to_string(s)) return s;
  }
  throw Error(ErrorKind::unsupported_scheme, "unknown weighting scheme '" + std::string(name) + "'");
}

WeightVector uniform_weights(std::size_t count) { return {std::vector<double>(count, 1.0), WeightScheme::none}; }

std::vector<double> frame_weights(const TightGaborFrame& frame, const ReliableMask& mask, WeightScheme scheme) {
  if (scheme == WeightScheme::iterative) {
    throw Error(ErrorKind::unsupported_scheme, "iterative weights are produced by the reweighting drivers");
  }
  if (mask.size() != frame.signal_length()) {
    throw Error(ErrorKind::dimension_mismatch, "mask length does not match the frame");
  }
  const std::size_t frames = frame.frames();
  std::vector<double> out(frames, 1.0);
  if (scheme == WeightScheme::none || mask.missing_count() == 0) return out;

  const auto& p = frame.params();
  const std::size_t L = p.signal_length;
  const auto window = frame.tight_window();
  for (std::size_t k = 0; k < frames; ++k) {
    double supp_all = 0, supp_rel = 0, abs_all = 0, abs_rel = 0, sq_all = 0, sq_rel = 0;
    std::size_t t = (k * p.hop + L - frame.window_center()) % L;
    for (std::size_t j = 0; j < window.size(); ++j, t = (t + 1 == L ? 0 : t + 1)) {
      const double g = std::abs(window[j]);
      if (g == 0.0) continue;
      supp_all += 1.0;
      abs_all += g;
      sq_all += g * g;
      if (mask.reliable(t)) {
        supp_rel += 1.0;
        abs_rel += g;
        sq_rel += g * g;
      }
    }
    double weight = 1.0;
    switch (scheme) {
      case WeightScheme::supp: weight = supp_rel / supp_all; break;
      case WeightScheme::abs: weight = abs_rel / abs_all; break;
      case WeightScheme::norm: weight = std::sqrt(sq_rel / sq_all); break;
      case WeightScheme::energy: {
        const double norm = std::sqrt(sq_rel / sq_all);
        weight = norm * norm;
        break;
      }
      default: break;
    }
    out[k] = std::max(weight, kWeightFloor);
  }
  return out;
}

WeightVector compute_weights(const TightGaborFrame& frame, const ReliableMask& mask, WeightScheme scheme) {
  const auto per_frame = frame_weights(frame, mask, scheme);
  const std::size_t M = frame.channels();
  WeightVector w{std::vector<double>(per_frame.size() * M), scheme};
  for (std::size_t k = 0; k < per_frame.size(); ++k) {
    std::fill_n(w.values.begin() + static_cast<std::ptrdiff_t>(k * M), M, per_frame[k]);
  }
  return w;
}

}  // namespace gapfill
