#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "gapfill/gap_model.hpp"

namespace gapfill {

// JSON sidecar: {"gaps": [{"start": s, "length": h}, ...], "sample_rate": r}
// with 1-based starts.
struct GapSidecar {
  std::vector<GapSpec> gaps;
  std::optional<std::uint32_t> sample_rate;
};

GapSidecar read_gap_sidecar(const std::filesystem::path& path);
GapSidecar parse_gap_sidecar(std::string_view json_text);
void write_gap_sidecar(const std::filesystem::path& path, const GapSidecar& sidecar);

// "start:length" as given to --gap.
GapSpec parse_gap_argument(std::string_view text);

// Copy of `signal` with every gap sample set to zero.
Signal punch_gaps(std::span<const double> signal, std::span<const GapSpec> gaps);

}  // namespace gapfill
