#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gapfill {

struct SummaryRow {
  double gap_length_ms = 0.0;
  std::string method;
  double mean_snr_db = 0.0;
  std::size_t count = 0;
};

// Mean of the SNR values in dB per (gap length, method), over rows with
// status "ok". Sorted by gap length, then method. Throws malformed_input.
std::vector<SummaryRow> summarize(std::istream& csv);
std::vector<SummaryRow> summarize(const std::filesystem::path& csv_path);

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace gapfill
