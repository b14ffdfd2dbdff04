#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gapfill/pipeline.hpp"
#include "gapfill/synthetic.hpp"

namespace gapfill {

struct SignalSource {
  std::string id;
  std::filesystem::path path;              // WAV file, or empty for a synthetic signal
  std::optional<SyntheticSpec> synthetic;
};

struct ExperimentSpec {
  std::vector<SignalSource> signals;
  std::size_t gaps_per_signal = 8;
  std::vector<double> gap_lengths_ms{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::uint64_t seed = 0;
  std::vector<MethodSpec> methods;
  PipelineConfig pipeline;
  std::size_t edge_margin_windows = 4;     // margin to the edges and between gaps, in window lengths
  std::size_t threads = 0;                 // 0: hardware concurrency
  double snr_cap_db = kDefaultSnrCapDb;
};

/// Parses the JSON experiment description. Relative signal paths are
/// resolved against `base_dir`. Unknown method names are rejected here.
ExperimentSpec parse_experiment(const std::string& json_text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// `count` gaps of `gap_length` samples, uniformly distributed over all
/// placements that keep `margin` samples to both signal edges and between
/// consecutive gaps. Sorted by start; deterministic in the seed.
std::vector<GapSpec> generate_gaps(std::size_t signal_length, std::size_t gap_length, std::size_t count,
                                   std::size_t margin, std::uint64_t seed);

struct ResultRow {
  std::string signal_id;
  std::size_t gap_index = 0;
  std::int64_t gap_start = 0;
  std::int64_t gap_length = 0;
  double gap_length_ms = 0.0;
  std::string method;
  std::string offset;
  std::optional<double> snr_db;
  std::size_t iterations = 0;
  bool converged = false;
  std::string status = "ok";
  double wall_time_s = 0.0;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);

/// Runs every signal x gap length x gap x method job on a worker pool and
/// streams rows to `csv` in job order, flushing after each row. Per-row
/// failures are recorded in the status column.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream& csv);
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& csv_path);

}  // namespace gapfill
