// gapfill: restore compact gaps in mono audio, run benchmark matrices and
// summarise their results.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gapfill/experiment.hpp"
#include "gapfill/gap_io.hpp"
#include "gapfill/summary.hpp"
#include "gapfill/wav_io.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

int exit_code(gapfill::ErrorKind kind) {
  using gapfill::ErrorKind;
  switch (kind) {
    case ErrorKind::io:
    case ErrorKind::malformed_input:
      return kIo;
    case ErrorKind::invalid_config:
    case ErrorKind::unsupported_scheme:
    case ErrorKind::invalid_params:
    case ErrorKind::invalid_range:
    case ErrorKind::placement_infeasible:
      return kUsage;
    default:
      return kNumerical;
  }
}

struct InpaintArgs {
  std::string input;
  std::string output;
  std::vector<std::string> gaps;
  std::string gap_file;
  std::string reference;
  std::string method = "sparse";
  std::string model = "ana";
  std::string weights = "energy";
  std::string offset = "half";
  std::optional<double> gradual_step;
  bool tdc = false;
  std::size_t tdc_gaps = 4;
  std::size_t tdc_segments = 10;
  std::size_t max_iterations = 1000;
  double tolerance = 1e-4;
  std::size_t janssen_iterations = 50;
  std::string format;
};

int run_inpaint(const InpaintArgs& args) {
  using namespace gapfill;
  WavData wav = read_wav(args.input);
  if (wav.source_channels > 1) {
    std::cerr << "warning: " << args.input << " has " << wav.source_channels
              << " channels; only the first is processed\n";
  }

  std::vector<GapSpec> gaps;
  if (!args.gap_file.empty()) {
    const GapSidecar sidecar = read_gap_sidecar(args.gap_file);
    if (sidecar.sample_rate && *sidecar.sample_rate != wav.sample_rate) {
      std::cerr << "warning: gap file sample rate " << *sidecar.sample_rate << " differs from " << wav.sample_rate
                << '\n';
    }
    gaps = sidecar.gaps;
  }
  for (const auto& g : args.gaps) gaps.push_back(parse_gap_argument(g));
  if (gaps.empty()) throw Error(ErrorKind::invalid_params, "no gaps given (use --gap or --gaps)");

  MethodSpec method;
  if (args.method == "janssen") {
    method.algorithm = Algorithm::janssen;
  } else if (args.method == "sparse") {
    method.sparse.model = parse_model(args.model);
    method.sparse.weights = parse_weight_scheme(args.weights);
    method.offset = parse_offset(args.offset);
    if (args.tdc && args.gradual_step) throw Error(ErrorKind::invalid_config, "--tdc and --gradual-step exclude each other");
    if (args.tdc) method.variant = Variant::tdc;
    if (args.gradual_step) method.variant = Variant::gradual;
  } else {
    throw Error(ErrorKind::invalid_config, "unknown method '" + args.method + "' (expected sparse|janssen)");
  }

  PipelineConfig config;
  config.solver.max_iterations = args.max_iterations;
  config.solver.tolerance = args.tolerance;
  config.reweight.inner = config.solver;
  if (args.gradual_step) config.gradual_step = *args.gradual_step;
  config.tdc.num_artificial_gaps = args.tdc_gaps;
  config.tdc.num_segments = args.tdc_segments;
  config.janssen.iterations = args.janssen_iterations;
  const GapRestorer restorer(config);

  const Signal degraded = punch_gaps(wav.samples, gaps);
  std::vector<GapFill> fills;
  const Signal restored = restorer.restore(degraded, gaps, method, &fills);

  std::optional<Signal> reference;
  if (!args.reference.empty()) reference = read_wav(args.reference).samples;
  std::cout << "method: " << descriptor(method) << '\n';
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    std::cout << "gap " << i << ": start " << gaps[i].start << ", length " << gaps[i].length() << ", iterations "
              << fills[i].iterations << (fills[i].converged ? "" : " (not converged)");
    if (reference) {
      const GapSpec g = gaps[i];
      const double snr = snr_db(*reference, restored, std::span<const GapSpec>(&g, 1));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", snr);
      std::cout << ", snr " << buf << " dB";
    }
    std::cout << '\n';
  }

  WavData out{wav.sample_rate, wav.format, 1, restored};
  if (args.format == "pcm16") out.format = SampleFormat::pcm16;
  if (args.format == "float32") out.format = SampleFormat::float32;
  write_wav(args.output, out);
  return kOk;
}

int run_bench(const std::string& spec_path, const std::string& output, std::optional<std::size_t> threads) {
  gapfill::ExperimentSpec spec = gapfill::load_experiment(spec_path);
  if (threads) spec.threads = *threads;
  const auto rows = gapfill::run_experiment(spec, std::filesystem::path(output));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.status != "ok";
  std::cerr << rows.size() << " rows written to " << output;
  if (failed) std::cerr << " (" << failed << " failed)";
  std::cerr << '\n';
  return kOk;
}

int run_summarize(const std::string& input, const std::string& output) {
  const auto rows = gapfill::summarize(std::filesystem::path(input));
  if (output.empty()) {
    gapfill::write_summary(std::cout, rows);
  } else {
    std::ofstream out(output);
    if (!out) throw gapfill::Error(gapfill::ErrorKind::io, "cannot write " + output);
    gapfill::write_summary(out, rows);
  }
  return kOk;
}

int run_synth(const std::string& kind, const std::string& output, double seconds, double rate, double frequency,
              std::uint64_t seed) {
  gapfill::SyntheticSpec spec;
  spec.kind = gapfill::parse_synthetic_kind(kind);
  spec.sample_rate = rate;
  spec.length = static_cast<std::size_t>(std::llround(seconds * rate));
  spec.frequency = frequency;
  spec.seed = seed;
  gapfill::WavData wav{static_cast<std::uint32_t>(rate), gapfill::SampleFormat::float32, 1,
                       gapfill::make_synthetic(spec)};
  gapfill::write_wav(output, wav);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse and autoregressive audio gap restoration"};
  app.require_subcommand(1);

  InpaintArgs ia;
  auto* inpaint = app.add_subcommand("inpaint", "Restore gaps in a WAV file");
  inpaint->add_option("input", ia.input, "Input WAV (gap samples are ignored)")->required()->check(CLI::ExistingFile);
  inpaint->add_option("-o,--output", ia.output, "Output WAV")->required();
  inpaint->add_option("--gap", ia.gaps, "Gap as start:length, 1-based (repeatable)");
  inpaint->add_option("--gaps", ia.gap_file, "JSON gap sidecar")->check(CLI::ExistingFile);
  inpaint->add_option("--method", ia.method, "sparse or janssen")->capture_default_str();
  inpaint->add_option("--model", ia.model, "syn or ana")->capture_default_str();
  inpaint->add_option("--weights", ia.weights, "none|supp|abs|norm|energy|iterative")->capture_default_str();
  inpaint->add_option("--offset", ia.offset, "none|half|full")->capture_default_str();
  inpaint->add_option("--gradual-step", ia.gradual_step, "Gradual inpainting with r = fraction * h");
  inpaint->add_flag("--tdc", ia.tdc, "Time-domain energy compensation");
  inpaint->add_option("--tdc-gaps", ia.tdc_gaps, "Artificial gaps for compensation")->capture_default_str();
  inpaint->add_option("--tdc-segments", ia.tdc_segments, "Segments per gap for compensation")->capture_default_str();
  inpaint->add_option("--max-iterations", ia.max_iterations, "Solver iteration limit")->capture_default_str();
  inpaint->add_option("--tolerance", ia.tolerance, "Relative change stopping tolerance")->capture_default_str();
  inpaint->add_option("--janssen-iterations", ia.janssen_iterations, "Janssen iterations")->capture_default_str();
  inpaint->add_option("--reference", ia.reference, "Clean WAV for gap SNR reporting")->check(CLI::ExistingFile);
  inpaint->add_option("--format", ia.format, "Output sample format pcm16|float32 (default: as input)")
      ->check(CLI::IsMember({"pcm16", "float32"}));

  std::string spec_path, bench_out;
  std::optional<std::size_t> threads;
  auto* bench = app.add_subcommand("bench", "Run an experiment matrix and write per-gap results");
  bench->add_option("spec", spec_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("-o,--output", bench_out, "Results CSV")->required();
  bench->add_option("--threads", threads, "Worker threads (default: all cores)");

  std::string csv_in, summary_out;
  auto* summarize = app.add_subcommand("summarize", "Mean SNR per gap length and method");
  summarize->add_option("results", csv_in, "Results CSV")->required()->check(CLI::ExistingFile);
  summarize->add_option("-o,--output", summary_out, "Write the table here instead of stdout");

  std::string synth_kind, synth_out;
  double seconds = 10.0, rate = 44100.0, frequency = 500.0;
  std::uint64_t seed = 1;
  auto* synth = app.add_subcommand("synth", "Write a synthetic test signal");
  synth->add_option("kind", synth_kind, "sine|harmonic|ar")->required();
  synth->add_option("-o,--output", synth_out, "Output WAV")->required();
  synth->add_option("--seconds", seconds, "Duration")->capture_default_str();
  synth->add_option("--rate", rate, "Sample rate")->capture_default_str();
  synth->add_option("--frequency", frequency, "Frequency or fundamental in Hz")->capture_default_str();
  synth->add_option("--seed", seed, "Seed for random phases")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*inpaint) return run_inpaint(ia);
    if (*bench) return run_bench(spec_path, bench_out, threads);
    if (*summarize) return run_summarize(csv_in, summary_out);
    if (*synth) return run_synth(synth_kind, synth_out, seconds, rate, frequency, seed);
  } catch (const gapfill::Error& e) {
    std::cerr << "gapfill: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "gapfill: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
