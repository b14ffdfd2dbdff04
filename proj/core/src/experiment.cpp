#include "gapfill/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gapfill/gap_io.hpp"
#include "gapfill/wav_io.hpp"

namespace gapfill {

namespace {

using nlohmann::json;

template <class T>
void read_opt(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

WindowKind parse_window(const std::string& name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "rectangular") return WindowKind::rectangular;
  throw Error(ErrorKind::invalid_config, "unknown window '" + name + "' (expected hann|rectangular)");
}

SyntheticSpec parse_synthetic(const json& j) {
  SyntheticSpec s;
  s.kind = parse_synthetic_kind(j.at("kind").get<std::string>());
  read_opt(j, "sample_rate", s.sample_rate);
  read_opt(j, "frequency", s.frequency);
  read_opt(j, "amplitude", s.amplitude);
  read_opt(j, "harmonics", s.harmonics);
  read_opt(j, "order", s.order);
  read_opt(j, "seed", s.seed);
  if (j.contains("duration_s")) {
    s.length = static_cast<std::size_t>(std::llround(j.at("duration_s").get<double>() * s.sample_rate));
  }
  read_opt(j, "length", s.length);
  return s;
}

std::vector<MethodSpec> expand_matrix(const json& m) {
  auto list = [&](const char* key, std::vector<std::string> fallback) {
    return m.contains(key) ? m.at(key).get<std::vector<std::string>>() : fallback;
  };
  std::vector<MethodSpec> out;
  for (const auto& model : list("models", {"ana"})) {
    for (const auto& weights : list("weights", {"none"})) {
      for (const auto& offset : list("offsets", {"none"})) {
        for (const auto& variant : list("variants", {"plain"})) {
          out.push_back(parse_method(model + "-" + weights + "-" + offset + "-" + variant));
        }
      }
    }
  }
  if (m.value("janssen", false)) out.push_back(parse_method("janssen"));
  return out;
}

struct Instance {
  std::string signal_id;
  double sample_rate = 0.0;
  double gap_length_ms = 0.0;
  std::shared_ptr<const Signal> original;
  Signal degraded;
  std::vector<GapSpec> gaps;
  std::string failure;  // placement error, if any
};

struct Job {
  std::shared_ptr<const Instance> instance;
  std::size_t gap_index = 0;
  const MethodSpec* method = nullptr;
};

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', '_');
  std::replace(s.begin(), s.end(), '\n', '_');
  return s;
}

ResultRow run_job(const Job& job, const GapRestorer& restorer, double cap) {
  const Instance& inst = *job.instance;
  ResultRow row;
  row.signal_id = inst.signal_id;
  row.gap_index = job.gap_index;
  row.gap_length_ms = inst.gap_length_ms;
  row.method = descriptor(*job.method);
  row.offset = std::string(to_string(job.method->offset));
  if (!inst.failure.empty()) {
    row.status = inst.failure;
    return row;
  }
  const GapSpec& gap = inst.gaps[job.gap_index];
  row.gap_start = gap.start;
  row.gap_length = gap.length();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const GapFill fill = restorer.fill(inst.degraded, inst.gaps, job.gap_index, *job.method);
    row.iterations = fill.iterations;
    row.converged = fill.converged;
    const auto first = inst.original->begin() + (gap.start - 1);
    const std::vector<double> reference(first, first + gap.length());
    const GapSpec whole = GapSpec::from_length(1, gap.length());
    row.snr_db = snr_db(reference, fill.samples, std::span<const GapSpec>(&whole, 1), cap);
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  } catch (const std::exception&) {
    row.status = "error";
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& json_text, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  try {
    const json doc = json::parse(json_text);
    read_opt(doc, "seed", spec.seed);
    read_opt(doc, "gaps_per_signal", spec.gaps_per_signal);
    read_opt(doc, "gap_lengths_ms", spec.gap_lengths_ms);
    read_opt(doc, "threads", spec.threads);
    read_opt(doc, "edge_margin_windows", spec.edge_margin_windows);
    read_opt(doc, "snr_cap_db", spec.snr_cap_db);
    read_opt(doc, "context_windows", spec.pipeline.context_windows);

    for (const auto& s : doc.at("signals")) {
      SignalSource src;
      if (s.contains("synthetic")) {
        src.synthetic = parse_synthetic(s.at("synthetic"));
      } else {
        src.path = s.at("path").get<std::string>();
        if (src.path.is_relative() && !base_dir.empty()) src.path = base_dir / src.path;
      }
      src.id = s.contains("id") ? s.at("id").get<std::string>() : src.path.stem().string();
      spec.signals.push_back(std::move(src));
    }

    if (doc.contains("methods")) {
      for (const auto& m : doc.at("methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (doc.contains("matrix")) {
      for (auto& m : expand_matrix(doc.at("matrix"))) spec.methods.push_back(m);
    }

    PipelineConfig& p = spec.pipeline;
    if (doc.contains("frame")) {
      const json& f = doc.at("frame");
      read_opt(f, "window_length", p.frame.window_length);
      read_opt(f, "hop", p.frame.hop);
      read_opt(f, "channels", p.frame.channels);
      if (f.contains("window")) p.frame.window = parse_window(f.at("window").get<std::string>());
    }
    if (doc.contains("solver")) {
      const json& s = doc.at("solver");
      read_opt(s, "dr_tau", p.solver.dr_tau);
      read_opt(s, "cp_tau", p.solver.cp_tau);
      read_opt(s, "cp_sigma", p.solver.cp_sigma);
      read_opt(s, "tolerance", p.solver.tolerance);
      read_opt(s, "max_iterations", p.solver.max_iterations);
    }
    if (doc.contains("reweight")) {
      const json& r = doc.at("reweight");
      read_opt(r, "outer_iterations", p.reweight.outer_iterations);
      read_opt(r, "epsilon", p.reweight.epsilon);
      read_opt(r, "delta", p.reweight.delta);
    }
    if (doc.contains("gradual")) {
      read_opt(doc.at("gradual"), "step_fraction", p.gradual_step);
      read_opt(doc.at("gradual"), "strict", p.gradual_strict);
    }
    if (doc.contains("tdc")) {
      const json& t = doc.at("tdc");
      read_opt(t, "num_artificial_gaps", p.tdc.num_artificial_gaps);
      read_opt(t, "num_segments", p.tdc.num_segments);
      read_opt(t, "segment_length", p.tdc.segment_length);
      read_opt(t, "clamp_below_one", p.tdc.clamp_below_one);
    }
    if (doc.contains("janssen")) {
      const json& jn = doc.at("janssen");
      read_opt(jn, "iterations", p.janssen.iterations);
      read_opt(jn, "frame_length", p.janssen.frame_length);
      if (jn.contains("order")) p.janssen.order = jn.at("order").get<std::size_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("experiment spec: ") + e.what());
  }
  for (double ms : spec.gap_lengths_ms) {
    if (!(ms > 0.0)) throw Error(ErrorKind::invalid_config, "gap lengths must be positive");
  }
  validate(spec.pipeline);
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str(), path.parent_path());
}

std::vector<GapSpec> generate_gaps(std::size_t signal_length, std::size_t gap_length, std::size_t count,
                                   std::size_t margin, std::uint64_t seed) {
  if (gap_length == 0) throw Error(ErrorKind::invalid_config, "gap length must be positive");
  if (count == 0) return {};
  // Slack left after the mandatory margins and gaps; distributing it with
  // sorted uniform draws is uniform over valid ordered placements.
  const std::size_t needed = 2 * margin + count * gap_length + (count - 1) * margin;
  if (needed > signal_length) {
    throw Error(ErrorKind::placement_infeasible, std::to_string(count) + " gaps of " + std::to_string(gap_length) +
                                                     " samples do not fit a signal of " +
                                                     std::to_string(signal_length));
  }
  const std::uint64_t slack = signal_length - needed;
  Rng rng(seed);
  std::vector<std::uint64_t> offsets(count);
  for (auto& o : offsets) o = rng.below_or_equal(slack);
  std::sort(offsets.begin(), offsets.end());
  std::vector<GapSpec> gaps;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start0 = margin + i * (gap_length + margin) + offsets[i];
    gaps.push_back(GapSpec::from_length(static_cast<std::int64_t>(start0) + 1, static_cast<std::int64_t>(gap_length)));
  }
  return gaps;
}

std::string csv_header() {
  return "signal_id,gap_index,gap_start,gap_length_samples,gap_length_ms,method,offset,snr_db,iterations,converged,"
         "status,wall_time_s";
}

std::string csv_line(const ResultRow& r) {
  std::string out = sanitize(r.signal_id);
  out += ',' + std::to_string(r.gap_index);
  out += ',' + std::to_string(r.gap_start);
  out += ',' + std::to_string(r.gap_length);
  out += ',' + format_double(r.gap_length_ms, "%g");
  out += ',' + r.method;
  out += ',' + r.offset;
  out += ',' + (r.snr_db ? format_double(*r.snr_db, "%.6f") : std::string());
  out += ',' + std::to_string(r.iterations);
  out += r.converged ? ",1" : ",0";
  out += ',' + r.status;
  out += ',' + format_double(r.wall_time_s, "%.3f");
  return out;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream& csv) {
  const GapRestorer restorer(spec.pipeline);
  const std::size_t margin = spec.edge_margin_windows * spec.pipeline.frame.window_length;

  std::vector<Job> jobs;
  for (std::size_t si = 0; si < spec.signals.size(); ++si) {
    const SignalSource& src = spec.signals[si];
    auto original = std::make_shared<Signal>();
    double rate = 0.0;
    if (src.synthetic) {
      *original = make_synthetic(*src.synthetic);
      rate = src.synthetic->sample_rate;
    } else {
      WavData wav = read_wav(src.path);
      *original = std::move(wav.samples);
      rate = wav.sample_rate;
    }
    for (std::size_t li = 0; li < spec.gap_lengths_ms.size(); ++li) {
      auto inst = std::make_shared<Instance>();
      inst->signal_id = src.id;
      inst->sample_rate = rate;
      inst->gap_length_ms = spec.gap_lengths_ms[li];
      inst->original = original;
      const auto h = static_cast<std::size_t>(std::llround(spec.gap_lengths_ms[li] * rate / 1000.0));
      try {
        inst->gaps = generate_gaps(original->size(), std::max<std::size_t>(h, 1), spec.gaps_per_signal, margin,
                                   mix_seed(spec.seed, si, li));
        inst->degraded = punch_gaps(*original, inst->gaps);
      } catch (const Error& e) {
        inst->failure = std::string(to_string(e.kind()));
      }
      const std::size_t rows = inst->failure.empty() ? inst->gaps.size() : 1;
      for (std::size_t g = 0; g < rows; ++g) {
        for (const auto& m : spec.methods) jobs.push_back({inst, g, &m});
      }
    }
  }

  csv << csv_header() << '\n' << std::flush;
  std::vector<std::optional<ResultRow>> results(jobs.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      ResultRow row = run_job(jobs[i], restorer, spec.snr_cap_db);
      {
        std::lock_guard lock(mutex);
        results[i] = std::move(row);
      }
      ready.notify_all();
    }
  };
  std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);

  std::vector<ResultRow> out;
  out.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return results[i].has_value(); });
    out.push_back(std::move(*results[i]));
    results[i].reset();
    lock.unlock();
    csv << csv_line(out.back()) << '\n' << std::flush;
  }
  for (auto& t : pool) t.join();
  return out;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw Error(ErrorKind::io, "cannot write " + csv_path.string());
  return run_experiment(spec, csv);
}

}  // namespace gapfill
