#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "gapfill/atom_weights.hpp"
#include "gapfill/janssen.hpp"
#include "gapfill/prox_solvers.hpp"
#include "gapfill/synthetic.hpp"

namespace {

struct Instance {
  gapfill::GaborParams params;
  gapfill::Signal observed;
  std::vector<gapfill::GapSpec> gaps;
};

// A 500 Hz tone on a 34-frame segment with a 20 ms hole in the middle.
Instance tone_instance() {
  Instance in;
  in.params.signal_length = 700 * 34;
  in.observed.resize(in.params.signal_length);
  for (std::size_t t = 0; t < in.observed.size(); ++t) {
    in.observed[t] = 0.5 * std::sin(2.0 * std::numbers::pi * 500.0 * static_cast<double>(t) / 44100.0);
  }
  in.gaps.push_back(gapfill::GapSpec::from_length(11460, 882));
  for (std::int64_t t = in.gaps[0].start; t <= in.gaps[0].end; ++t) in.observed[t - 1] = 0.0;
  return in;
}

void BM_DouglasRachford(benchmark::State& state) {
  const Instance in = tone_instance();
  const gapfill::TightGaborFrame f(in.params);
  const gapfill::ReliableMask mask(in.observed.size(), in.gaps);
  const auto w = gapfill::compute_weights(f, mask, gapfill::WeightScheme::norm);
  gapfill::SolverConfig c;
  c.max_iterations = static_cast<std::size_t>(state.range(0));
  c.tolerance = 1e-15;
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::dr_synthesis(f, mask, in.observed, w, c).iterations);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DouglasRachford)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ChambollePock(benchmark::State& state) {
  const Instance in = tone_instance();
  const gapfill::TightGaborFrame f(in.params);
  const gapfill::ReliableMask mask(in.observed.size(), in.gaps);
  const auto w = gapfill::compute_weights(f, mask, gapfill::WeightScheme::energy);
  gapfill::SolverConfig c;
  c.max_iterations = static_cast<std::size_t>(state.range(0));
  c.tolerance = 1e-15;
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::cp_analysis(f, mask, in.observed, w, c).iterations);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChambollePock)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Janssen(benchmark::State& state) {
  gapfill::SyntheticSpec s;
  s.kind = gapfill::SyntheticKind::harmonic;
  s.length = 2800 * 2 + static_cast<std::size_t>(state.range(0));
  const gapfill::Signal clean = gapfill::make_synthetic(s);
  const std::vector<gapfill::GapSpec> gaps{
      gapfill::GapSpec::from_length(2801, static_cast<std::int64_t>(state.range(0)))};
  const gapfill::ReliableMask mask(clean.size(), gaps);
  const gapfill::Signal y = gapfill::mask_apply(mask, clean);
  gapfill::JanssenConfig c;
  c.iterations = 5;
  for (auto _ : state) benchmark::DoNotOptimize(gapfill::janssen_inpaint(y, mask, c).data());
}
BENCHMARK(BM_Janssen)->Arg(221)->Arg(882)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
