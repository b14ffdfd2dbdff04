#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "gapfill/gabor_frame.hpp"
#include "gapfill/prox_solvers.hpp"

namespace {

gapfill::Signal noise(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  gapfill::Signal s(n);
  for (auto& v : s) v = d(rng);
  return s;
}

void BM_Analyze(benchmark::State& state) {
  gapfill::GaborParams p;
  p.signal_length = 700 * static_cast<std::size_t>(state.range(0));
  const gapfill::TightGaborFrame f(p);
  const auto y = noise(p.signal_length);
  gapfill::CoefGrid c = f.make_grid();
  for (auto _ : state) {
    f.analyze_into(y, c);
    benchmark::DoNotOptimize(c.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.signal_length));
}
BENCHMARK(BM_Analyze)->Arg(16)->Arg(32)->Arg(64);

void BM_SynthesizeReal(benchmark::State& state) {
  gapfill::GaborParams p;
  p.signal_length = 700 * static_cast<std::size_t>(state.range(0));
  const gapfill::TightGaborFrame f(p);
  const auto c = f.analyze(noise(p.signal_length));
  gapfill::Signal out(p.signal_length);
  for (auto _ : state) {
    f.synthesize_real_into(c, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.signal_length));
}
BENCHMARK(BM_SynthesizeReal)->Arg(16)->Arg(32)->Arg(64);

void BM_SoftThreshold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<gapfill::Complex> x(n);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  for (auto& v : x) v = {d(rng), d(rng)};
  const std::vector<double> t(n, 0.5);
  std::vector<gapfill::Complex> out(n);
  for (auto _ : state) {
    gapfill::soft_threshold_into(x, t, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SoftThreshold)->Range(1 << 12, 1 << 20);

}  // namespace
