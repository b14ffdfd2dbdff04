#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gapfill/gabor_frame.hpp"

namespace gapfill {

/// Portable random source: std::mt19937_64 (its output sequence is fixed by
/// the standard) with distribution code of our own, since the standard
/// library distributions differ between implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform in [0, bound] by rejection sampling.
  std::uint64_t below_or_equal(std::uint64_t bound);
  // Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Deterministic seed for a sub-stream, e.g. (experiment seed, signal, length).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

enum class SyntheticKind { sine, harmonic, ar };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::sine;
  double sample_rate = 44100.0;
  std::size_t length = 441000;
  double frequency = 500.0;      // sine frequency or harmonic fundamental
  double amplitude = 0.5;
  std::size_t harmonics = 6;     // harmonic: number of partials
  std::size_t order = 32;        // ar: even AR order (order / 2 sinusoids)
  std::uint64_t seed = 1;        // harmonic phases, ar frequencies and phases
};

SyntheticKind parse_synthetic_kind(const std::string& name);

// sine: A sin(2 pi f n / fs).
// harmonic: sum_k (A / k) sin(2 pi k f n / fs + phi_k), k = 1..harmonics.
// ar: order/2 sinusoids with distinct random frequencies; the result is an
//     exact AR(order) sequence (each sinusoid is annihilated by a
//     second-order filter), scaled to peak amplitude A.
Signal make_synthetic(const SyntheticSpec& spec);

}  // namespace gapfill
