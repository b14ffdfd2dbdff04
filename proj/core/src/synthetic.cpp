#include "gapfill/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gapfill/error.hpp"

namespace gapfill {

std::uint64_t Rng::below_or_equal(std::uint64_t bound) {
  if (bound == ~std::uint64_t{0}) return engine_();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range) - 1;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v <= limit) return v % range;
  }
}

double Rng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over the combined words
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

SyntheticKind parse_synthetic_kind(const std::string& name) {
  if (name == "sine") return SyntheticKind::sine;
  if (name == "harmonic") return SyntheticKind::harmonic;
  if (name == "ar") return SyntheticKind::ar;
  throw Error(ErrorKind::invalid_config, "unknown synthetic signal '" + name + "' (expected sine|harmonic|ar)");
}

Signal make_synthetic(const SyntheticSpec& spec) {
  if (spec.length == 0 || !(spec.sample_rate > 0.0)) {
    throw Error(ErrorKind::invalid_config, "synthetic signal needs a positive length and sample rate");
  }
  Signal out(spec.length, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  Rng rng(spec.seed);
  switch (spec.kind) {
    case SyntheticKind::sine:
      for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = spec.amplitude * std::sin(two_pi * spec.frequency * static_cast<double>(n) / spec.sample_rate);
      }
      break;
    case SyntheticKind::harmonic:
      for (std::size_t k = 1; k <= spec.harmonics; ++k) {
        const double f = spec.frequency * static_cast<double>(k);
        if (f >= spec.sample_rate / 2.0) break;
        const double phase = rng.uniform(0.0, two_pi);
        const double amp = spec.amplitude / static_cast<double>(k);
        for (std::size_t n = 0; n < out.size(); ++n) {
          out[n] += amp * std::sin(two_pi * f * static_cast<double>(n) / spec.sample_rate + phase);
        }
      }
      break;
    case SyntheticKind::ar: {
      if (spec.order < 2 || spec.order % 2 != 0) {
        throw Error(ErrorKind::invalid_config, "AR fixture order must be even and at least 2");
      }
      const std::size_t count = spec.order / 2;
      // Frequencies on a jittered grid over (50 Hz, 5 kHz) keep them distinct.
      const double lo = 50.0, hi = std::min(5000.0, 0.45 * spec.sample_rate);
      const double cell = (hi - lo) / static_cast<double>(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double f = lo + cell * (static_cast<double>(i) + rng.uniform(0.1, 0.9));
        const double phase = rng.uniform(0.0, two_pi);
        const double amp = rng.uniform(0.3, 1.0);
        for (std::size_t n = 0; n < out.size(); ++n) {
          out[n] += amp * std::sin(two_pi * f * static_cast<double>(n) / spec.sample_rate + phase);
        }
      }
      double peak = 0.0;
      for (double v : out) peak = std::max(peak, std::abs(v));
      if (peak > 0.0) {
        for (double& v : out) v *= spec.amplitude / peak;
      }
      break;
    }
  }
  return out;
}

}  // namespace gapfill
