#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gapfill/error.hpp"

namespace gapfill {

using Complex = std::complex<double>;
using Signal = std::vector<double>;
using ComplexSignal = std::vector<Complex>;

enum class WindowKind { hann, rectangular };

struct GaborParams {
  std::size_t window_length = 2800;
  std::size_t hop = 700;
  std::size_t channels = 2800;
  WindowKind window = WindowKind::hann;
  std::size_t signal_length = 0;

  std::size_t frames() const noexcept { return hop == 0 ? 0 : signal_length / hop; }
  std::size_t coefficient_count() const noexcept { return frames() * channels; }

  friend bool operator==(const GaborParams&, const GaborParams&) = default;
};

// Throws Error(invalid_params) unless 1 <= a <= w <= M, w <= L and a | L.
void validate(const GaborParams& params);

// Complex coefficients addressed by (time frame k, channel m), stored
// frame-major: flat index k * channels + m.
class CoefGrid {
 public:
  CoefGrid() = default;
  CoefGrid(std::size_t frames, std::size_t channels)
      : frames_(frames), channels_(channels), values_(frames * channels) {}

  std::size_t frames() const noexcept { return frames_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex& operator()(std::size_t k, std::size_t m) { return values_[k * channels_ + m]; }
  const Complex& operator()(std::size_t k, std::size_t m) const { return values_[k * channels_ + m]; }
  Complex& operator[](std::size_t n) { return values_[n]; }
  const Complex& operator[](std::size_t n) const { return values_[n]; }

  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> frame(std::size_t k) { return {values_.data() + k * channels_, channels_}; }
  std::span<const Complex> frame(std::size_t k) const {
    return {values_.data() + k * channels_, channels_};
  }

  bool same_shape(const CoefGrid& other) const noexcept {
    return frames_ == other.frames_ && channels_ == other.channels_;
  }

  friend bool operator==(const CoefGrid&, const CoefGrid&) = default;

 private:
  std::size_t frames_ = 0;
  std::size_t channels_ = 0;
  std::vector<Complex> values_;
};

namespace detail {
class FftEngine;
}

/// Parseval tight Gabor frame over C^L (periodic boundary).
///
/// Atom (k, m) is the tight window centred on sample k*a (0-based), then
/// modulated after translation:
///
///   d_{k,m}[t] = g[t - k a] * exp(2 pi i m (t - k a) / M)
///
/// with t - k a taken modulo L in [-floor(w/2), ceil(w/2)). Under this
/// frequency-invariant phase convention |d_{k,m}| does not depend on m.
/// The window is normalised so that D D* = Id.
///
/// Immutable after construction; analysis and synthesis are const and may be
/// called concurrently from several threads.
class TightGaborFrame {
 public:
  explicit TightGaborFrame(const GaborParams& params);

  const GaborParams& params() const noexcept { return params_; }
  std::size_t signal_length() const noexcept { return params_.signal_length; }
  std::size_t frames() const noexcept { return params_.frames(); }
  std::size_t channels() const noexcept { return params_.channels; }
  std::size_t coefficient_count() const noexcept { return params_.coefficient_count(); }

  // Tight window samples; entry j sits at time offset j - window_center().
  std::span<const double> tight_window() const noexcept { return window_; }
  std::size_t window_center() const noexcept { return params_.window_length / 2; }

  CoefGrid make_grid() const { return CoefGrid(frames(), channels()); }

  // D* y.
  CoefGrid analyze(std::span<const double> signal) const;
  CoefGrid analyze(std::span<const Complex> signal) const;
  void analyze_into(std::span<const double> signal, CoefGrid& out) const;

  // D x.
  ComplexSignal synthesize(const CoefGrid& coefs) const;
  // Re(D x): the synthesis operator of the same frame viewed over R^L, which
  // is again Parseval with adjoint D* restricted to real signals.
  Signal synthesize_real(const CoefGrid& coefs) const;
  void synthesize_real_into(const CoefGrid& coefs, std::span<double> out) const;

 private:
  void check_signal(std::size_t length) const;
  void check_coefs(const CoefGrid& coefs) const;

  GaborParams params_;
  std::vector<double> window_;
  std::vector<std::size_t> slot_;  // FFT bin position of window sample j
  std::shared_ptr<const detail::FftEngine> fft_;
};

TightGaborFrame build_tight_frame(const GaborParams& params);

// Prototype window (before tight normalisation), centred like tight_window().
std::vector<double> prototype_window(WindowKind kind, std::size_t length);

// ---------------------------------------------------------------------------
// Offset: aligning the frame with the gap centre.

enum class OffsetVariant { none, half, full };

struct OffsetSpec {
  OffsetVariant variant = OffsetVariant::none;
  std::int64_t value = 0;

  friend bool operator==(const OffsetSpec&, const OffsetSpec&) = default;
};

// s, f are 1-based indices of the first and last missing sample. The gap
// centre is c = floor((s + f) / 2); k is the largest integer with
// 1 + k a <= c. full: offset = c - (1 + k a); half additionally subtracts
// ceil(a / 2).
OffsetSpec compute_offset(std::int64_t s, std::int64_t f, std::int64_t hop, OffsetVariant variant);

// Circular shift that moves sample i to i - offset (mod L).
template <class T>
std::vector<T> apply_offset(std::span<const T> signal, std::int64_t offset) {
  const auto n = static_cast<std::int64_t>(signal.size());
  std::vector<T> out(signal.size());
  if (n == 0) return out;
  const std::int64_t shift = ((-offset) % n + n) % n;
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>((i + shift) % n)] = signal[i];
  return out;
}

template <class T>
std::vector<T> undo_offset(std::span<const T> signal, std::int64_t offset) {
  return apply_offset(signal, -offset);
}

}  // namespace gapfill
