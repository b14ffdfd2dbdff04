#include "gapfill/gabor_frame.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace gapfill {
namespace detail {

namespace {
// Planning and plan destruction are not thread-safe in FFTW; execution with
// the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

class FftEngine {
 public:
  explicit FftEngine(std::size_t size) : size_(size) {
    const int n = static_cast<int>(size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::vector<double> real(size);
    std::vector<Complex> half(size / 2 + 1);
    std::vector<Complex> full_in(size), full_out(size);
    std::lock_guard lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c_1d(n, real.data(), as_fftw(half.data()), flags);
    c2r_ = fftw_plan_dft_c2r_1d(n, as_fftw(half.data()), real.data(), flags);
    forward_ = fftw_plan_dft_1d(n, as_fftw(full_in.data()), as_fftw(full_out.data()), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(n, as_fftw(full_in.data()), as_fftw(full_out.data()), FFTW_BACKWARD, flags);
    if (!r2c_ || !c2r_ || !forward_ || !backward_) {
      throw Error(ErrorKind::numerical, "FFTW failed to create plans of size " + std::to_string(size));
    }
  }

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  ~FftEngine() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  std::size_t size() const noexcept { return size_; }

  void r2c(double* in, Complex* out) const { fftw_execute_dft_r2c(r2c_, in, as_fftw(out)); }
  // Destroys `in`.
  void c2r(Complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, as_fftw(in), out); }
  void forward(Complex* in, Complex* out) const { fftw_execute_dft(forward_, as_fftw(in), as_fftw(out)); }
  void backward(Complex* in, Complex* out) const { fftw_execute_dft(backward_, as_fftw(in), as_fftw(out)); }

 private:
  std::size_t size_;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace detail

void validate(const GaborParams& p) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::invalid_params, msg); };
  if (p.hop < 1) fail("hop must be at least 1");
  if (p.window_length < p.hop) fail("window length must be at least the hop");
  if (p.channels < p.window_length) fail("channel count must be at least the window length");
  if (p.signal_length == 0) fail("signal length must be positive");
  if (p.signal_length % p.hop != 0) fail("signal length must be divisible by the hop");
  if (p.signal_length < p.window_length) fail("signal length must be at least the window length");
}

std::vector<double> prototype_window(WindowKind kind, std::size_t length) {
  std::vector<double> g(length, 1.0);
  if (kind == WindowKind::hann) {
    const auto center = static_cast<double>(length / 2);
    for (std::size_t j = 0; j < length; ++j) {
      const double n = static_cast<double>(j) - center;
      g[j] = 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * n / static_cast<double>(length));
    }
  }
  return g;
}

TightGaborFrame::TightGaborFrame(const GaborParams& params) : params_(params) {
  validate(params_);
  const std::size_t w = params_.window_length;
  const std::size_t a = params_.hop;
  const std::size_t center = w / 2;
  window_ = prototype_window(params_.window, w);

  // Painless case: the frame operator is diagonal, M * sum_k g(t - k a)^2.
  std::vector<double> periodized(a, 0.0);
  for (std::size_t j = 0; j < w; ++j) {
    const std::size_t r = (j + a * w - center) % a;
    periodized[r] += window_[j] * window_[j];
  }
  for (double s : periodized) {
    if (!(s > 0.0)) throw Error(ErrorKind::invalid_params, "window does not cover every hop residue");
  }
  const double m = static_cast<double>(params_.channels);
  for (std::size_t j = 0; j < w; ++j) {
    const std::size_t r = (j + a * w - center) % a;
    window_[j] /= std::sqrt(m * periodized[r]);
  }
  slot_.resize(w);
  for (std::size_t j = 0; j < w; ++j) slot_[j] = (j + params_.channels - center) % params_.channels;
  fft_ = std::make_shared<const detail::FftEngine>(params_.channels);
}

TightGaborFrame build_tight_frame(const GaborParams& params) { return TightGaborFrame(params); }

void TightGaborFrame::check_signal(std::size_t length) const {
  if (length != params_.signal_length) {
    throw Error(ErrorKind::dimension_mismatch, "signal length " + std::to_string(length) +
                                                    " does not match frame length " +
                                                    std::to_string(params_.signal_length));
  }
}

void TightGaborFrame::check_coefs(const CoefGrid& coefs) const {
  if (coefs.frames() != frames() || coefs.channels() != channels()) {
    throw Error(ErrorKind::dimension_mismatch, "coefficient grid shape does not match the frame");
  }
}

CoefGrid TightGaborFrame::analyze(std::span<const double> signal) const {
  CoefGrid out = make_grid();
  analyze_into(signal, out);
  return out;
}

void TightGaborFrame::analyze_into(std::span<const double> signal, CoefGrid& out) const {
  check_signal(signal.size());
  if (!out.same_shape(make_grid())) out = make_grid();
  const std::size_t L = params_.signal_length;
  const std::size_t M = params_.channels;
  const std::size_t w = params_.window_length;
  const std::size_t center = window_center();
  std::vector<double> buf(M);
  std::vector<Complex> spec(M / 2 + 1);
  for (std::size_t k = 0; k < frames(); ++k) {
    std::fill(buf.begin(), buf.end(), 0.0);
    std::size_t t = (k * params_.hop + L - center) % L;
    for (std::size_t j = 0; j < w; ++j) {
      buf[slot_[j]] = signal[t] * window_[j];
      if (++t == L) t = 0;
    }
    fft_->r2c(buf.data(), spec.data());
    auto row = out.frame(k);
    for (std::size_t m = 0; m <= M / 2; ++m) row[m] = spec[m];
    for (std::size_t m = M / 2 + 1; m < M; ++m) row[m] = std::conj(spec[M - m]);
  }
}

CoefGrid TightGaborFrame::analyze(std::span<const Complex> signal) const {
  check_signal(signal.size());
  const std::size_t L = params_.signal_length;
  const std::size_t M = params_.channels;
  const std::size_t w = params_.window_length;
  const std::size_t center = window_center();
  CoefGrid out = make_grid();
  std::vector<Complex> buf(M);
  for (std::size_t k = 0; k < frames(); ++k) {
    std::fill(buf.begin(), buf.end(), Complex{});
    std::size_t t = (k * params_.hop + L - center) % L;
    for (std::size_t j = 0; j < w; ++j) {
      buf[slot_[j]] = signal[t] * window_[j];
      if (++t == L) t = 0;
    }
    fft_->forward(buf.data(), out.frame(k).data());
  }
  return out;
}

ComplexSignal TightGaborFrame::synthesize(const CoefGrid& coefs) const {
  check_coefs(coefs);
  const std::size_t L = params_.signal_length;
  const std::size_t M = params_.channels;
  const std::size_t w = params_.window_length;
  const std::size_t center = window_center();
  ComplexSignal out(L);
  std::vector<Complex> in(M), time(M);
  for (std::size_t k = 0; k < frames(); ++k) {
    auto row = coefs.frame(k);
    std::copy(row.begin(), row.end(), in.begin());
    fft_->backward(in.data(), time.data());
    std::size_t t = (k * params_.hop + L - center) % L;
    for (std::size_t j = 0; j < w; ++j) {
      out[t] += window_[j] * time[slot_[j]];
      if (++t == L) t = 0;
    }
  }
  return out;
}

Signal TightGaborFrame::synthesize_real(const CoefGrid& coefs) const {
  Signal out(params_.signal_length);
  synthesize_real_into(coefs, out);
  return out;
}

void TightGaborFrame::synthesize_real_into(const CoefGrid& coefs, std::span<double> out) const {
  check_coefs(coefs);
  check_signal(out.size());
  const std::size_t L = params_.signal_length;
  const std::size_t M = params_.channels;
  const std::size_t w = params_.window_length;
  const std::size_t center = window_center();
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<Complex> half(M / 2 + 1);
  std::vector<double> time(M);
  for (std::size_t k = 0; k < frames(); ++k) {
    auto row = coefs.frame(k);
    // Re(sum_m c_m e^{i theta m}) only sees the Hermitian part of c.
    half[0] = Complex(row[0].real(), 0.0);
    for (std::size_t m = 1; m < (M + 1) / 2; ++m) half[m] = 0.5 * (row[m] + std::conj(row[M - m]));
    if (M % 2 == 0) half[M / 2] = Complex(row[M / 2].real(), 0.0);
    fft_->c2r(half.data(), time.data());
    std::size_t t = (k * params_.hop + L - center) % L;
    for (std::size_t j = 0; j < w; ++j) {
      out[t] += window_[j] * time[slot_[j]];
      if (++t == L) t = 0;
    }
  }
}

OffsetSpec compute_offset(std::int64_t s, std::int64_t f, std::int64_t hop, OffsetVariant variant) {
  if (s < 1 || s > f) {
    throw Error(ErrorKind::invalid_range, "gap start must satisfy 1 <= s <= f");
  }
  if (hop < 1) throw Error(ErrorKind::invalid_params, "hop must be at least 1");
  if (variant == OffsetVariant::none) return {variant, 0};
  const std::int64_t c = (s + f) / 2;
  const std::int64_t k = (c - 1) / hop;
  std::int64_t d = 1 + k * hop;
  if (variant == OffsetVariant::half) d += (hop + 1) / 2;
  return {variant, c - d};
}

}  // namespace gapfill
