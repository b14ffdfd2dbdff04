#include "gapfill/prox_solvers.hpp"

#include <cmath>
#include <string>

namespace gapfill {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorKind::length_mismatch, std::string(what) + ": lengths differ");
}

void check_problem(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                   const WeightVector& weights) {
  if (mask.size() != frame.signal_length() || observed.size() != frame.signal_length()) {
    throw Error(ErrorKind::dimension_mismatch, "mask/observation length does not match the frame");
  }
  if (weights.size() != frame.coefficient_count()) {
    throw Error(ErrorKind::dimension_mismatch, "weight vector length does not match the frame");
  }
  for (double w : weights.values) {
    if (!(w > 0.0)) throw Error(ErrorKind::invalid_params, "weights must be strictly positive");
  }
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

double diff_norm2(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double diff_norm2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

void validate(const SolverConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::invalid_config, m); };
  if (!(c.dr_tau > 0.0)) fail("dr_tau must be positive");
  if (!(c.cp_tau > 0.0) || !(c.cp_sigma > 0.0)) fail("cp_tau and cp_sigma must be positive");
  if (!(c.cp_tau * c.cp_sigma < 1.0)) fail("cp_tau * cp_sigma must be below 1");
  if (!(c.tolerance > 0.0)) fail("tolerance must be positive");
  if (c.max_iterations == 0) fail("max_iterations must be at least 1");
}

namespace {

// Splits x into soft + clip with soft + clip == x bit for bit. The larger
// share is scaled directly and the other is recovered by subtraction, which
// is exact because both shares lie in [x/2, x] or [0, x/2] componentwise.
inline void split_prox(Complex x, double t, Complex& soft, Complex& clipped) {
  const double mag = std::abs(x);
  if (!(mag > t)) {
    soft = Complex{};
    clipped = x;
    return;
  }
  const double keep = (mag - t) / mag;
  if (keep >= 0.5) {
    soft = x * keep;
    clipped = x - soft;
  } else {
    clipped = x * (t / mag);
    soft = x - clipped;
  }
}

}  // namespace

void soft_threshold_into(std::span<const Complex> x, std::span<const double> thresholds, std::span<Complex> out) {
  require_same(x.size(), thresholds.size(), "soft_threshold");
  require_same(x.size(), out.size(), "soft_threshold");
  Complex unused;
  for (std::size_t i = 0; i < x.size(); ++i) split_prox(x[i], thresholds[i], out[i], unused);
}

std::vector<Complex> soft_threshold(std::span<const Complex> x, std::span<const double> thresholds) {
  std::vector<Complex> out(x.size());
  soft_threshold_into(x, thresholds, out);
  return out;
}

std::vector<Complex> clip(std::span<const Complex> x, std::span<const double> bounds) {
  require_same(x.size(), bounds.size(), "clip");
  std::vector<Complex> out(x.size());
  Complex unused;
  for (std::size_t i = 0; i < x.size(); ++i) split_prox(x[i], bounds[i], unused, out[i]);
  return out;
}

double weighted_l1(std::span<const Complex> x, std::span<const double> weights) {
  require_same(x.size(), weights.size(), "weighted_l1");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * std::abs(x[i]);
  return s;
}

SolverResult dr_synthesis(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                          const WeightVector& weights, const SolverConfig& config, const CoefGrid* initial_q) {
  validate(config);
  check_problem(frame, mask, observed, weights);
  const std::size_t N = frame.coefficient_count();
  const std::size_t L = frame.signal_length();

  std::vector<double> thresholds(N);
  for (std::size_t n = 0; n < N; ++n) thresholds[n] = config.dr_tau * weights[n];

  const CoefGrid reliable_coefs = frame.analyze(mask_apply(mask, observed));
  CoefGrid q = reliable_coefs;
  if (initial_q != nullptr) {
    if (!initial_q->same_shape(q)) throw Error(ErrorKind::dimension_mismatch, "initial_q shape mismatch");
    q = *initial_q;
  }
  CoefGrid x = frame.make_grid();
  CoefGrid x_prev = frame.make_grid();
  CoefGrid reflected = frame.make_grid();
  CoefGrid projected = frame.make_grid();
  Signal time(L);

  SolverResult result;
  for (std::size_t i = 0; i < config.max_iterations; ++i) {
    soft_threshold_into(q.values(), thresholds, x.values());
    result.iterations = i + 1;
    result.objective_trace.push_back(weighted_l1(x.values(), weights.values));
    if (i > 0) {
      const double change = diff_norm2(x.values(), x_prev.values());
      if (change < config.tolerance * norm2(x_prev.values()) || change == 0.0) {
        result.converged = true;
        break;
      }
    }
    // q <- x - D* M_R D (2x - q) + D* M_R y
    for (std::size_t n = 0; n < N; ++n) reflected[n] = 2.0 * x[n] - q[n];
    frame.synthesize_real_into(reflected, time);
    for (std::size_t t = 0; t < L; ++t) {
      if (!mask.reliable(t)) time[t] = 0.0;
    }
    frame.analyze_into(time, projected);
    for (std::size_t n = 0; n < N; ++n) q[n] = x[n] - projected[n] + reliable_coefs[n];
    std::swap(x, x_prev);
  }
  // After a non-converged final pass the latest iterate lives in x_prev.
  if (!result.converged && result.iterations == config.max_iterations && config.max_iterations > 0) {
    std::swap(x, x_prev);
  }
  result.restored = frame.synthesize_real(x);
  project_feasible_inplace(mask, observed, result.restored);
  result.coefficients = std::move(x);
  return result;
}

SolverResult cp_analysis(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                         const WeightVector& weights, const SolverConfig& config, const CpStart* start) {
  validate(config);
  check_problem(frame, mask, observed, weights);
  const std::size_t N = frame.coefficient_count();
  const std::size_t L = frame.signal_length();

  Signal p = mask_apply(mask, observed);
  CoefGrid q = frame.make_grid();
  if (start != nullptr) {
    if (start->primal.size() != L || !start->dual.same_shape(q)) {
      throw Error(ErrorKind::dimension_mismatch, "warm start shape mismatch");
    }
    p = project_feasible(mask, observed, start->primal);
    q = start->dual;
  }
  Signal extrapolated = p;
  Signal next_extrapolated(L);
  Signal synthesized(L);
  CoefGrid analysis = frame.analyze(extrapolated);

  SolverResult result;
  for (std::size_t i = 0; i < config.max_iterations; ++i) {
    // q <- clip_w(q + sigma D* ybar)
    for (std::size_t n = 0; n < N; ++n) {
      Complex shrunk;
      split_prox(q[n] + config.cp_sigma * analysis[n], weights[n], shrunk, q[n]);
    }
    // p <- proj_Gamma(p - tau D q); ybar <- 2 p_new - p
    frame.synthesize_real_into(q, synthesized);
    for (std::size_t t = 0; t < L; ++t) {
      const double p_new = mask.reliable(t) ? observed[t] : p[t] - config.cp_tau * synthesized[t];
      next_extrapolated[t] = 2.0 * p_new - p[t];
      p[t] = p_new;
    }
    frame.analyze_into(next_extrapolated, analysis);
    result.iterations = i + 1;
    result.objective_trace.push_back(weighted_l1(analysis.values(), weights.values));
    const double change = diff_norm2(next_extrapolated, extrapolated);
    const double scale = norm2(extrapolated);
    std::swap(extrapolated, next_extrapolated);
    if (change < config.tolerance * scale || change == 0.0) {
      result.converged = true;
      break;
    }
  }
  result.restored = project_feasible(mask, observed, extrapolated);
  result.coefficients = std::move(analysis);
  result.dual = std::move(q);
  return result;
}

}  // namespace gapfill
