#include "gapfill/reweighting.hpp"

#include <cmath>

namespace gapfill {

namespace {

double coef_distance(const CoefGrid& a, const CoefGrid& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += std::norm(a[n] - b[n]);
  return std::sqrt(s);
}

void absorb(SolverResult& total, SolverResult&& step) {
  total.iterations += step.iterations;
  total.converged = step.converged;
  total.objective_trace.insert(total.objective_trace.end(), step.objective_trace.begin(),
                               step.objective_trace.end());
  total.restored = std::move(step.restored);
  total.coefficients = std::move(step.coefficients);
  total.dual = std::move(step.dual);
}

}  // namespace

void validate(const ReweightConfig& c) {
  if (c.outer_iterations < 1) throw Error(ErrorKind::invalid_config, "reweighting needs K >= 1");
  if (!(c.epsilon > 0.0)) throw Error(ErrorKind::invalid_config, "reweighting epsilon must be positive");
  if (!(c.delta > 0.0)) throw Error(ErrorKind::invalid_config, "reweighting delta must be positive");
  validate(c.inner);
}

WeightVector reweight_from(std::span<const Complex> coefs, double epsilon) {
  WeightVector w{std::vector<double>(coefs.size()), WeightScheme::iterative};
  for (std::size_t n = 0; n < coefs.size(); ++n) w.values[n] = 1.0 / (std::abs(coefs[n]) + epsilon);
  return w;
}

SolverResult reweighted_synthesis(const TightGaborFrame& frame, const ReliableMask& mask,
                                  std::span<const double> observed, const ReweightConfig& config) {
  validate(config);
  WeightVector weights = uniform_weights(frame.coefficient_count());
  SolverResult total;
  total.iterations = 0;
  CoefGrid previous;
  for (std::size_t k = 1; k <= config.outer_iterations; ++k) {
    SolverResult step = dr_synthesis(frame, mask, observed, weights, config.inner, k > 1 ? &previous : nullptr);
    absorb(total, std::move(step));
    total.outer_iterations = k;
    weights = reweight_from(total.coefficients.values(), config.epsilon);
    if (k > 1) {
      const double change = coef_distance(total.coefficients, previous);
      total.outer_changes.push_back(change);
      if (change < config.delta) break;
    }
    previous = total.coefficients;
  }
  return total;
}

SolverResult reweighted_analysis(const TightGaborFrame& frame, const ReliableMask& mask,
                                 std::span<const double> observed, const ReweightConfig& config) {
  validate(config);
  WeightVector weights = uniform_weights(frame.coefficient_count());
  SolverResult total;
  total.iterations = 0;
  CoefGrid previous;
  CpStart start;
  for (std::size_t k = 1; k <= config.outer_iterations; ++k) {
    SolverResult step = cp_analysis(frame, mask, observed, weights, config.inner, k > 1 ? &start : nullptr);
    absorb(total, std::move(step));
    total.outer_iterations = k;
    CoefGrid z = frame.analyze(total.restored);
    weights = reweight_from(z.values(), config.epsilon);
    bool stop = false;
    if (k > 1) {
      const double change = coef_distance(z, previous);
      total.outer_changes.push_back(change);
      stop = change < config.delta;
    }
    previous = std::move(z);
    if (stop) break;
    start.primal = total.restored;
    start.dual = total.dual;
  }
  total.coefficients = std::move(previous);
  return total;
}

}  // namespace gapfill
