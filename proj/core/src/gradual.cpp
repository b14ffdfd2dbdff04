#include "gapfill/gradual.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gapfill {

void validate(const GradualConfig& c) {
  if (!(c.step_fraction > 0.0 && c.step_fraction <= 0.5)) {
    throw Error(ErrorKind::invalid_config, "gradual step fraction must lie in (0, 1/2]");
  }
  if (c.strict && c.method.weights == WeightScheme::none) {
    throw Error(ErrorKind::invalid_config, "gradual inpainting with constant weights reproduces the plain solution");
  }
  validate(c.solver);
  validate(c.reweight);
}

std::size_t gradual_step(std::size_t gap_length, double step_fraction) {
  const auto r = static_cast<std::size_t>(std::floor(step_fraction * static_cast<double>(gap_length)));
  return std::max<std::size_t>(1, r);
}

SolverResult gradual_inpaint(const TightGaborFrame& frame, std::span<const GapSpec> gaps,
                             std::span<const double> observed, const GradualConfig& config) {
  validate(config);
  if (observed.size() != frame.signal_length()) {
    throw Error(ErrorKind::dimension_mismatch, "observation length does not match the frame");
  }
  std::vector<GapSpec> open(gaps.begin(), gaps.end());
  std::vector<std::int64_t> steps;
  for (const auto& g : open) {
    steps.push_back(static_cast<std::int64_t>(gradual_step(static_cast<std::size_t>(g.length()), config.step_fraction)));
  }

  SolverResult total;
  total.iterations = 0;
  total.outer_iterations = 0;
  total.converged = true;
  total.restored.assign(observed.begin(), observed.end());
  for (;;) {
    std::vector<GapSpec> current;
    for (const auto& g : open) {
      if (g.start <= g.end) current.push_back(g);
    }
    if (current.empty()) break;
    const ReliableMask mask(observed.size(), current);
    SolverResult step = inpaint_sparse(frame, mask, total.restored, config.method, config.solver, config.reweight);
    total.iterations += step.iterations;
    total.converged = total.converged && step.converged;
    total.objective_trace.insert(total.objective_trace.end(), step.objective_trace.begin(),
                                 step.objective_trace.end());
    total.restored = std::move(step.restored);
    total.coefficients = std::move(step.coefficients);
    total.dual = std::move(step.dual);
    ++total.outer_iterations;
    for (std::size_t i = 0; i < open.size(); ++i) {
      open[i].start += steps[i];
      open[i].end -= steps[i];
    }
  }
  return total;
}

}  // namespace gapfill
