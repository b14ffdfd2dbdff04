#pragma once

#include <cstddef>
#include <span>

#include "gapfill/sparse_inpaint.hpp"

namespace gapfill {

struct GradualConfig {
  double step_fraction = 0.125;  // r = max(1, floor(step_fraction * h)), h the original gap length
  SparseMethod method{Model::analysis, WeightScheme::energy};
  SolverConfig solver;
  ReweightConfig reweight;
  bool strict = false;  // reject the `none` scheme instead of running it
};

void validate(const GradualConfig& config);

std::size_t gradual_step(std::size_t gap_length, double step_fraction);

/// Gradual inpainting: solve, freeze r samples at both edges of every gap,
/// recompute the weights for the shrunk gaps and solve again, until every gap
/// is closed. Samples frozen at one grade are never touched by later grades.
/// `outer_iterations` of the result holds the number of grades.
SolverResult gradual_inpaint(const TightGaborFrame& frame, std::span<const GapSpec> gaps,
                             std::span<const double> observed, const GradualConfig& config);

}  // namespace gapfill
