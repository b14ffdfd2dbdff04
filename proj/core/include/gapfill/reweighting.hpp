#pragma once

#include <cstddef>
#include <span>

#include "gapfill/prox_solvers.hpp"

namespace gapfill {

struct ReweightConfig {
  std::size_t outer_iterations = 10;  // K
  double epsilon = 1e-3;
  double delta = 1e-2;
  SolverConfig inner;
};

void validate(const ReweightConfig& config);

// w_i = 1 / (|z_i| + epsilon)
WeightVector reweight_from(std::span<const Complex> coefs, double epsilon);

/// Iteratively reweighted synthesis inpainting. The first outer step solves
/// the unweighted problem; each later step warm-starts DR from the previous
/// coefficients. Stops after K solves or once |z(k) - z(k-1)|_2 < delta
/// (absolute) and returns proj_Gamma(D z) of the last solve.
SolverResult reweighted_synthesis(const TightGaborFrame& frame, const ReliableMask& mask,
                                  std::span<const double> observed, const ReweightConfig& config);

/// Analysis counterpart: weights come from z(k) = D* x(k) where x(k) is the
/// signal returned by CP; warm-starts CP from the previous primal/dual pair.
SolverResult reweighted_analysis(const TightGaborFrame& frame, const ReliableMask& mask,
                                 std::span<const double> observed, const ReweightConfig& config);

}  // namespace gapfill
