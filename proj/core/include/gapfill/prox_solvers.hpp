#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gapfill/atom_weights.hpp"
#include "gapfill/gabor_frame.hpp"
#include "gapfill/gap_model.hpp"

namespace gapfill {

struct SolverConfig {
  double dr_tau = 1.0;
  double cp_tau = 0.9;
  double cp_sigma = 0.9;
  double tolerance = 1e-4;
  std::size_t max_iterations = 1000;
};

// Throws invalid_config for non-positive steps, cp_tau * cp_sigma >= 1 (the
// frame norm is 1), a non-positive tolerance or zero iterations.
void validate(const SolverConfig& config);

struct SolverResult {
  Signal restored;            // always lies in Gamma
  CoefGrid coefficients;      // x for synthesis, D* z for analysis
  CoefGrid dual;              // analysis only: final dual variable
  std::size_t iterations = 0; // inner iterations, summed over outer loops
  std::size_t outer_iterations = 1;
  bool converged = false;
  std::vector<double> objective_trace;
  std::vector<double> outer_changes;  // reweighting: |z(k) - z(k-1)|_2 per outer step
};

// arg(x) * max(|x| - t, 0), entrywise.
std::vector<Complex> soft_threshold(std::span<const Complex> x, std::span<const double> thresholds);
void soft_threshold_into(std::span<const Complex> x, std::span<const double> thresholds, std::span<Complex> out);

// x - soft_threshold(x, bounds): projection onto the weighted l-infinity ball.
std::vector<Complex> clip(std::span<const Complex> x, std::span<const double> bounds);

// sum_n w_n |x_n|
double weighted_l1(std::span<const Complex> x, std::span<const double> weights);

/// Douglas-Rachford for the synthesis problem
///   argmin_x |w . x|_1  s.t.  D x in Gamma.
///
/// q(0) = D* M_R y unless `initial_q` is given. Stops once
/// |x(i) - x(i-1)| < eps |x(i-1)| (or the iterates stop moving) or after
/// max_iterations, and returns proj_Gamma(D x).
SolverResult dr_synthesis(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                          const WeightVector& weights, const SolverConfig& config,
                          const CoefGrid* initial_q = nullptr);

struct CpStart {
  Signal primal;
  CoefGrid dual;
};

/// Chambolle-Pock for the analysis problem
///   argmin_z |w . D* z|_1  s.t.  z in Gamma.
///
/// p(0) = M_R y, q(0) = 0 unless `start` is given. Terminates on the relative
/// change of the extrapolated iterate and returns proj_Gamma of it.
SolverResult cp_analysis(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                         const WeightVector& weights, const SolverConfig& config, const CpStart* start = nullptr);

}  // namespace gapfill
