#include "gapfill/sparse_inpaint.hpp"

#include <string>

namespace gapfill {

std::string_view to_string(Model model) noexcept { return model == Model::synthesis ? "syn" : "ana"; }

Model parse_model(std::string_view name) {
  if (name == "syn" || name == "synthesis") return Model::synthesis;
  if (name == "ana" || name == "analysis") return Model::analysis;
  throw Error(ErrorKind::invalid_config, "unknown model '" + std::string(name) + "' (expected syn|ana)");
}

SolverResult inpaint_sparse(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                            const SparseMethod& method, const SolverConfig& solver, const ReweightConfig& reweight) {
  if (method.weights == WeightScheme::iterative) {
    ReweightConfig cfg = reweight;
    cfg.inner = solver;
    return method.model == Model::synthesis ? reweighted_synthesis(frame, mask, observed, cfg)
                                            : reweighted_analysis(frame, mask, observed, cfg);
  }
  const WeightVector weights = compute_weights(frame, mask, method.weights);
  return method.model == Model::synthesis ? dr_synthesis(frame, mask, observed, weights, solver)
                                          : cp_analysis(frame, mask, observed, weights, solver);
}

}  // namespace gapfill
