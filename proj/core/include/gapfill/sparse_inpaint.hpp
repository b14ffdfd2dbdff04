#pragma once

#include <span>
#include <string_view>

#include "gapfill/reweighting.hpp"

namespace gapfill {

enum class Model { synthesis, analysis };

// "syn" / "ana"
std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view name);

struct SparseMethod {
  Model model = Model::analysis;
  WeightScheme weights = WeightScheme::none;

  friend bool operator==(const SparseMethod&, const SparseMethod&) = default;
};

// One weighted-l1 solve (DR for synthesis, CP for analysis), or the matching
// reweighted driver when `method.weights` is iterative.
SolverResult inpaint_sparse(const TightGaborFrame& frame, const ReliableMask& mask, std::span<const double> observed,
                            const SparseMethod& method, const SolverConfig& solver, const ReweightConfig& reweight);

}  // namespace gapfill
