#include "pecok/pipeline.hpp"

namespace pecok {

PipelineResult cluster_sdp(const DataMatrix& x, const GroupCount& groups, const PipelineOptions& options) {
  PipelineResult out;
  out.gram = estimate_gram_pair(x, options.correct, options.gamma);
  const SymMatrix a = out.gram.corrected();
  if (const auto* known = std::get_if<KnownK>(&groups)) {
    out.solve = solve_fixed_k(a, known->k, options.admm);
    out.rounding = round_fixed_k(out.solve.solution, known->k);
  } else {
    out.solve = solve_adaptive(a, std::get<Penalized>(groups).kappa, options.admm);
    out.rounding = round_adaptive(out.solve.solution);
  }
  return out;
}

}  // namespace pecok
