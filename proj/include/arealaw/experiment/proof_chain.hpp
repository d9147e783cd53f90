#pragma once

#include <string>
#include <vector>

#include "arealaw/experiment/bounds.hpp"
#include "arealaw/experiment/experiment.hpp"

namespace arealaw {

struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs − lhs (+ slack); negative means violated
  bool holds = true;
};

struct ProofChainReport {
  std::vector<ChainCheck> checks;
  double S_A_final = 0.0;
  double I_bits = 0.0;
  double bound_bits = 0.0;
  double max_rate = 0.0;  // largest |ΔS_AB|/dt over the evolution steps inside the window

  bool holds() const;
  std::size_t violations() const;
};

/// Evaluates every inequality of the chain S_A(t_f) = S_A(t_T) ≤ S_B(t_0) + S_B(t_T) + ΣΔS ≤ bound
/// on the snapshots of a run (requires ExperimentOptions::snapshots).
ProofChainReport proof_chain_report(const std::vector<Snapshot>& snapshots, const SpacetimeRegion& region,
                                    const LocalHamiltonian& h, const RegionSplit& split, const AreaLawParams& params);

}  // namespace arealaw
