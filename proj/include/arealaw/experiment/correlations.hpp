#pragma once

#include "arealaw/experiment/bounds.hpp"
#include "arealaw/experiment/experiment.hpp"
#include "arealaw/instruments/instrument.hpp"

namespace arealaw {

struct OutcomeCorrelations {
  ProbabilityDistribution joint;  // outcome tuples: Alice's ancillas first, then Bob's
  std::size_t alice_count = 0;
  double classical_mi = 0.0;
  double quantum_mi = 0.0;  // I(A:Ā)
};

/// Requires a run with Track::alice_and_bob.
OutcomeCorrelations outcome_correlations(const ExperimentResult& result);

struct SignalingResult {
  double mutual_information = 0.0;  // MI(settings ; Bob's outcomes)
  double bound = 0.0;
  ProbabilityDistribution joint;    // (setting, Bob outcomes…)
  std::string note;
};

/// MI between the setting register (measured in its computational basis) and
/// Bob's tracked outcomes; `result` must keep the register and Bob's ancillas.
SignalingResult signaling_capacity(const ExperimentResult& result, const std::string& setting_register, double bound);

}  // namespace arealaw
