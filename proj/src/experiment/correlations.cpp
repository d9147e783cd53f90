#include "arealaw/experiment/correlations.hpp"

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"

namespace arealaw {

OutcomeCorrelations outcome_correlations(const ExperimentResult& result) {
  if (result.track != Track::alice_and_bob) throw ValidationError("outcome correlations need track=alice_and_bob");
  std::vector<std::string> labels;
  std::vector<const PurifiedInstrument*> instruments;
  OutcomeCorrelations out;
  for (Owner side : {Owner::alice, Owner::bob})
    for (const auto& a : result.ancillas)
      if (a.owner == side && a.tracked) {
        labels.push_back(a.label);
        instruments.push_back(a.instrument.get());
        if (side == Owner::alice) ++out.alice_count;
      }
  out.joint = outcome_distribution_from_diagonal(result.state.basis_probabilities(labels), instruments);
  out.classical_mi = out.joint.size() > 0 && !labels.empty() ? classical_mutual_information(out.joint, out.alice_count) : 0.0;
  out.quantum_mi = alice_mutual_information(result);
  return out;
}

SignalingResult signaling_capacity(const ExperimentResult& result, const std::string& setting_register, double bound) {
  const auto& space = result.state.space();
  if (!space.contains(setting_register)) throw LabelError("setting register '" + setting_register + "' is not tracked");

  // The register is read in its computational basis: one rank-1 block per setting.
  PurifiedInstrument reader;
  reader.ancilla_dim = space.dim(setting_register);
  for (std::size_t k = 0; k < reader.ancilla_dim; ++k) {
    reader.outcomes.push_back({k, 1});
    reader.labels.push_back(std::to_string(k));
  }

  std::vector<std::string> labels{setting_register};
  std::vector<const PurifiedInstrument*> instruments{&reader};
  for (const auto& a : result.ancillas)
    if (a.owner == Owner::bob && a.tracked) {
      labels.push_back(a.label);
      instruments.push_back(a.instrument.get());
    }
  if (labels.size() == 1) throw ValidationError("signaling needs Bob's ancillas to be tracked");

  SignalingResult out;
  out.joint = outcome_distribution_from_diagonal(result.state.basis_probabilities(labels), instruments);
  out.mutual_information = classical_mutual_information(out.joint, 1);
  out.bound = bound;
  out.note = "the bound does not depend on the setting distribution p(a)";
  return out;
}

}  // namespace arealaw
