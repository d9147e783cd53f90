#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arealaw/core/states.hpp"
#include "arealaw/instruments/instrument.hpp"

namespace arealaw {

/// Range of ancilla basis states recording one outcome.
struct OutcomeBlock {
  std::size_t start = 0;
  std::size_t size = 0;
};

/// V : input → output ⊗ ancilla with block projectors on the ancilla.
struct PurifiedInstrument {
  Matrix isometry;  // rows ordered (output, ancilla)
  std::size_t input_dim = 1;
  std::size_t output_dim = 1;
  std::size_t ancilla_dim = 1;
  std::vector<OutcomeBlock> outcomes;
  std::vector<std::string> labels;

  Matrix projector(std::size_t outcome) const;
  /// Outcome index of an ancilla basis state.
  std::size_t outcome_of(std::size_t ancilla_index) const;
};

/// Kraus-based dilation; ancilla basis indexed by (branch, Kraus index).
/// Throws ValidationError for an invalid instrument.
PurifiedInstrument purify(const Instrument& ins);

/// tr_anc[(I ⊗ P_a) V ρ V† (I ⊗ P_a)] as a Choi matrix.
ChoiMatrix branch_from_purified(const PurifiedInstrument& p, std::size_t outcome);

/// Applies V to the factors `targets` of ρ; the output keeps the target labels
/// (when the output space matches) and the ancilla is appended as `ancilla_label`.
DensityMatrix apply_purified(const DensityMatrix& rho, const PurifiedInstrument& p,
                             const std::vector<std::string>& targets, const std::string& ancilla_label);

/// Joint distribution of the block measurements on the listed ancillas (deferred measurement).
ProbabilityDistribution deferred_outcome_distribution(
    const DensityMatrix& state, const std::vector<std::pair<const PurifiedInstrument*, std::string>>& measured);

/// Same from the diagonal of the marginal on the listed ancillas (in that order).
ProbabilityDistribution outcome_distribution_from_diagonal(
    const Eigen::VectorXd& diagonal, const std::vector<const PurifiedInstrument*>& instruments);

}  // namespace arealaw
