#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arealaw/core/states.hpp"
#include "arealaw/process/choi.hpp"

namespace arealaw {

struct PartyDims {
  std::size_t in = 1;
  std::size_t out = 1;

  std::size_t total() const { return in * out; }
  bool operator==(const PartyDims&) const = default;
};

/// W on X1_I ⊗ X1_O ⊗ X2_I ⊗ X2_O ⊗ … (at most three parties).
class ProcessMatrix {
 public:
  ProcessMatrix(std::vector<PartyDims> parties, Matrix w);

  const std::vector<PartyDims>& parties() const { return parties_; }
  const Matrix& matrix() const { return w_; }
  std::size_t dim() const { return static_cast<std::size_t>(w_.rows()); }
  /// Π d_{X_O}, the trace a valid process must have.
  double expected_trace() const;
  /// Factorization with labels A_I, A_O, B_I, B_O, C_I, C_O.
  HilbertFactorization space() const;

 private:
  std::vector<PartyDims> parties_;
  Matrix w_;
};

std::string party_name(std::size_t party);

struct ProcessReport {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double expected_trace = 0.0;
  bool psd = false;
  bool trace_ok = false;
  /// Worst |Σ p − 1| and worst out-of-range probability over the probe battery.
  double normalization_residual = 0.0;
  double range_residual = 0.0;
  std::size_t probes = 0;
  bool normalization_ok = false;
  // The full valid-process subspace characterization is not implemented.
  const char* subspace_check = "not checked";

  bool valid() const { return psd && trace_ok && normalization_ok; }
};

ProcessReport validate_process(const ProcessMatrix& w, std::uint64_t seed = 1, std::size_t probes = 32);

/// W = ω^{A_I B_I} ⊗ 𝕀^{A_O B_O}; ω must be a two-factor state (A_I, B_I).
ProcessMatrix process_from_state(const DensityMatrix& omega, std::size_t a_out = 1, std::size_t b_out = 1);
/// A channel from A_O to B_I; A_I and B_O trivial. The channel must be CPTP.
ProcessMatrix process_from_channel(const ChoiMatrix& channel);
/// |Φ+⟩⟨Φ+|^{A_I B_I} ⊗ |0⟩⟨0|^{A_O} + ¼ 𝕀^{A_I B_I} ⊗ |1⟩⟨1|^{A_O}, all qubits, B_O trivial.
ProcessMatrix build_counterexample_W();
/// Causally ordered A ≺ B process from a random comb with a memory of size `memory`.
ProcessMatrix random_causal_process(PartyDims a, PartyDims b, std::size_t memory, std::uint64_t seed);

/// p = tr[(M_1 ⊗ M_2 ⊗ …) Wᵀ] for branch Choi matrices X_I → X_O.
double probability_rule(const ProcessMatrix& w, const std::vector<ChoiMatrix>& branches);
double probability_rule(const ProcessMatrix& w, const ChoiMatrix& ma, const ChoiMatrix& mb);

/// Per-party CPTP maps X_I → X_O ⊗ X'_O (ancilla last).
struct ProbingScheme {
  std::vector<ChoiMatrix> maps;
  std::vector<std::size_t> ancilla_dims;
};

/// ρ = tr_X(Wᵀ (M_1 ⊗ M_2 ⊗ …)) on X1'_O ⊗ X2'_O ⊗ …, contracted one party at a time.
Matrix final_ancilla_matrix(const ProcessMatrix& w, const ProbingScheme& scheme);
DensityMatrix final_ancilla_state(const ProcessMatrix& w, const ProbingScheme& scheme);

/// 𝓜(ρ) = ρ^{X'_O1} ⊗ |Φ+⟩⟨Φ+|^{X_O X'_O2} on every party.
ProbingScheme teleport_scheme(const std::vector<PartyDims>& parties);

/// Alice prepares |0⟩ on A_O and keeps her input; Bob keeps his input.
ProbingScheme counterexample_scheme();

/// I(ancillas of `group` : other ancillas) of the final ancilla state.
double ancilla_mutual_information(const ProcessMatrix& w, const ProbingScheme& scheme,
                                  const std::vector<std::size_t>& group);

/// I(group : rest) of W / tr W, each party contributing both its input and output.
double process_mutual_information(const ProcessMatrix& w, const std::vector<std::size_t>& group);

}  // namespace arealaw
