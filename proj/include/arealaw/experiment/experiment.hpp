#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "arealaw/core/tolerances.hpp"
#include "arealaw/experiment/tracked_state.hpp"
#include "arealaw/experiment/schedule.hpp"
#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw {

/// alice_only traces Bob's ancillas as soon as they are created; bob_only
/// does the same for Alice's ancillas (registers are always kept).
enum class Track { alice_only, alice_and_bob, bob_only };

struct ExperimentOptions {
  Track track = Track::alice_only;
  bool snapshots = false;
  std::size_t dim_cap = tol::default_dim_cap;
};

/// Entropies at one stage boundary. A = Alice's ancillas and registers,
/// B = spins in Σ; S_AB = S_C by purity of the global construction.
struct Snapshot {
  std::size_t time_index = 0;
  double time = 0.0;
  enum class Stage { start, instruments, evolution } stage = Stage::start;
  double gap = 0.0;  // evolution duration that led to this snapshot
  double S_A = 0.0;
  double S_B = 0.0;
  double S_AB = 0.0;
};

struct AncillaRecord {
  std::string label;
  Owner owner;
  std::shared_ptr<const PurifiedInstrument> instrument;
  bool tracked = true;
};

struct ExperimentResult {
  TrackedState state;
  std::vector<AncillaRecord> ancillas;
  std::vector<Register> registers;
  std::vector<Snapshot> snapshots;
  Track track = Track::alice_only;

  std::vector<std::string> alice_labels() const;  // tracked Alice ancillas + Alice registers
  std::vector<std::string> bob_labels() const;    // tracked Bob ancillas + Bob registers
};

/// Product of `initial` on the spins with every register in |0⟩ unless the
/// register has its own state in `register_states`.
TrackedState initial_state(const LatticeSpec& lattice, const PureState& spins, const std::vector<Register>& registers,
                            const std::map<std::string, Vector>& register_states = {});

/// Instruments at t_k, then exp(−iH(t_{k+1} − t_k)), for every k.
ExperimentResult run_experiment(TrackedState initial, const LocalHamiltonian& h, const MeasurementSchedule& schedule,
                                const SpacetimeRegion& region, const std::vector<Register>& registers,
                                const ExperimentOptions& options = {});

/// The ancilla side of the bipartition: Alice's ancillas plus her registers (A),
/// Σ spins (B), everything else (C).
struct TripartiteSplit {
  std::vector<std::string> A;
  std::vector<std::string> B;
  std::vector<std::string> C;
};

TripartiteSplit tripartite_split(const ExperimentResult& result, const SpacetimeRegion& region);

/// I(A:Ā) = 2·S(ρ_A). Valid because the construction is globally pure (Ψ's
/// columns purify whatever was traced); tracing elsewhere leaves ρ_A unchanged.
double alice_mutual_information(const ExperimentResult& result);

struct EntropyStep {
  double before = 0.0;
  double after = 0.0;
  double delta = 0.0;  // |after − before|
};

/// Evolves by exp(−i dt H) and reports S of the `c_labels` marginal before and after.
EntropyStep measure_entropy_step(TrackedState& state, const LocalHamiltonian& h, double dt,
                                 const std::vector<std::string>& c_labels, std::size_t dim_cap = tol::default_dim_cap);

}  // namespace arealaw
