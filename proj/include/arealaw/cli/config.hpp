#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "arealaw/core/errors.hpp"
#include "arealaw/experiment/experiment.hpp"
#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw::cli {

/// Malformed or inconsistent configuration (exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Kind { area_sweep, sie_check, signaling, harvest, process_measure, validate };

std::string kind_name(Kind k);

/// One builtin Hamiltonian family; several are summed.
struct HamiltonianTemplate {
  std::string name;  // ising, heisenberg, transverse_field, random_local
  double J = 1.0;
  double g = 0.0;
  double strength = 1.0;
  std::size_t support = 2;
  std::optional<std::uint64_t> seed;
};

struct InstrumentTemplate {
  InstrumentTemplate() = default;
  InstrumentTemplate(std::string template_name) : name(std::move(template_name)) {}

  std::string name = "none";  // projective_z, projective_x, swap, identity, depolarize, amplitude_damp, random_isometry, flip, none
  double p = 0.0;
  double gamma = 0.0;
  std::size_t anc_dim = 2;
  std::optional<std::uint64_t> seed;
  bool randomized() const { return name == "random_isometry" || name == "random"; }
};

struct TimingConfig {
  std::size_t steps_before = 0;
  std::vector<std::size_t> T_steps{1};
  std::size_t steps_after = 1;
  double dt = 0.1;
};

struct SignalingConfig {
  std::vector<InstrumentTemplate> settings;  // Alice's instrument per setting
  std::vector<double> probabilities;         // empty: uniform
  std::vector<std::size_t> bob_sites;        // measured at the last time
  InstrumentTemplate bob{"projective_z"};
};

struct CouplingConfig {
  std::string op = "none";  // exchange, xx, swap, none
  double strength = 0.0;
  std::vector<std::size_t> sites;
  std::string envelope = "constant";  // constant, sine (sin² over the window)
};

struct HarvestConfig {
  std::vector<std::size_t> m{1, 2, 4, 8, 16, 32, 64};
  double t_start = 0.0;
  double t_alpha = 0.0;
  double t_beta = 1.0;
  std::optional<double> t_end;
  std::size_t detector_dim = 2;
  CouplingConfig a_sigma, b_complement, b_sigma;
};

struct ProcessConfig {
  std::string source = "counterexample";  // counterexample, state, channel, random_causal, file
  std::string state = "bell";             // bell, product, random_mixed
  std::string channel = "identity";       // identity, depolarize
  double p = 0.0;
  std::size_t memory = 2;
  std::filesystem::path path;
  std::vector<std::size_t> group{0};
  std::size_t restarts = 4;
  std::size_t iterations = 60;
  std::size_t max_ancilla_dim = 0;
};

struct ExperimentConfig {
  Kind kind = Kind::area_sweep;
  nlohmann::json source;  // the document as read
  std::optional<std::uint64_t> seed;
  std::size_t runs = 1;   // seeds seed, seed+1, …
  double c_sie = 18.0;
  std::size_t dim_cap = tol::default_dim_cap;

  LatticeSpec lattice;
  std::vector<HamiltonianTemplate> hamiltonian;
  std::vector<std::size_t> sigma;
  TimingConfig timing;
  InstrumentTemplate alice{"projective_z"};
  InstrumentTemplate bob{"none"};
  std::string initial_state = "zero";  // zero, random, neel, bell_boundary
  Track track = Track::alice_only;
  bool proof_chain = false;
  double sie_dt = 1e-3;
  std::size_t sie_ancillas = 1;

  SignalingConfig signaling;
  HarvestConfig harvest;
  ProcessConfig process;
  std::filesystem::path target;  // kind validate

  bool randomized() const;
};

/// Parses and checks a config document; unknown keys are errors.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Dimension cap from AREALAW_DIM_CAP if set, else `fallback`.
std::size_t dim_cap_from_env(std::size_t fallback);

LocalHamiltonian build_hamiltonian(const ExperimentConfig& cfg, std::uint64_t run_seed);

}  // namespace arealaw::cli
