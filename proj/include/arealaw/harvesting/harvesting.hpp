#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arealaw/core/states.hpp"
#include "arealaw/experiment/bounds.hpp"
#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw {

/// A time-dependent Hermitian coupling on `labels` (spin labels "s<i>" and/or
/// detector labels "a", "b"); an empty label list means the zero coupling.
struct Coupling {
  std::vector<std::string> labels;
  std::function<Matrix(double)> at;

  bool empty() const { return labels.empty() || !at; }
};

/// g(t)·op with a scalar envelope.
Coupling make_coupling(std::vector<std::string> labels, Matrix op, std::function<double(double)> envelope = {});

struct DetectorSpec {
  std::string label;  // "a" or "b"
  std::size_t dim = 2;
};

/// H(t) = H₀ + H_{b,Σ̄}(t) + (1 − 𝟙_𝒯(t)) H_{b,Σ}(t) + 𝟙_𝒯(t) H_{a,Σ}(t), 𝒯 = (t_α, t_β).
struct SwitchedHamiltonian {
  LocalHamiltonian h0;
  std::vector<std::size_t> sigma;
  Coupling b_complement;
  Coupling b_sigma;
  Coupling a_sigma;
  double t_alpha = 0.0;
  double t_beta = 1.0;

  double T() const { return t_beta - t_alpha; }
  /// Checks supports (a touches only Σ, b's couplings only their side) and the window.
  void validate(const std::vector<DetectorSpec>& detectors) const;
};

struct HarvestOptions {
  double t_start = 0.0;
  std::vector<double> record_times;  // outside the open window; t_end is always recorded
  std::size_t dim_cap = tol::default_dim_cap;
};

struct Trajectory {
  HilbertFactorization space;  // spins, then a, then b
  std::vector<double> times;
  std::vector<Vector> states;
  double max_norm_drift = 0.0;

  const Vector& at(double t) const;
};

/// Symmetric product of the displayed form inside the window (2m half-steps of
/// duration T/2m, slice l = 1 applied first) and midpoint-sampled exact
/// exponentials of the full H outside it, with slices no wider than T/m.
Trajectory evolve_switched(const SwitchedHamiltonian& spec, const std::vector<DetectorSpec>& detectors,
                           const PureState& spins0, double t_end, std::size_t m, const HarvestOptions& options = {});

/// I(a:b) at a recorded time t ≥ t_β.
double detector_mutual_information(const Trajectory& trajectory, double t, double t_beta);

AreaLawParams harvesting_params(const SwitchedHamiltonian& spec, double c_sie);
/// C·‖h‖·(2|Σ| + T|∂Σ|)·log₂ d.
double harvesting_bound(const AreaLawParams& p);

}  // namespace arealaw
