#pragma once

#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw {

/// Inputs of the spacetime area-law bound.
struct AreaLawParams {
  double C = 1.0;        // bound prefactor
  double c_sie = 18.0;   // SIE constant
  double h_norm = 1.0;   // ‖h‖ as measured
  std::size_t d = 2;
  std::size_t sigma_size = 0;
  std::size_t boundary_size = 0;
  double T_tot = 0.0;
  std::size_t X = 0;
  std::size_t n = 2;     // largest term support
  std::size_t dimension = 1;

  /// C(n) = 2c(n−1)² in one dimension; 2c(n−1)·n(D,R) otherwise. n is taken
  /// as at least 2 and the bound uses max(‖h‖, 1/c) so that ‖h‖c ≥ 1.
  static AreaLawParams from_sie(double c_sie, const LocalHamiltonian& h, const RegionSplit& split, double T_tot);

  double h_eff() const;
};

/// |∂𝐀| = 2|Σ| + T_tot|∂Σ|.
double boundary_measure(const AreaLawParams& p);
/// C·‖h‖·(2|Σ| + T_tot|∂Σ|)·log₂ d.
double area_law_bound(const AreaLawParams& p);
/// C·‖h‖·(2X + 2T_tot)·log₂ d.
double area_law_bound_1d(const AreaLawParams& p);
/// The chain-level bound for one time step: c·dt·M·(n−1)·‖h‖·log₂ d (measured ‖h‖).
double sie_step_bound(const LocalHamiltonian& h, const RegionSplit& split, double dt, const AreaLawParams& p);
double sie_step_bound(std::size_t M, std::size_t n, double h_norm, double dt, double c_sie, std::size_t d);

}  // namespace arealaw
