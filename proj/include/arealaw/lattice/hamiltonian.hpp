#pragma once

#include <cstddef>
#include <vector>

#include "arealaw/core/states.hpp"
#include "arealaw/core/tolerances.hpp"
#include "arealaw/lattice/lattice.hpp"

namespace arealaw {

/// One h_i: a Hermitian operator on an ordered list of sites.
struct HamiltonianTerm {
  std::vector<std::size_t> support;
  Matrix op;  // dimension local_dim^|support|, factor order = support order
};

/// H = Σ h_i with a declared interaction range.
class LocalHamiltonian {
 public:
  /// Throws ValidationError when a term is not Hermitian, has the wrong
  /// dimension, or its support does not fit into a ball of radius `range`.
  LocalHamiltonian(LatticeSpec lattice, std::vector<HamiltonianTerm> terms, std::size_t range);

  const LatticeSpec& lattice() const { return lattice_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  std::size_t range() const { return range_; }
  /// Largest support size over all terms (0 for an empty Hamiltonian).
  std::size_t max_support() const;

  /// Dense matrix on spin_space(lattice); throws DimensionCapExceeded above `dim_cap`.
  Matrix matrix(std::size_t dim_cap = tol::default_dim_cap) const;
  HermitianOperator as_operator(std::size_t dim_cap = tol::default_dim_cap) const;

 private:
  LatticeSpec lattice_;
  std::vector<HamiltonianTerm> terms_;
  std::size_t range_;
};

/// ‖h‖ = max over terms of the operator norm; 0 without terms.
double strength_norm(const LocalHamiltonian& h);

/// Terms whose support meets both Σ and its complement.
std::vector<HamiltonianTerm> boundary_terms(const LocalHamiltonian& h, const RegionSplit& split);

/// H = H_B + H_C + Σ_i H^i_CB with B = Σ, C = complement.
struct HamiltonianSplit {
  std::vector<HamiltonianTerm> sigma_terms;
  std::vector<HamiltonianTerm> complement_terms;
  std::vector<HamiltonianTerm> crossing_terms;
};

HamiltonianSplit split_hamiltonian(const LocalHamiltonian& h, const RegionSplit& split);

/// Dense matrix of a term list on the spins of `lattice`.
Matrix terms_matrix(const LatticeSpec& lattice, const std::vector<HamiltonianTerm>& terms,
                    std::size_t dim_cap = tol::default_dim_cap);

/// Throws DimensionCapExceeded when `dim` exceeds `cap`.
void check_dim_cap(std::size_t dim, std::size_t cap, const char* what);

}  // namespace arealaw
