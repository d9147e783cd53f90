#pragma once

#include <cstdint>

#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw::hamiltonians {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// J σᶻσᶻ on nearest-neighbour bonds plus an optional transverse field g σˣ per site.
LocalHamiltonian ising(const LatticeSpec& lattice, double coupling, double transverse_field = 0.0);

/// J (σˣσˣ + σʸσʸ + σᶻσᶻ) on nearest-neighbour bonds; ‖h‖ = 3|J|.
LocalHamiltonian heisenberg(const LatticeSpec& lattice, double coupling);

/// g σˣ on every site; range 0.
LocalHamiltonian transverse_field(const LatticeSpec& lattice, double field);

/// Independent GUE terms of norm `strength` on every window of `support`
/// consecutive sites along each axis (range = support − 1).
LocalHamiltonian random_local(const LatticeSpec& lattice, std::size_t support, double strength,
                              std::uint64_t seed);

}  // namespace arealaw::hamiltonians
