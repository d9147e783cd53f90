#pragma once

#include <cstdint>

#include "arealaw/instruments/instrument.hpp"

namespace arealaw::instruments {

/// Computational-basis measurement with d branches |a⟩⟨a|.
Instrument projective_z(std::size_t d = 2);
/// Measurement in the Fourier (X) basis.
Instrument projective_x(std::size_t d = 2);
/// Branch j has the single Kraus operator |0⟩⟨j|: the spin's state is swapped
/// into the ancilla and the spin is reset. Statistics match projective_z.
Instrument swap_with_ancilla(std::size_t d = 2);
Instrument identity(std::size_t d = 2);
/// ρ ↦ (1 − p)ρ + p·I/d, one branch.
Instrument depolarize(double p, std::size_t d = 2);
/// Qubit amplitude damping with decay probability γ, one branch.
Instrument amplitude_damp(double gamma);
/// Haar-random isometry d → d·anc_dim; branch b keeps the rows of ancilla state b.
Instrument random_isometry(std::uint64_t seed, std::size_t anc_dim, std::size_t d = 2);
/// One branch applying the unitary U.
Instrument unitary_channel(const Matrix& u);

}  // namespace arealaw::instruments
