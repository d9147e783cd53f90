#pragma once

#include <span>
#include <vector>

#include "arealaw/core/states.hpp"
#include "arealaw/lattice/hamiltonian.hpp"

namespace arealaw {

/// exp(−i dt H) on the full spin space.
UnitaryOperator evolution_unitary(const LocalHamiltonian& h, double dt,
                                  std::size_t dim_cap = tol::default_dim_cap);

enum class TrotterOrder { first, symmetric };

/// Gate list in application order (first element acts first).
///
/// first:     e^{−i dt H_1}, …, e^{−i dt H_k}
/// symmetric: e^{−i dt/2 H_1}, …, e^{−i dt/2 H_k}, e^{−i dt/2 H_k}, …, e^{−i dt/2 H_1}
std::vector<UnitaryOperator> trotter_sequence(std::span<const HermitianOperator> parts, double dt,
                                              TrotterOrder order);

/// Product of a gate list in application order.
UnitaryOperator compose(std::span<const UnitaryOperator> gates);

/// The Trotter product for total time `t` split into `slices` equal slices.
UnitaryOperator trotter_product(std::span<const HermitianOperator> parts, double t, std::size_t slices,
                                TrotterOrder order);

}  // namespace arealaw
