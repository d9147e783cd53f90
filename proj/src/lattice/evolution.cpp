#include "arealaw/lattice/evolution.hpp"

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"

namespace arealaw {

UnitaryOperator evolution_unitary(const LocalHamiltonian& h, double dt, std::size_t dim_cap) {
  auto space = spin_space(h.lattice());
  check_dim_cap(space.total_dim(), dim_cap, "evolution");
  return UnitaryOperator(space, hermitian_exponential(h.matrix(dim_cap), dt));
}

std::vector<UnitaryOperator> trotter_sequence(std::span<const HermitianOperator> parts, double dt,
                                              TrotterOrder order) {
  if (parts.empty()) throw ValidationError("Trotter sequence needs at least one part");
  for (const auto& p : parts)
    if (!(p.space() == parts.front().space())) throw LabelError("Trotter parts live on different spaces");

  std::vector<UnitaryOperator> gates;
  if (order == TrotterOrder::first) {
    for (const auto& p : parts) gates.push_back(hermitian_exponential(p, dt));
    return gates;
  }
  for (const auto& p : parts) gates.push_back(hermitian_exponential(p, dt / 2));
  for (std::size_t k = parts.size(); k-- > 0;) gates.push_back(gates[k]);
  return gates;
}

UnitaryOperator compose(std::span<const UnitaryOperator> gates) {
  if (gates.empty()) throw ValidationError("cannot compose an empty gate list");
  Matrix u = gates.front().matrix();
  for (std::size_t k = 1; k < gates.size(); ++k) u = gates[k].matrix() * u;
  return UnitaryOperator(gates.front().space(), std::move(u));
}

UnitaryOperator trotter_product(std::span<const HermitianOperator> parts, double t, std::size_t slices,
                                TrotterOrder order) {
  if (slices == 0) throw ValidationError("Trotter product needs at least one slice");
  auto step = compose(trotter_sequence(parts, t / static_cast<double>(slices), order));
  Matrix u = step.matrix();
  Matrix total = Matrix::Identity(u.rows(), u.cols());
  for (std::size_t k = 0; k < slices; ++k) total = u * total;
  return UnitaryOperator(step.space(), std::move(total));
}

}  // namespace arealaw
