#include "arealaw/lattice/templates.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/random.hpp"

namespace arealaw::hamiltonians {

using namespace std::complex_literals;

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -1i, 1i, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

namespace {

void require_qubits(const LatticeSpec& lattice, const char* name) {
  if (lattice.local_dim != 2) throw ValidationError(std::string(name) + " needs local dimension 2");
}

// Ordered nearest-neighbour bonds (a < b), each listed once.
std::vector<std::pair<std::size_t, std::size_t>> bonds(const LatticeSpec& lattice) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = lattice.num_sites();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (lattice.distance(a, b) == 1) out.emplace_back(a, b);
  return out;
}

}  // namespace

LocalHamiltonian ising(const LatticeSpec& lattice, double coupling, double transverse_field) {
  require_qubits(lattice, "ising");
  std::vector<HamiltonianTerm> terms;
  Matrix zz = kroneckerProduct(pauli_z(), pauli_z()).eval() * coupling;
  for (auto [a, b] : bonds(lattice)) terms.push_back({{a, b}, zz});
  if (transverse_field != 0.0)
    for (std::size_t s = 0; s < lattice.num_sites(); ++s) terms.push_back({{s}, pauli_x() * transverse_field});
  return LocalHamiltonian(lattice, std::move(terms), 1);
}

LocalHamiltonian heisenberg(const LatticeSpec& lattice, double coupling) {
  require_qubits(lattice, "heisenberg");
  Matrix xx = kroneckerProduct(pauli_x(), pauli_x()).eval();
  Matrix yy = kroneckerProduct(pauli_y(), pauli_y()).eval();
  Matrix zz = kroneckerProduct(pauli_z(), pauli_z()).eval();
  Matrix bond = (xx + yy + zz) * coupling;
  std::vector<HamiltonianTerm> terms;
  for (auto [a, b] : bonds(lattice)) terms.push_back({{a, b}, bond});
  return LocalHamiltonian(lattice, std::move(terms), 1);
}

LocalHamiltonian transverse_field(const LatticeSpec& lattice, double field) {
  require_qubits(lattice, "transverse_field");
  std::vector<HamiltonianTerm> terms;
  for (std::size_t s = 0; s < lattice.num_sites(); ++s) terms.push_back({{s}, pauli_x() * field});
  return LocalHamiltonian(lattice, std::move(terms), 0);
}

LocalHamiltonian random_local(const LatticeSpec& lattice, std::size_t support, double strength,
                              std::uint64_t seed) {
  if (support == 0) throw ValidationError("random_local needs support ≥ 1");
  std::size_t dim = 1;
  for (std::size_t k = 0; k < support; ++k) dim *= lattice.local_dim;

  std::vector<HamiltonianTerm> terms;
  std::uint64_t counter = 0;
  const std::size_t n = lattice.num_sites();
  for (std::size_t axis = 0; axis < lattice.dimension(); ++axis) {
    // Single-site windows are axis independent; emit them once.
    if (support == 1 && axis > 0) break;
    for (std::size_t s = 0; s < n; ++s) {
      auto coords = lattice.coordinates(s);
      std::vector<std::size_t> window;
      for (std::size_t k = 0; k < support; ++k) {
        std::size_t c = coords[axis] + k;
        if (c >= lattice.extents[axis]) {
          if (!lattice.is_periodic(axis)) break;
          c %= lattice.extents[axis];
        }
        auto shifted = coords;
        shifted[axis] = c;
        window.push_back(lattice.site_index(shifted));
      }
      if (window.size() != support) continue;
      // Periodic wrap on short rings could revisit a site.
      auto sorted = window;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      Rng rng(mix_seed(seed, counter++));
      terms.push_back({window, random_hermitian(dim, rng) * strength});
    }
  }
  return LocalHamiltonian(lattice, std::move(terms), support - 1);
}

}  // namespace arealaw::hamiltonians
