#include "arealaw/lattice/hamiltonian.hpp"

#include <algorithm>
#include <string>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"

namespace arealaw {

void check_dim_cap(std::size_t dim, std::size_t cap, const char* what) {
  if (dim > cap)
    throw DimensionCapExceeded(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                               std::to_string(cap));
}

LocalHamiltonian::LocalHamiltonian(LatticeSpec lattice, std::vector<HamiltonianTerm> terms, std::size_t range)
    : lattice_(std::move(lattice)), terms_(std::move(terms)), range_(range) {
  lattice_.validate();
  const std::size_t n = lattice_.num_sites();
  for (const auto& term : terms_) {
    if (term.support.empty()) throw ValidationError("Hamiltonian term with empty support");
    auto sorted = term.support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("Hamiltonian term repeats a site");
    if (sorted.back() >= n) throw ValidationError("Hamiltonian term outside lattice");

    std::size_t dim = 1;
    for (std::size_t k = 0; k < term.support.size(); ++k) dim *= lattice_.local_dim;
    if (term.op.rows() != static_cast<Eigen::Index>(dim) || term.op.cols() != static_cast<Eigen::Index>(dim))
      throw DimensionError("Hamiltonian term has the wrong dimension for its support");
    if ((term.op - term.op.adjoint()).norm() > tol::hermitian * std::max(1.0, term.op.norm()))
      throw ValidationError("Hamiltonian term is not Hermitian");

    // Some site of the lattice (not necessarily in the support) must serve as the centre.
    bool fits = false;
    for (std::size_t c = 0; !fits && c < n; ++c)
      fits = std::all_of(sorted.begin(), sorted.end(), [&](std::size_t s) { return lattice_.distance(c, s) <= range_; });
    if (!fits) throw ValidationError("Hamiltonian term support exceeds the declared range");
  }
}

std::size_t LocalHamiltonian::max_support() const {
  std::size_t best = 0;
  for (const auto& t : terms_) best = std::max(best, t.support.size());
  return best;
}

Matrix LocalHamiltonian::matrix(std::size_t dim_cap) const { return terms_matrix(lattice_, terms_, dim_cap); }

HermitianOperator LocalHamiltonian::as_operator(std::size_t dim_cap) const {
  return HermitianOperator(spin_space(lattice_), matrix(dim_cap));
}

Matrix terms_matrix(const LatticeSpec& lattice, const std::vector<HamiltonianTerm>& terms, std::size_t dim_cap) {
  auto space = spin_space(lattice);
  check_dim_cap(space.total_dim(), dim_cap, "Hamiltonian");
  const auto dim = static_cast<Eigen::Index>(space.total_dim());
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& term : terms) h += embed_operator(term.op, site_labels(term.support), space);
  return h;
}

double strength_norm(const LocalHamiltonian& h) {
  double best = 0.0;
  for (const auto& t : h.terms()) best = std::max(best, operator_norm(t.op));
  return best;
}

namespace {

enum class Side { sigma, complement, crossing };

Side classify(const HamiltonianTerm& term, const RegionSplit& split) {
  bool in = false, out = false;
  for (std::size_t s : term.support) (split.in_sigma(s) ? in : out) = true;
  if (in && out) return Side::crossing;
  return in ? Side::sigma : Side::complement;
}

}  // namespace

std::vector<HamiltonianTerm> boundary_terms(const LocalHamiltonian& h, const RegionSplit& split) {
  return split_hamiltonian(h, split).crossing_terms;
}

HamiltonianSplit split_hamiltonian(const LocalHamiltonian& h, const RegionSplit& split) {
  HamiltonianSplit out;
  for (const auto& term : h.terms()) {
    switch (classify(term, split)) {
      case Side::sigma: out.sigma_terms.push_back(term); break;
      case Side::complement: out.complement_terms.push_back(term); break;
      case Side::crossing: out.crossing_terms.push_back(term); break;
    }
  }
  return out;
}

}  // namespace arealaw
