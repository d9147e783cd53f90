#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arealaw/core/factorization.hpp"

namespace arealaw {

/// Hypercubic lattice of d-level spins with graph (Manhattan) distance.
struct LatticeSpec {
  std::vector<std::size_t> extents;
  std::size_t local_dim = 2;
  std::vector<bool> periodic;  // per axis; empty means open everywhere

  static LatticeSpec chain(std::size_t length, std::size_t local_dim = 2, bool periodic = false);

  std::size_t dimension() const { return extents.size(); }
  std::size_t num_sites() const;
  std::vector<std::size_t> coordinates(std::size_t site) const;
  std::size_t site_index(const std::vector<std::size_t>& coords) const;
  bool is_periodic(std::size_t axis) const { return axis < periodic.size() && periodic[axis]; }
  std::size_t distance(std::size_t a, std::size_t b) const;
  /// Validates extents, local dimension and the periodic flags.
  void validate() const;
};

std::string site_label(std::size_t site);
std::vector<std::string> site_labels(const std::vector<std::size_t>& sites);
HilbertFactorization spin_space(const LatticeSpec& lattice);

/// Number of sites within graph distance R of an interior site of the infinite lattice.
std::size_t ball_size(const LatticeSpec& lattice, std::size_t range);
/// Same count around a concrete site, truncated by open boundaries.
std::size_t ball_size_at(const LatticeSpec& lattice, std::size_t site, std::size_t range);

/// Σ, its complement and ∂Σ := sites of Σ within distance R of the complement.
struct RegionSplit {
  std::vector<std::size_t> sigma;
  std::vector<std::size_t> complement;
  std::vector<std::size_t> boundary;

  bool in_sigma(std::size_t site) const;
};

RegionSplit make_region_split(const LatticeSpec& lattice, std::vector<std::size_t> sigma, std::size_t range);

}  // namespace arealaw
