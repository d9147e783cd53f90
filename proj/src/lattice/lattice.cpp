#include "arealaw/lattice/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "arealaw/core/errors.hpp"

namespace arealaw {

LatticeSpec LatticeSpec::chain(std::size_t length, std::size_t local_dim, bool periodic) {
  LatticeSpec spec;
  spec.extents = {length};
  spec.local_dim = local_dim;
  spec.periodic = {periodic};
  return spec;
}

std::size_t LatticeSpec::num_sites() const {
  std::size_t n = 1;
  for (std::size_t e : extents) n *= e;
  return extents.empty() ? 0 : n;
}

std::vector<std::size_t> LatticeSpec::coordinates(std::size_t site) const {
  // Last axis varies fastest, matching the site ordering of spin_space.
  std::vector<std::size_t> coords(extents.size());
  for (std::size_t k = extents.size(); k-- > 0;) {
    coords[k] = site % extents[k];
    site /= extents[k];
  }
  return coords;
}

std::size_t LatticeSpec::site_index(const std::vector<std::size_t>& coords) const {
  if (coords.size() != extents.size()) throw DimensionError("coordinate rank does not match lattice");
  std::size_t site = 0;
  for (std::size_t k = 0; k < extents.size(); ++k) {
    if (coords[k] >= extents[k]) throw DimensionError("coordinate outside lattice");
    site = site * extents[k] + coords[k];
  }
  return site;
}

std::size_t LatticeSpec::distance(std::size_t a, std::size_t b) const {
  auto ca = coordinates(a);
  auto cb = coordinates(b);
  std::size_t dist = 0;
  for (std::size_t k = 0; k < extents.size(); ++k) {
    std::size_t delta = ca[k] > cb[k] ? ca[k] - cb[k] : cb[k] - ca[k];
    if (is_periodic(k)) delta = std::min(delta, extents[k] - delta);
    dist += delta;
  }
  return dist;
}

void LatticeSpec::validate() const {
  if (extents.empty()) throw ValidationError("lattice needs at least one axis");
  for (std::size_t e : extents)
    if (e == 0) throw ValidationError("lattice extents must be positive");
  if (local_dim < 2) throw ValidationError("local dimension must be at least 2");
  if (!periodic.empty() && periodic.size() != extents.size())
    throw ValidationError("periodic flags must be given per axis");
}

std::string site_label(std::size_t site) { return "s" + std::to_string(site); }

std::vector<std::string> site_labels(const std::vector<std::size_t>& sites) {
  std::vector<std::string> out;
  out.reserve(sites.size());
  for (std::size_t s : sites) out.push_back(site_label(s));
  return out;
}

HilbertFactorization spin_space(const LatticeSpec& lattice) {
  std::vector<Factor> factors;
  for (std::size_t s = 0; s < lattice.num_sites(); ++s) factors.push_back({site_label(s), lattice.local_dim});
  return HilbertFactorization(std::move(factors));
}

namespace {

// Integer points of Z^dim with L1 norm ≤ r.
std::size_t l1_ball(std::size_t dim, std::size_t r) {
  if (dim == 0) return 1;
  std::size_t total = l1_ball(dim - 1, r);
  for (std::size_t x = 1; x <= r; ++x) total += 2 * l1_ball(dim - 1, r - x);
  return total;
}

}  // namespace

std::size_t ball_size(const LatticeSpec& lattice, std::size_t range) { return l1_ball(lattice.dimension(), range); }

std::size_t ball_size_at(const LatticeSpec& lattice, std::size_t site, std::size_t range) {
  std::size_t count = 0;
  for (std::size_t s = 0; s < lattice.num_sites(); ++s)
    if (lattice.distance(site, s) <= range) ++count;
  return count;
}

bool RegionSplit::in_sigma(std::size_t site) const {
  return std::binary_search(sigma.begin(), sigma.end(), site);
}

RegionSplit make_region_split(const LatticeSpec& lattice, std::vector<std::size_t> sigma, std::size_t range) {
  std::sort(sigma.begin(), sigma.end());
  if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
    throw ValidationError("region lists a site twice");
  const std::size_t n = lattice.num_sites();
  if (!sigma.empty() && sigma.back() >= n) throw ValidationError("region site outside lattice");

  RegionSplit split;
  split.sigma = std::move(sigma);
  for (std::size_t s = 0; s < n; ++s)
    if (!split.in_sigma(s)) split.complement.push_back(s);
  for (std::size_t s : split.sigma) {
    bool near = std::any_of(split.complement.begin(), split.complement.end(),
                            [&](std::size_t c) { return lattice.distance(s, c) <= range; });
    if (near) split.boundary.push_back(s);
  }
  return split;
}

}  // namespace arealaw
