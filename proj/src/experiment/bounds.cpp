#include "arealaw/experiment/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "arealaw/core/errors.hpp"

namespace arealaw {

AreaLawParams AreaLawParams::from_sie(double c_sie, const LocalHamiltonian& h, const RegionSplit& split, double T_tot) {
  if (!(c_sie > 0.0)) throw ValidationError("c_sie must be positive");
  AreaLawParams p;
  p.c_sie = c_sie;
  p.h_norm = strength_norm(h);
  p.d = h.lattice().local_dim;
  p.sigma_size = split.sigma.size();
  p.boundary_size = split.boundary.size();
  p.T_tot = T_tot;
  p.X = split.sigma.size();
  p.n = std::max<std::size_t>(h.max_support(), 2);
  p.dimension = h.lattice().dimension();
  const double nm1 = static_cast<double>(p.n - 1);
  if (p.dimension == 1)
    p.C = 2.0 * c_sie * nm1 * nm1;
  else
    p.C = 2.0 * c_sie * nm1 * static_cast<double>(ball_size(h.lattice(), h.range()));
  return p;
}

double AreaLawParams::h_eff() const { return std::max(h_norm, 1.0 / c_sie); }

double boundary_measure(const AreaLawParams& p) {
  return 2.0 * static_cast<double>(p.sigma_size) + p.T_tot * static_cast<double>(p.boundary_size);
}

double area_law_bound(const AreaLawParams& p) {
  return p.C * p.h_eff() * boundary_measure(p) * std::log2(static_cast<double>(p.d));
}

double area_law_bound_1d(const AreaLawParams& p) {
  return p.C * p.h_eff() * (2.0 * static_cast<double>(p.X) + 2.0 * p.T_tot) * std::log2(static_cast<double>(p.d));
}

double sie_step_bound(std::size_t M, std::size_t n, double h_norm, double dt, double c_sie, std::size_t d) {
  const double nm1 = n > 0 ? static_cast<double>(n - 1) : 0.0;
  return c_sie * dt * static_cast<double>(M) * nm1 * h_norm * std::log2(static_cast<double>(d));
}

double sie_step_bound(const LocalHamiltonian& h, const RegionSplit& split, double dt, const AreaLawParams& p) {
  return sie_step_bound(boundary_terms(h, split).size(), h.max_support(), p.h_norm, dt, p.c_sie, p.d);
}

}  // namespace arealaw
