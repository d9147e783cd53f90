#include "arealaw/experiment/schedule.hpp"

#include <algorithm>
#include <set>

#include "arealaw/core/errors.hpp"

namespace arealaw {

bool SpacetimeRegion::in_sigma(std::size_t site) const {
  return std::find(sigma.begin(), sigma.end(), site) != sigma.end();
}

bool SpacetimeRegion::in_window(double time) const {
  // Half-open (t_α, t_β]; a relative slack absorbs k·dt rounding.
  const double eps = 1e-12 * std::max(1.0, std::abs(t_beta));
  return time > t_alpha + eps && time <= t_beta + eps;
}

void SpacetimeRegion::validate() const {
  if (!(t_beta > t_alpha)) throw ValidationError("region needs t_beta > t_alpha");
  if (T_steps == 0) throw ValidationError("region needs T_steps ≥ 1");
  std::set<std::size_t> unique(sigma.begin(), sigma.end());
  if (unique.size() != sigma.size()) throw ValidationError("region lists a site twice");
}

void MeasurementSchedule::validate(const LatticeSpec& lattice) const {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ValidationError("schedule times must be strictly increasing");
  const std::size_t n = lattice.num_sites();
  std::set<std::pair<std::size_t, std::string>> busy;
  for (const auto& e : events) {
    if (e.time_index >= times.size()) throw ValidationError("instrument scheduled at an unknown time index");
    if (!e.instrument) throw ValidationError("scheduled instrument is missing");
    std::size_t din = 1;
    for (std::size_t s : e.sites) {
      if (s >= n) throw ValidationError("instrument acts on a site outside the lattice");
      din *= lattice.local_dim;
    }
    if (e.sites.empty() && e.registers.empty()) throw ValidationError("instrument acts on nothing");
    for (std::size_t s : e.sites)
      if (!busy.insert({e.time_index, site_label(s)}).second)
        throw ValidationError("overlapping instrument supports at time index " + std::to_string(e.time_index));
    for (const auto& r : e.registers)
      if (!busy.insert({e.time_index, r}).second)
        throw ValidationError("overlapping instrument supports at time index " + std::to_string(e.time_index));
    if (e.instrument->output_dim != e.instrument->input_dim)
      throw ValidationError("scheduled instruments must preserve the dimension of their support");
  }
}

Owner MeasurementSchedule::owner(const ScheduledInstrument& e, const SpacetimeRegion& region) const {
  const double t = times.at(e.time_index);
  bool alice = false, bob = false;
  for (std::size_t s : e.sites) (region.contains(s, t) ? alice : bob) = true;
  if (alice && bob) throw ValidationError("collective instrument spans Alice's and Bob's regions");
  if (!alice && !bob) {
    // Register-only instruments belong to Alice inside the window.
    return region.in_window(t) ? Owner::alice : Owner::bob;
  }
  return alice ? Owner::alice : Owner::bob;
}

double MeasurementSchedule::span() const { return times.empty() ? 0.0 : times.back() - times.front(); }

std::string ancilla_label(const ScheduledInstrument& e, Owner owner) {
  std::string label = owner == Owner::alice ? "a_t" : "b_t";
  label += std::to_string(e.time_index);
  for (std::size_t s : e.sites) label += "_s" + std::to_string(s);
  for (const auto& r : e.registers) label += "_" + r;
  return label;
}

std::vector<double> UniformTiming::times() const {
  std::vector<double> t;
  for (std::size_t k = 0; k <= steps_before + T_steps + steps_after; ++k) t.push_back(static_cast<double>(k) * dt);
  return t;
}

SpacetimeRegion UniformTiming::region(std::vector<std::size_t> sigma) const {
  SpacetimeRegion r;
  r.sigma = std::move(sigma);
  r.t_alpha = static_cast<double>(steps_before) * dt;
  r.t_beta = static_cast<double>(steps_before + T_steps) * dt;
  r.T_steps = T_steps;
  return r;
}

MeasurementSchedule per_site_schedule(const LatticeSpec& lattice, const std::vector<double>& times,
                                      const SpacetimeRegion& region, const InstrumentFactory& factory) {
  MeasurementSchedule sched;
  sched.times = times;
  for (std::size_t k = 0; k < times.size(); ++k)
    for (std::size_t s = 0; s < lattice.num_sites(); ++s) {
      const Owner owner = region.contains(s, times[k]) ? Owner::alice : Owner::bob;
      auto ins = factory(s, k, owner);
      if (ins) sched.events.push_back({k, {s}, {}, std::move(ins), ""});
    }
  return sched;
}

}  // namespace arealaw
