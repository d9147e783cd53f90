#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "arealaw/instruments/purification.hpp"
#include "arealaw/lattice/lattice.hpp"

namespace arealaw {

/// Σ × (t_α, t_β]; Alice owns (site, time) with site ∈ Σ and t_α < time ≤ t_β.
struct SpacetimeRegion {
  std::vector<std::size_t> sigma;
  double t_alpha = 0.0;
  double t_beta = 1.0;
  std::size_t T_steps = 1;

  double T_tot() const { return t_beta - t_alpha; }
  double dt() const { return T_tot() / static_cast<double>(T_steps); }
  std::size_t X() const { return sigma.size(); }
  bool in_sigma(std::size_t site) const;
  bool in_window(double time) const;
  bool contains(std::size_t site, double time) const { return in_sigma(site) && in_window(time); }
  void validate() const;
};

enum class Owner { alice, bob };

/// A register outside the lattice (e.g. the setting ancilla |p⟩), present from the start.
struct Register {
  std::string label;
  std::size_t dim = 2;
  Owner owner = Owner::alice;
};

/// One instrument application. `sites` are spins acted on (in that order);
/// `registers` are extra register labels prepended to the input.
struct ScheduledInstrument {
  std::size_t time_index = 0;
  std::vector<std::size_t> sites;
  std::vector<std::string> registers;
  std::shared_ptr<const PurifiedInstrument> instrument;
  std::string name;  // template name, informational
};

struct MeasurementSchedule {
  std::vector<double> times;  // strictly increasing
  std::vector<ScheduledInstrument> events;

  void validate(const LatticeSpec& lattice) const;
  /// Throws if an instrument mixes Alice-owned and Bob-owned pairs.
  Owner owner(const ScheduledInstrument& e, const SpacetimeRegion& region) const;
  /// Σ of the gaps between consecutive times.
  double span() const;
};

/// Label of the ancilla created by an event: "a_t3_s1" (Alice) or "b_t0_s4_s5" (Bob).
std::string ancilla_label(const ScheduledInstrument& e, Owner owner);

/// times k·dt for k = 0 … steps_before + T_steps + steps_after, with
/// t_α = steps_before·dt and t_β = (steps_before + T_steps)·dt.
struct UniformTiming {
  std::size_t steps_before = 1;
  std::size_t T_steps = 1;
  std::size_t steps_after = 1;
  double dt = 0.1;

  std::vector<double> times() const;
  SpacetimeRegion region(std::vector<std::size_t> sigma) const;
};

/// Factory for the instrument on one (site, time) pair; nullptr means no instrument.
using InstrumentFactory =
    std::function<std::shared_ptr<const PurifiedInstrument>(std::size_t site, std::size_t time_index, Owner owner)>;

/// One single-site instrument per (site, time) pair that the factory provides.
MeasurementSchedule per_site_schedule(const LatticeSpec& lattice, const std::vector<double>& times,
                                      const SpacetimeRegion& region, const InstrumentFactory& factory);

}  // namespace arealaw
