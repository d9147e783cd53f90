#include "arealaw/experiment/experiment.hpp"

#include <algorithm>

#include "arealaw/core/errors.hpp"
#include "arealaw/lattice/evolution.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::vector<Matrix> kraus_of(const PurifiedInstrument& p) {
  std::vector<Matrix> kraus;
  for (std::size_t a = 0; a < p.ancilla_dim; ++a) {
    Matrix k(idx(p.output_dim), idx(p.input_dim));
    for (std::size_t o = 0; o < p.output_dim; ++o) k.row(idx(o)) = p.isometry.row(idx(o * p.ancilla_dim + a));
    kraus.push_back(std::move(k));
  }
  return kraus;
}

bool keeps(Track track, Owner owner) {
  switch (track) {
    case Track::alice_only: return owner == Owner::alice;
    case Track::bob_only: return owner == Owner::bob;
    case Track::alice_and_bob: return true;
  }
  return true;
}

}  // namespace

std::vector<std::string> ExperimentResult::alice_labels() const {
  std::vector<std::string> out;
  for (const auto& r : registers)
    if (r.owner == Owner::alice) out.push_back(r.label);
  for (const auto& a : ancillas)
    if (a.owner == Owner::alice && a.tracked) out.push_back(a.label);
  return out;
}

std::vector<std::string> ExperimentResult::bob_labels() const {
  std::vector<std::string> out;
  for (const auto& r : registers)
    if (r.owner == Owner::bob) out.push_back(r.label);
  for (const auto& a : ancillas)
    if (a.owner == Owner::bob && a.tracked) out.push_back(a.label);
  return out;
}

TrackedState initial_state(const LatticeSpec& lattice, const PureState& spins, const std::vector<Register>& registers,
                           const std::map<std::string, Vector>& register_states) {
  if (!(spins.space() == spin_space(lattice))) throw LabelError("initial spin state must live on the lattice spins");
  TrackedState state = TrackedState::from_pure(spins);
  for (const auto& r : registers) {
    HilbertFactorization space({{r.label, r.dim}});
    auto it = register_states.find(r.label);
    if (it != register_states.end())
      state.append(PureState(space, it->second));
    else
      state.append(PureState::basis(space, 0));
  }
  return state;
}

ExperimentResult run_experiment(TrackedState initial, const LocalHamiltonian& h, const MeasurementSchedule& schedule,
                                const SpacetimeRegion& region, const std::vector<Register>& registers,
                                const ExperimentOptions& options) {
  const auto& lattice = h.lattice();
  region.validate();
  schedule.validate(lattice);
  if (options.snapshots && options.track == Track::bob_only)
    throw ValidationError("snapshots need Alice's ancillas to be tracked");
  for (const auto& r : registers)
    if (!initial.space().contains(r.label)) throw LabelError("register '" + r.label + "' missing from the initial state");

  const auto spins = spin_space(lattice).labels();
  check_dim_cap(spin_space(lattice).total_dim(), options.dim_cap, "spin evolution");
  check_dim_cap(initial.space().total_dim(), options.dim_cap, "tracked state");

  ExperimentResult result{std::move(initial), {}, registers, {}, options.track};
  auto& state = result.state;
  const auto sigma_labels = site_labels(region.sigma);

  auto snapshot = [&](std::size_t k, Snapshot::Stage stage, double gap) {
    if (!options.snapshots) return;
    auto a = result.alice_labels();
    std::vector<std::string> ab = a;
    ab.insert(ab.end(), sigma_labels.begin(), sigma_labels.end());
    result.snapshots.push_back(
        {k, schedule.times[k], stage, gap, state.entropy(a), state.entropy(sigma_labels), state.entropy(ab)});
  };

  std::vector<std::pair<double, Matrix>> unitaries;  // gap → exp(−i gap H)
  auto evolution = [&](double gap) -> const Matrix& {
    for (const auto& [g, u] : unitaries)
      if (std::abs(g - gap) <= 1e-14 * std::max(1.0, std::abs(gap))) return u;
    unitaries.emplace_back(gap, evolution_unitary(h, gap, options.dim_cap).matrix());
    return unitaries.back().second;
  };

  if (!schedule.times.empty()) snapshot(0, Snapshot::Stage::start, 0.0);
  for (std::size_t k = 0; k < schedule.times.size(); ++k) {
    for (const auto& e : schedule.events) {
      if (e.time_index != k) continue;
      const Owner owner = schedule.owner(e, region);
      std::vector<std::string> targets = e.registers;
      for (const auto& s : site_labels(e.sites)) targets.push_back(s);
      const auto& ins = *e.instrument;
      if (state.space().dim_of(targets) != ins.input_dim)
        throw DimensionError("instrument input dimension does not match its support");

      const std::string label = ancilla_label(e, owner);
      const bool tracked = keeps(options.track, owner);
      if (tracked) {
        check_dim_cap(state.space().total_dim() * ins.ancilla_dim, options.dim_cap, "tracked state");
        std::vector<Factor> outputs;
        for (const auto& t : targets) outputs.push_back({t, state.space().dim(t)});
        outputs.push_back({label, ins.ancilla_dim});
        state.apply_map(targets, ins.isometry, outputs);
      } else {
        state.apply_channel(targets, kraus_of(ins));
      }
      result.ancillas.push_back({label, owner, e.instrument, tracked});
    }
    snapshot(k, Snapshot::Stage::instruments, 0.0);
    if (k + 1 < schedule.times.size()) {
      const double gap = schedule.times[k + 1] - schedule.times[k];
      state.apply_unitary(spins, evolution(gap));
      snapshot(k + 1, Snapshot::Stage::evolution, gap);
    }
  }
  return result;
}

TripartiteSplit tripartite_split(const ExperimentResult& result, const SpacetimeRegion& region) {
  TripartiteSplit split;
  split.A = result.alice_labels();
  split.B = site_labels(region.sigma);
  for (const auto& l : result.state.space().labels())
    if (std::find(split.A.begin(), split.A.end(), l) == split.A.end() &&
        std::find(split.B.begin(), split.B.end(), l) == split.B.end())
      split.C.push_back(l);
  return split;
}

double alice_mutual_information(const ExperimentResult& result) {
  if (result.track == Track::bob_only) throw ValidationError("Alice's ancillas were not tracked");
  auto a = result.alice_labels();
  for (const auto& l : a)
    if (!result.state.space().contains(l)) throw LabelError("Alice label '" + l + "' missing from the final state");
  return 2.0 * result.state.entropy(a);
}

EntropyStep measure_entropy_step(TrackedState& state, const LocalHamiltonian& h, double dt,
                                 const std::vector<std::string>& c_labels, std::size_t dim_cap) {
  EntropyStep step;
  step.before = state.entropy(c_labels);
  state.apply_unitary(spin_space(h.lattice()).labels(), evolution_unitary(h, dt, dim_cap).matrix());
  step.after = state.entropy(c_labels);
  step.delta = std::abs(step.after - step.before);
  return step;
}

}  // namespace arealaw
