#include "arealaw/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "arealaw/core/information.hpp"
#include "arealaw/core/parallel.hpp"
#include "arealaw/core/random.hpp"
#include "arealaw/experiment/bounds.hpp"
#include "arealaw/experiment/correlations.hpp"
#include "arealaw/experiment/proof_chain.hpp"
#include "arealaw/harvesting/harvesting.hpp"
#include "arealaw/instruments/templates.hpp"
#include "arealaw/lattice/templates.hpp"
#include "arealaw/process/correlation.hpp"
#include "arealaw/process/process_io.hpp"

namespace arealaw::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double slack = 1e-9;

const std::vector<std::string> base_columns{"seed",          "N",       "D",     "d",      "X",
                                            "sigma_size",    "boundary_size", "T_steps", "dt", "T_tot",
                                            "h_norm",        "I_bits",  "bound_bits", "margin_bits"};

std::vector<std::string> with(std::vector<std::string> cols, std::initializer_list<const char*> extra) {
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

std::uint64_t run_seed(const ExperimentConfig& cfg, std::size_t run) { return cfg.seed.value_or(0) + run; }

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t v = 1;
  for (std::size_t k = 0; k < exp; ++k) v = v > SIZE_MAX / std::max<std::size_t>(base, 1) ? SIZE_MAX : v * base;
  return v;
}

std::size_t times_capped(std::size_t a, std::size_t b) { return (b != 0 && a > SIZE_MAX / b) ? SIZE_MAX : a * b; }

// One row of output plus its record entry.
struct RowResult {
  std::vector<CsvCell> row;
  json record;
  bool held = true;
};

json geometry_json(const AreaLawParams& p, std::size_t N) {
  return {{"N", N},
          {"D", p.dimension},
          {"d", p.d},
          {"X", p.X},
          {"sigma_size", p.sigma_size},
          {"boundary_size", p.boundary_size},
          {"spacetime_boundary", boundary_measure(p)}};
}

json params_json(const AreaLawParams& p) {
  return {{"C", p.C}, {"c_sie", p.c_sie}, {"h_norm", p.h_norm}, {"h_eff", p.h_eff()}, {"n", p.n}, {"T_tot", p.T_tot}};
}

std::vector<CsvCell> base_row(std::uint64_t seed, const AreaLawParams& p, std::size_t N, std::size_t T_steps, double dt,
                              double I, double bound) {
  return {seed,
          static_cast<std::uint64_t>(N),
          static_cast<std::uint64_t>(p.dimension),
          static_cast<std::uint64_t>(p.d),
          static_cast<std::uint64_t>(p.X),
          static_cast<std::uint64_t>(p.sigma_size),
          static_cast<std::uint64_t>(p.boundary_size),
          static_cast<std::uint64_t>(T_steps),
          dt,
          p.T_tot,
          p.h_norm,
          I,
          bound,
          bound - I};
}

PureState initial_spins(const ExperimentConfig& cfg, const LocalHamiltonian& h, std::uint64_t seed) {
  const auto& lattice = cfg.lattice;
  const auto space = spin_space(lattice);
  const std::size_t n = lattice.num_sites(), d = lattice.local_dim;
  if (cfg.initial_state == "random") {
    Rng rng(mix_seed(seed, 0x1517));
    return random_pure_state(space, rng);
  }
  if (cfg.initial_state == "neel") {
    std::size_t index = 0;
    for (std::size_t s = 0; s < n; ++s) index = index * d + (s % 2);
    return PureState::basis(space, index);
  }
  if (cfg.initial_state == "bell_boundary") {
    // Maximally entangled pairs across the Σ|Σ̄ cut, greedily along nearest neighbours.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<bool> used(n, false);
    auto split = make_region_split(lattice, cfg.sigma, std::max<std::size_t>(h.range(), 1));
    for (std::size_t s : split.sigma)
      for (std::size_t c : split.complement)
        if (!used[s] && !used[c] && lattice.distance(s, c) == 1) {
          pairs.emplace_back(s, c);
          used[s] = used[c] = true;
        }
    Vector amp = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    const std::size_t combos = ipow(d, pairs.size());
    for (std::size_t k = 0; k < combos; ++k) {
      std::vector<std::size_t> digits(n, 0);
      std::size_t rest = k;
      for (auto [s, c] : pairs) {
        digits[s] = digits[c] = rest % d;
        rest /= d;
      }
      std::size_t index = 0;
      for (std::size_t s = 0; s < n; ++s) index = index * d + digits[s];
      amp(static_cast<Eigen::Index>(index)) = 1.0;
    }
    return PureState::normalized(space, amp);
  }
  return PureState::basis(space, 0);
}

template <class Fn>
auto as_config_error(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const DimensionCapExceeded&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

// Instruments for one run: fixed templates shared, seeded ones per (site, time).
class InstrumentSource {
 public:
  InstrumentSource(const InstrumentTemplate& t, std::size_t d, std::uint64_t seed) : t_(t), d_(d), seed_(seed) {
    if (!t_.randomized()) fixed_ = make_instrument(t_, d_, 0);
  }
  std::shared_ptr<const PurifiedInstrument> at(std::size_t site, std::size_t time) const {
    if (!t_.randomized()) return fixed_;
    return make_instrument(t_, d_, mix_seed(t_.seed.value_or(seed_), site, time));
  }
  std::size_t ancilla_dim() const {
    auto p = t_.randomized() ? make_instrument(t_, d_, 1) : fixed_;
    return p ? p->ancilla_dim : 1;
  }
  bool none() const { return t_.name == "none"; }

 private:
  InstrumentTemplate t_;
  std::size_t d_;
  std::uint64_t seed_;
  std::shared_ptr<const PurifiedInstrument> fixed_;
};

json snapshots_json(const std::vector<Snapshot>& snaps) {
  json out = json::array();
  for (const auto& s : snaps) {
    const char* stage = s.stage == Snapshot::Stage::start         ? "start"
                        : s.stage == Snapshot::Stage::instruments ? "instruments"
                                                                  : "evolution";
    out.push_back({{"time_index", s.time_index}, {"time", s.time}, {"stage", stage}, {"S_A", s.S_A}, {"S_B", s.S_B},
                   {"S_AB", s.S_AB}});
  }
  return out;
}

json chain_json(const ProofChainReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"holds", c.holds}});
  return {{"checks", checks}, {"holds", r.holds()}, {"violations", r.violations()}, {"max_rate", r.max_rate}};
}

// ---- area_sweep -------------------------------------------------------------------------------

RowResult area_run(const ExperimentConfig& cfg, std::size_t run, std::size_t T) {
  const std::uint64_t seed = run_seed(cfg, run);
  LocalHamiltonian h = as_config_error("hamiltonian", [&] { return build_hamiltonian(cfg, seed); });
  UniformTiming timing{cfg.timing.steps_before, T, cfg.timing.steps_after, cfg.timing.dt};
  SpacetimeRegion region = timing.region(cfg.sigma);
  RegionSplit split = make_region_split(cfg.lattice, cfg.sigma, h.range());
  const std::size_t d = cfg.lattice.local_dim;
  InstrumentSource alice(cfg.alice, d, mix_seed(seed, 0xA));
  InstrumentSource bob(cfg.bob, d, mix_seed(seed, 0xB));
  auto schedule = per_site_schedule(cfg.lattice, timing.times(), region, [&](std::size_t s, std::size_t k, Owner o) {
    return o == Owner::alice ? alice.at(s, k) : bob.at(s, k);
  });

  ExperimentOptions opts{cfg.track, cfg.proof_chain, cfg.dim_cap};
  auto result = as_config_error("experiment", [&] {
    return run_experiment(initial_state(cfg.lattice, initial_spins(cfg, h, seed), {}), h, schedule, region, {}, opts);
  });
  const double I = alice_mutual_information(result);
  auto p = AreaLawParams::from_sie(cfg.c_sie, h, split, region.T_tot());
  const double bound = area_law_bound(p);

  RowResult out;
  out.held = I <= bound + slack;
  out.row = base_row(seed, p, cfg.lattice.num_sites(), T, timing.dt, I, bound);
  out.row.insert(out.row.end(), {p.h_eff(), p.C, p.c_sie, static_cast<std::uint64_t>(p.n)});
  out.record = {{"seed", seed},
                {"T_steps", T},
                {"geometry", geometry_json(p, cfg.lattice.num_sites())},
                {"params", params_json(p)},
                {"S_A_final", I / 2},
                {"I_bits", I},
                {"bound_bits", bound},
                {"bound_1d_bits", area_law_bound_1d(p)},
                {"margin_bits", bound - I}};
  if (cfg.proof_chain) {
    auto report = proof_chain_report(result.snapshots, region, h, split, p);
    out.record["entropies"] = snapshots_json(result.snapshots);
    out.record["proof_chain"] = chain_json(report);
    out.held = out.held && report.holds();
  }
  out.record["held"] = out.held;
  return out;
}

// ---- sie_check --------------------------------------------------------------------------------

RowResult sie_run(const ExperimentConfig& cfg, std::size_t run) {
  const std::uint64_t seed = run_seed(cfg, run);
  LocalHamiltonian h = as_config_error("hamiltonian", [&] { return build_hamiltonian(cfg, seed); });
  RegionSplit split = make_region_split(cfg.lattice, cfg.sigma, h.range());
  std::vector<Factor> anc;
  for (std::size_t k = 0; k < cfg.sie_ancillas; ++k) anc.push_back({"ra" + std::to_string(k), cfg.lattice.local_dim});
  for (std::size_t k = 0; k < cfg.sie_ancillas; ++k) anc.push_back({"rc" + std::to_string(k), cfg.lattice.local_dim});
  HilbertFactorization space = spin_space(cfg.lattice).concat(HilbertFactorization(anc));
  check_dim_cap(space.total_dim(), cfg.dim_cap, "sie state");
  Rng rng(mix_seed(seed, 0x51E));
  TrackedState state = TrackedState::from_pure(random_pure_state(space, rng));
  std::vector<std::string> c_labels;
  for (std::size_t s : split.complement) c_labels.push_back(site_label(s));
  for (std::size_t k = 0; k < cfg.sie_ancillas; ++k) c_labels.push_back("rc" + std::to_string(k));
  EntropyStep step = measure_entropy_step(state, h, cfg.sie_dt, c_labels, cfg.dim_cap);

  auto p = AreaLawParams::from_sie(cfg.c_sie, h, split, cfg.sie_dt);
  const std::size_t M = split_hamiltonian(h, split).crossing_terms.size();
  const double bound = sie_step_bound(h, split, cfg.sie_dt, p);
  RowResult out;
  out.held = step.delta <= bound + slack;
  out.row = {seed,
             static_cast<std::uint64_t>(cfg.lattice.num_sites()),
             static_cast<std::uint64_t>(p.dimension),
             static_cast<std::uint64_t>(p.d),
             static_cast<std::uint64_t>(p.X),
             static_cast<std::uint64_t>(p.sigma_size),
             static_cast<std::uint64_t>(p.boundary_size),
             static_cast<std::uint64_t>(M),
             static_cast<std::uint64_t>(h.max_support()),
             p.h_norm,
             cfg.sie_dt,
             step.delta,
             step.delta / cfg.sie_dt,
             bound,
             bound - step.delta};
  out.record = {{"seed", seed},           {"M", M},
                {"n", h.max_support()},   {"h_norm", p.h_norm},
                {"dt", cfg.sie_dt},       {"S_before", step.before},
                {"S_after", step.after},  {"delta_S_bits", step.delta},
                {"bound_bits", bound},    {"held", out.held}};
  return out;
}

// ---- signaling --------------------------------------------------------------------------------

RowResult signaling_run(const ExperimentConfig& cfg, std::size_t run, std::size_t T) {
  const std::uint64_t seed = run_seed(cfg, run);
  const auto& sc = cfg.signaling;
  const std::size_t d = cfg.lattice.local_dim;
  LocalHamiltonian h = as_config_error("hamiltonian", [&] { return build_hamiltonian(cfg, seed); });
  UniformTiming timing{cfg.timing.steps_before, T, cfg.timing.steps_after, cfg.timing.dt};
  SpacetimeRegion region = timing.region(cfg.sigma);
  RegionSplit split = make_region_split(cfg.lattice, cfg.sigma, h.range());

  SettingDistribution setting = SettingDistribution::uniform(sc.settings.size());
  if (!sc.probabilities.empty()) setting.probabilities = sc.probabilities;
  as_config_error("signaling.probabilities", [&] {
    setting.validate();
    return 0;
  });
  std::vector<Instrument> per_setting;
  for (std::size_t k = 0; k < sc.settings.size(); ++k) {
    auto ins = template_instrument(sc.settings[k], d, mix_seed(sc.settings[k].seed.value_or(seed), 0x5E7, k));
    per_setting.push_back(ins ? *ins : instruments::identity(d));
  }
  auto controlled = std::make_shared<PurifiedInstrument>(
      as_config_error("signaling.settings", [&] { return purify(controlled_instrument(setting, per_setting)); }));
  std::vector<Register> registers{{"p", setting.size(), Owner::alice}};

  MeasurementSchedule schedule;
  schedule.times = timing.times();
  const std::size_t first = timing.steps_before + 1, last = schedule.times.size() - 1;
  schedule.events.push_back({first, {cfg.sigma.front()}, {"p"}, controlled, "controlled"});
  InstrumentSource alice(cfg.alice, d, mix_seed(seed, 0xA));
  for (std::size_t k = first; k <= timing.steps_before + T; ++k)
    for (std::size_t s : cfg.sigma) {
      if (k == first && s == cfg.sigma.front()) continue;
      if (auto ins = alice.at(s, k)) schedule.events.push_back({k, {s}, {}, ins, cfg.alice.name});
    }
  InstrumentSource bob(sc.bob, d, mix_seed(seed, 0xB));
  for (std::size_t s : sc.bob_sites)
    if (auto ins = bob.at(s, last)) schedule.events.push_back({last, {s}, {}, ins, sc.bob.name});

  ExperimentOptions opts{cfg.track, false, cfg.dim_cap};
  std::map<std::string, Vector> reg_states{{"p", setting.setting_state()}};
  auto result = as_config_error("experiment", [&] {
    return run_experiment(initial_state(cfg.lattice, initial_spins(cfg, h, seed), registers, reg_states), h, schedule,
                          region, registers, opts);
  });
  auto p = AreaLawParams::from_sie(cfg.c_sie, h, split, region.T_tot());
  const double bound = area_law_bound(p);
  auto sig = signaling_capacity(result, "p", bound);

  RowResult out;
  double I = std::nan(""), classical = std::nan("");
  out.held = sig.mutual_information <= bound + slack;
  if (cfg.track != Track::bob_only) {
    I = alice_mutual_information(result);
    out.held = out.held && I <= bound + slack;
  }
  if (cfg.track == Track::alice_and_bob) {
    auto corr = outcome_correlations(result);
    classical = corr.classical_mi;
    out.held = out.held && classical <= corr.quantum_mi + slack;
  }
  out.row = base_row(seed, p, cfg.lattice.num_sites(), T, timing.dt, std::isnan(I) ? 0.0 : I, bound);
  out.row[11] = I;
  out.row[13] = bound - sig.mutual_information;
  out.row.insert(out.row.end(), {sig.mutual_information, classical});
  out.record = {{"seed", seed},
                {"T_steps", T},
                {"geometry", geometry_json(p, cfg.lattice.num_sites())},
                {"params", params_json(p)},
                {"signaling_bits", sig.mutual_information},
                {"bound_bits", bound},
                {"note", sig.note},
                {"held", out.held}};
  if (!std::isnan(I)) out.record["I_bits"] = I;
  if (!std::isnan(classical)) out.record["classical_bits"] = classical;
  return out;
}

// ---- harvest ----------------------------------------------------------------------------------

Matrix coupling_operator(const CouplingConfig& c, std::size_t det_dim, std::size_t d) {
  using namespace hamiltonians;
  if (c.op == "swap") {
    if (det_dim != d) throw ConfigError("swap coupling needs detector_dim equal to the local dimension");
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s(static_cast<Eigen::Index>(i * d + j), static_cast<Eigen::Index>(j * d + i)) = 1.0;
    return s;
  }
  if (det_dim != 2 || d != 2) throw ConfigError("coupling '" + c.op + "' needs qubit detectors and spins");
  Matrix xx = Eigen::kroneckerProduct(pauli_x(), pauli_x()).eval();
  if (c.op == "xx") return xx;
  return xx + Eigen::kroneckerProduct(pauli_y(), pauli_y()).eval();
}

Coupling build_coupling(const CouplingConfig& c, const std::string& detector, std::size_t det_dim, std::size_t d,
                        double t0, double t1) {
  if (c.op == "none" || c.strength == 0.0) return {};
  const Matrix pair = coupling_operator(c, det_dim, d) * c.strength;
  std::vector<Factor> factors{{detector, det_dim}};
  std::vector<std::string> labels{detector};
  for (std::size_t s : c.sites) {
    factors.push_back({site_label(s), d});
    labels.push_back(site_label(s));
  }
  HilbertFactorization space(factors);
  Matrix op = Matrix::Zero(static_cast<Eigen::Index>(space.total_dim()), static_cast<Eigen::Index>(space.total_dim()));
  for (std::size_t s : c.sites) op += embed_operator(pair, {detector, site_label(s)}, space);
  std::function<double(double)> envelope;
  if (c.envelope == "sine")
    envelope = [t0, t1](double t) {
      const double x = std::sin(M_PI * (t - t0) / (t1 - t0));
      return x * x;
    };
  return make_coupling(std::move(labels), std::move(op), std::move(envelope));
}

struct HarvestSetup {
  SwitchedHamiltonian spec;
  std::vector<DetectorSpec> detectors;
  PureState spins;
};

HarvestSetup harvest_setup(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto& hc = cfg.harvest;
  LocalHamiltonian h = as_config_error("hamiltonian", [&] { return build_hamiltonian(cfg, seed); });
  const double t_end = hc.t_end.value_or(hc.t_beta);
  const std::size_t dd = hc.detector_dim, d = cfg.lattice.local_dim;
  SwitchedHamiltonian spec{h, cfg.sigma, {}, {}, {}, hc.t_alpha, hc.t_beta};
  spec.a_sigma = build_coupling(hc.a_sigma, "a", dd, d, hc.t_alpha, hc.t_beta);
  spec.b_complement = build_coupling(hc.b_complement, "b", dd, d, hc.t_start, t_end);
  spec.b_sigma = build_coupling(hc.b_sigma, "b", dd, d, hc.t_start, t_end);
  std::vector<DetectorSpec> detectors{{"a", dd}, {"b", dd}};
  as_config_error("harvest", [&] {
    spec.validate(detectors);
    return 0;
  });
  PureState spins = initial_spins(cfg, h, seed);
  return {std::move(spec), std::move(detectors), std::move(spins)};
}

struct HarvestRun {
  RowResult result;
  Vector terminal;
};

HarvestRun harvest_run(const ExperimentConfig& cfg, std::size_t run, std::size_t m) {
  const std::uint64_t seed = run_seed(cfg, run);
  const auto& hc = cfg.harvest;
  HarvestSetup setup = harvest_setup(cfg, seed);
  HarvestOptions hopts;
  hopts.t_start = hc.t_start;
  hopts.dim_cap = cfg.dim_cap;
  hopts.record_times = {hc.t_beta};
  const double t_end = hc.t_end.value_or(hc.t_beta);
  Trajectory traj = evolve_switched(setup.spec, setup.detectors, setup.spins, t_end, m, hopts);
  const double I = detector_mutual_information(traj, hc.t_beta, hc.t_beta);
  const double I_end = detector_mutual_information(traj, t_end, hc.t_beta);
  auto p = harvesting_params(setup.spec, cfg.c_sie);
  const double bound = harvesting_bound(p);
  const double T = hc.t_beta - hc.t_alpha;

  HarvestRun out;
  auto& r = out.result;
  r.held = I <= bound + slack && I_end <= bound + slack && traj.max_norm_drift < slack;
  r.row = base_row(seed, p, cfg.lattice.num_sites(), 2 * m, T / (2.0 * double(m)), I, bound);
  r.row.insert(r.row.end(), {static_cast<std::uint64_t>(m), hc.t_alpha, hc.t_beta,
                             std::to_string(hc.detector_dim) + "x" + std::to_string(hc.detector_dim), I,
                             std::string()});
  r.record = {{"seed", seed},
              {"m", m},
              {"geometry", geometry_json(p, cfg.lattice.num_sites())},
              {"params", params_json(p)},
              {"I_ab_bits", I},
              {"I_ab_end_bits", I_end},
              {"t_end", t_end},
              {"bound_bits", bound},
              {"margin_bits", bound - I},
              {"norm_drift", traj.max_norm_drift},
              {"held", r.held}};
  out.terminal = traj.at(hc.t_beta);
  return out;
}

// ---- process_measure --------------------------------------------------------------------------

ProcessMatrix build_process(const ExperimentConfig& cfg) {
  const auto& pc = cfg.process;
  const std::uint64_t seed = cfg.seed.value_or(0);
  if (pc.source == "counterexample") return build_counterexample_W();
  if (pc.source == "random_causal") return random_causal_process({2, 2}, {2, 2}, pc.memory, seed);
  if (pc.source == "channel")
    return process_from_channel(pc.channel == "identity" ? identity_channel(2)
                                                         : choi_from_map(2, 2, [&](const Matrix& rho) -> Matrix {
                                                             return (1 - pc.p) * rho + pc.p * rho.trace() * Matrix::Identity(2, 2) / 2.0;
                                                           }));
  if (pc.source == "state") {
    HilbertFactorization ab({{"A_I", 2}, {"B_I", 2}});
    if (pc.state == "product") return process_from_state(DensityMatrix::from_pure(PureState::basis(ab, 0)));
    if (pc.state == "bell") {
      Vector v = Vector::Zero(4);
      v(0) = v(3) = 1 / std::sqrt(2.0);
      return process_from_state(DensityMatrix::from_pure(PureState(ab, v)));
    }
    Rng rng(mix_seed(seed, 0x3A));
    return process_from_state(random_density_matrix(ab, 2, rng));
  }
  std::ifstream in(pc.path);
  if (!in) throw ConfigError("cannot read process file '" + pc.path.string() + "'");
  try {
    return process_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("process file: ") + e.what());
  }
}

std::string dims_string(const ProcessMatrix& w) {
  std::string s;
  for (std::size_t k = 0; k < w.parties().size(); ++k)
    s += (k ? "|" : "") + std::to_string(w.parties()[k].in) + "x" + std::to_string(w.parties()[k].out);
  return s;
}

json report_json(const ProcessReport& r) {
  return {{"min_eigenvalue", r.min_eigenvalue},
          {"trace", r.trace},
          {"expected_trace", r.expected_trace},
          {"psd", r.psd},
          {"trace_ok", r.trace_ok},
          {"normalization_residual", r.normalization_residual},
          {"range_residual", r.range_residual},
          {"probes", r.probes},
          {"normalization_ok", r.normalization_ok},
          {"subspace_check", r.subspace_check},
          {"valid", r.valid()}};
}

RunArtifacts process_measure(const ExperimentConfig& cfg, std::size_t jobs) {
  const auto& pc = cfg.process;
  ProcessMatrix w = as_config_error("process", [&] { return build_process(cfg); });
  for (std::size_t g : pc.group)
    if (g >= w.parties().size()) throw ConfigError("process.group names a missing party");
  const std::uint64_t seed = cfg.seed.value_or(0);
  ProcessReport report = validate_process(w, seed);
  CorrelationBudget budget;
  budget.restarts = pc.restarts;
  budget.iterations = pc.iterations;
  budget.max_ancilla_dim = pc.max_ancilla_dim;
  budget.seed = seed;
  budget.jobs = jobs;
  check_dim_cap(w.dim(), cfg.dim_cap, "process matrix");
  const double I_W = process_mutual_information(w, pc.group);
  auto est = estimate_C_W(w, pc.group, budget);
  const bool counter = pc.source == "counterexample";
  const double witness = counter ? ancilla_mutual_information(w, counterexample_scheme(), pc.group)
                                 : ancilla_mutual_information(w, teleport_scheme(w.parties()), pc.group);

  RunArtifacts art;
  art.table = CsvTable({"seed", "source", "dims", "I_W_bits", "C_W_bits", "cap_bits", "witness_bits", "complete", "valid"});
  art.held = report.valid() && est.value <= est.cap + slack;
  art.table.add({seed, pc.source, dims_string(w), I_W, est.value, est.cap, witness,
                 static_cast<std::uint64_t>(est.complete), static_cast<std::uint64_t>(report.valid())});
  json per_dim = json::array();
  for (auto [a, v] : est.per_dimension) per_dim.push_back({{"ancilla_dim", a}, {"bits", v}});
  art.record = {{"source", pc.source},
                {"dims", dims_string(w)},
                {"group", pc.group},
                {"validation", report_json(report)},
                {"I_W_bits", I_W},
                {"C_W_bits", est.value},
                {"cap_bits", est.cap},
                {counter ? "counterexample_scheme_bits" : "teleport_scheme_bits", witness},
                {"per_dimension", per_dim},
                {"complete", est.complete},
                {"note", est.note},
                {"scheme", scheme_to_json(est.scheme)},
                {"process", process_to_json(w)}};
  return art;
}

// ---- validate ---------------------------------------------------------------------------------

struct Validation {
  bool valid = false;
  CsvTable table{{"check", "value", "threshold", "pass"}};
  json record;
  std::string text;
};

Validation validate_document(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read '" + file.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + file.string() + "' is not valid JSON: " + e.what());
  }
  const std::string kind = doc.is_object() && doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  Validation v;
  std::ostringstream text;
  auto add = [&](const std::string& check, double value, double threshold, bool pass) {
    v.table.add({check, value, threshold, static_cast<std::uint64_t>(pass)});
    text << (pass ? "  ok    " : "  FAIL  ") << check << " = " << format_number(value) << " (threshold "
         << format_number(threshold) << ")\n";
  };
  if (kind == "process") {
    ProcessMatrix w = as_config_error("process", [&] { return process_from_json(doc); });
    ProcessReport r = validate_process(w);
    text << "process " << dims_string(w) << "\n";
    add("min_eigenvalue", r.min_eigenvalue, -1e-9, r.psd);
    add("trace_residual", std::abs(r.trace - r.expected_trace), 1e-9, r.trace_ok);
    add("normalization_residual", r.normalization_residual, 1e-8, r.normalization_ok);
    add("range_residual", r.range_residual, 1e-8, r.normalization_ok);
    text << "  subspace characterization: " << r.subspace_check << "\n";
    v.valid = r.valid();
    v.record = report_json(r);
  } else if (kind == "instrument") {
    Instrument ins = as_config_error("instrument", [&] { return instrument_from_json(doc); });
    InstrumentReport r = validate_instrument(ins);
    text << "instrument " << ins.input_dim << " -> " << ins.output_dim << ", " << ins.branches.size() << " branches\n";
    json branches = json::array();
    for (const auto& b : r.branches) {
      add("cp_residual[" + b.label + "]", b.cp_residual, 1e-9, b.cp);
      branches.push_back({{"label", b.label}, {"cp_residual", b.cp_residual}, {"cp", b.cp}});
    }
    add("tp_residual", r.tp_residual, 1e-9, r.tp);
    if (!r.shapes_ok) text << "  FAIL  shapes: " << r.message << "\n";
    v.valid = r.valid();
    v.record = {{"branches", branches}, {"tp_residual", r.tp_residual}, {"shapes_ok", r.shapes_ok}, {"valid", r.valid()}};
  } else {
    throw ConfigError("'" + file.string() + "' is neither a process nor an instrument document");
  }
  text << (v.valid ? "PASS" : "FAIL") << "\n";
  v.text = text.str();
  v.record["kind"] = kind;
  return v;
}

template <class Row>
RunArtifacts merge(std::vector<Row>& rows, std::vector<std::string> header) {
  RunArtifacts art;
  art.table = CsvTable(std::move(header));
  json runs = json::array();
  for (auto& r : rows) {
    art.table.add(std::move(r.row));
    runs.push_back(std::move(r.record));
    art.held = art.held && r.held;
  }
  art.record = {{"runs", runs}};
  return art;
}

std::string describe_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "kind: " << kind_name(cfg.kind) << "\n";
  if (cfg.kind == Kind::validate) {
    out << "target: " << cfg.target.string() << "\n";
    return out.str();
  }
  if (cfg.kind == Kind::process_measure) {
    ProcessMatrix w = as_config_error("process", [&] { return build_process(cfg); });
    out << "process: " << cfg.process.source << ", dims " << dims_string(w) << ", W dimension " << w.dim() << "\n";
    out << "rank-bound cap: " << format_number(correlation_cap(w, cfg.process.group)) << " bits\n";
    out << "simulated dimension: " << estimated_dimension(cfg) << " (cap " << cfg.dim_cap << ")\n";
    return out.str();
  }
  LocalHamiltonian h = as_config_error("hamiltonian", [&] { return build_hamiltonian(cfg, run_seed(cfg, 0)); });
  RegionSplit split = make_region_split(cfg.lattice, cfg.sigma, h.range());
  out << "lattice: " << cfg.lattice.num_sites() << " sites, D = " << cfg.lattice.dimension()
      << ", d = " << cfg.lattice.local_dim << ", range R = " << h.range() << ", " << h.terms().size() << " terms\n";
  out << "|Sigma| = " << split.sigma.size() << ", |dSigma| = " << split.boundary.size() << "\n";
  auto line = [&](double T_tot, const char* label, std::size_t steps) {
    auto p = AreaLawParams::from_sie(cfg.c_sie, h, split, T_tot);
    out << label << steps << ": T_tot = " << format_number(T_tot) << ", |dA| = 2|Sigma| + T_tot|dSigma| = "
        << 2 * p.sigma_size << " + " << format_number(T_tot) << "*" << p.boundary_size << " = "
        << format_number(boundary_measure(p)) << ", C = " << format_number(p.C) << ", ||h|| = " << format_number(p.h_norm)
        << " (effective " << format_number(p.h_eff()) << "), bound = " << format_number(area_law_bound(p)) << " bits\n";
  };
  if (cfg.kind == Kind::harvest) {
    const double T = cfg.harvest.t_beta - cfg.harvest.t_alpha;
    out << "window: (" << format_number(cfg.harvest.t_alpha) << ", " << format_number(cfg.harvest.t_beta) << "), T = "
        << format_number(T) << "\n";
    line(T, "harvest, m-independent, window ", 1);
  } else if (cfg.kind == Kind::sie_check) {
    auto p = AreaLawParams::from_sie(cfg.c_sie, h, split, cfg.sie_dt);
    out << "sie step: dt = " << format_number(cfg.sie_dt) << ", M = " << split_hamiltonian(h, split).crossing_terms.size()
        << ", bound = " << format_number(sie_step_bound(h, split, cfg.sie_dt, p)) << " bits\n";
  } else {
    for (std::size_t T : cfg.timing.T_steps) line(double(T) * cfg.timing.dt, "T_steps = ", T);
  }
  out << "simulated dimension: " << estimated_dimension(cfg) << " (cap " << cfg.dim_cap << ")\n";
  return out.str();
}

}  // namespace

std::optional<Instrument> template_instrument(const InstrumentTemplate& t, std::size_t d, std::uint64_t seed) {
  if (t.name == "none") return std::nullopt;
  return as_config_error("instrument '" + t.name + "'", [&] {
    if (t.name == "projective_z") return instruments::projective_z(d);
    if (t.name == "projective_x") return instruments::projective_x(d);
    if (t.name == "swap") return instruments::swap_with_ancilla(d);
    if (t.name == "identity") return instruments::identity(d);
    if (t.name == "depolarize") return instruments::depolarize(t.p, d);
    if (t.name == "amplitude_damp") {
      if (d != 2) throw ConfigError("amplitude_damp needs qubits");
      return instruments::amplitude_damp(t.gamma);
    }
    if (t.name == "flip") {
      Matrix shift = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t j = 0; j < d; ++j) shift(static_cast<Eigen::Index>((j + 1) % d), static_cast<Eigen::Index>(j)) = 1.0;
      return instruments::unitary_channel(shift);
    }
    return instruments::random_isometry(seed, t.anc_dim, d);
  });
}

std::shared_ptr<const PurifiedInstrument> make_instrument(const InstrumentTemplate& t, std::size_t d, std::uint64_t seed) {
  auto ins = template_instrument(t, d, seed);
  if (!ins) return nullptr;
  return as_config_error("instrument '" + t.name + "'", [&] { return std::make_shared<const PurifiedInstrument>(purify(*ins)); });
}

std::size_t estimated_dimension(const ExperimentConfig& cfg) {
  if (cfg.kind == Kind::validate) return 1;
  if (cfg.kind == Kind::process_measure) return build_process(cfg).dim();
  const std::size_t d = cfg.lattice.local_dim;
  const std::size_t spins = ipow(d, cfg.lattice.num_sites());
  switch (cfg.kind) {
    case Kind::harvest: return times_capped(spins, cfg.harvest.detector_dim * cfg.harvest.detector_dim);
    case Kind::sie_check: return times_capped(spins, ipow(d, 2 * cfg.sie_ancillas));
    default: break;
  }
  const std::size_t T = *std::max_element(cfg.timing.T_steps.begin(), cfg.timing.T_steps.end());
  const std::size_t steps = cfg.timing.steps_before + T + cfg.timing.steps_after + 1;
  const std::size_t X = cfg.sigma.size(), N = cfg.lattice.num_sites();
  const bool keep_alice = cfg.track != Track::bob_only, keep_bob = cfg.track != Track::alice_only;
  std::size_t dim = spins;
  const InstrumentSource alice(cfg.alice, d, 1);
  if (cfg.kind == Kind::area_sweep) {
    const InstrumentSource bob(cfg.bob, d, 1);
    if (keep_alice) dim = times_capped(dim, ipow(alice.ancilla_dim(), X * T));
    if (keep_bob) dim = times_capped(dim, ipow(bob.ancilla_dim(), N * steps - X * T));
    return dim;
  }
  // signaling: register, controlled instrument, Alice's other instruments, Bob's final measurements
  const auto& sc = cfg.signaling;
  dim = times_capped(dim, sc.settings.size());
  if (keep_alice) {
    std::size_t branches = 0;
    for (const auto& s : sc.settings) {
      auto p = make_instrument(s, d, 1);
      branches = std::max(branches, p ? p->ancilla_dim : 1);
    }
    dim = times_capped(dim, branches * sc.settings.size());
    dim = times_capped(dim, ipow(alice.ancilla_dim(), X * T - 1));
  }
  if (keep_bob) dim = times_capped(dim, ipow(InstrumentSource(sc.bob, d, 1).ancilla_dim(), sc.bob_sites.size()));
  return dim;
}

RunArtifacts execute(const ExperimentConfig& cfg, std::size_t jobs) {
  check_dim_cap(estimated_dimension(cfg), cfg.dim_cap, "configured run");
  RunArtifacts art;
  switch (cfg.kind) {
    case Kind::area_sweep: {
      if (cfg.track == Track::bob_only) throw ConfigError("area_sweep needs Alice's ancillas tracked");
      const auto& Ts = cfg.timing.T_steps;
      std::vector<RowResult> rows(cfg.runs * Ts.size());
      parallel_for(rows.size(), jobs, [&](std::size_t i) { rows[i] = area_run(cfg, i / Ts.size(), Ts[i % Ts.size()]); });
      art = merge(rows, with(base_columns, {"h_eff", "C", "c_sie", "n"}));
      break;
    }
    case Kind::sie_check: {
      std::vector<RowResult> rows(cfg.runs);
      parallel_for(rows.size(), jobs, [&](std::size_t i) { rows[i] = sie_run(cfg, i); });
      art = merge(rows, {"seed", "N", "D", "d", "X", "sigma_size", "boundary_size", "M", "n", "h_norm", "dt",
                         "delta_S_bits", "rate", "bound_bits", "margin_bits"});
      break;
    }
    case Kind::signaling: {
      const auto& Ts = cfg.timing.T_steps;
      std::vector<RowResult> rows(cfg.runs * Ts.size());
      parallel_for(rows.size(), jobs, [&](std::size_t i) { rows[i] = signaling_run(cfg, i / Ts.size(), Ts[i % Ts.size()]); });
      art = merge(rows, with(base_columns, {"signaling_bits", "classical_bits"}));
      break;
    }
    case Kind::harvest: {
      const auto& ms = cfg.harvest.m;
      std::vector<HarvestRun> runs(cfg.runs * ms.size());
      parallel_for(runs.size(), jobs, [&](std::size_t i) { runs[i] = harvest_run(cfg, i / ms.size(), ms[i % ms.size()]); });
      // distance of each terminal state to the previous m of the same seed
      for (std::size_t i = 0; i < runs.size(); ++i)
        if (i % ms.size() != 0) {
          const Vector& x = runs[i].terminal;
          const Vector& y = runs[i - 1].terminal;
          const double dist = (x * x.adjoint() - y * y.adjoint()).norm();
          runs[i].result.row.back() = dist;
          runs[i].result.record["cauchy_distance"] = dist;
        }
      std::vector<RowResult> rows;
      for (auto& r : runs) rows.push_back(std::move(r.result));
      art = merge(rows, with(base_columns, {"m", "t_alpha", "t_beta", "detector_dims", "I_ab_bits", "cauchy_distance"}));
      break;
    }
    case Kind::process_measure: art = process_measure(cfg, jobs); break;
    case Kind::validate: {
      Validation v = validate_document(cfg.target);
      art.table = std::move(v.table);
      art.record = {{"validation", v.record}};
      art.held = v.valid;
      break;
    }
  }
  art.record["kind"] = kind_name(cfg.kind);
  art.record["config"] = cfg.source;
  art.record["all_held"] = art.held;
  return art;
}

int run_command(const fs::path& config, const RunOptions& options) {
  auto& err = std::cerr;
  try {
    ExperimentConfig cfg = load_config(config);
    RunArtifacts art = execute(cfg, options.jobs);
    fs::create_directories(options.out_dir);
    {
      std::ofstream rec(options.out_dir / "record.json", std::ios::binary);
      if (!rec) throw std::runtime_error("cannot write record.json");
      rec << art.record.dump(2) << "\n";
    }
    art.table.write(options.out_dir / "sweep.csv");
    if (!options.quiet)
      std::cout << kind_name(cfg.kind) << ": " << art.table.size() << " rows, "
                << (art.held ? "all bounds held" : "BOUND VIOLATED") << "; wrote " << (options.out_dir / "record.json").string()
                << " and " << (options.out_dir / "sweep.csv").string() << "\n";
    return art.held ? ExitCode::ok : ExitCode::bound_violation;
  } catch (const DimensionCapExceeded& e) {
    err << "dimension cap: " << e.what() << "\n";
    return ExitCode::dimension_cap;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return ExitCode::config_error;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return ExitCode::config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::internal_error;
  }
}

int validate_command(const fs::path& file, std::ostream& out) {
  try {
    Validation v = validate_document(file);
    out << v.text;
    return v.valid ? ExitCode::ok : ExitCode::bound_violation;
  } catch (const DimensionCapExceeded& e) {
    std::cerr << "dimension cap: " << e.what() << "\n";
    return ExitCode::dimension_cap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::config_error;
  }
}

int describe_command(const fs::path& config, std::ostream& out) {
  try {
    ExperimentConfig cfg = load_config(config);
    out << describe_text(cfg);
    check_dim_cap(estimated_dimension(cfg), cfg.dim_cap, "configured run");
    return ExitCode::ok;
  } catch (const DimensionCapExceeded& e) {
    std::cerr << "dimension cap: " << e.what() << "\n";
    return ExitCode::dimension_cap;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ExitCode::config_error;
  }
}

}  // namespace arealaw::cli
