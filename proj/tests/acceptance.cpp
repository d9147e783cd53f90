// Acceptance suite: one PASS/FAIL line per headline criterion. Tolerances are
// pinned here and must not be loosened.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arealaw/cli/runner.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/experiment/correlations.hpp"
#include "arealaw/experiment/proof_chain.hpp"
#include "arealaw/process/correlation.hpp"
#include "support/harvest_model.hpp"
#include "support/scenarios.hpp"

using namespace arealaw;
using namespace arealaw::testing;

namespace {

constexpr double kCounterexampleTol = 1e-6;
constexpr double kTeleportTol = 1e-9;
constexpr double kMeasureTol = 0.02;
constexpr double kChannelFloor = 1.98;
constexpr double kSlack = 1e-9;  // numerical slack on inequalities
constexpr double kDecoupledTol = 1e-9;
constexpr double kCauchyTol = 1e-6;
constexpr double kTrivialTol = 1e-9;
constexpr double kSieDt = 1e-3;
constexpr double kCSie = 18.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Two-party W with the parties swapped (B ≺ A from an A ≺ B comb).
ProcessMatrix swap_parties(const ProcessMatrix& w) {
  const auto& p = w.parties();
  Matrix m = permute_operator(w.matrix(), w.space(), {"B_I", "B_O", "A_I", "A_O"});
  return ProcessMatrix({p[1], p[0]}, std::move(m));
}

double oracle_mutual_information(const DensityMatrix& omega) {
  const auto labels = omega.space().labels();
  return von_neumann_entropy(partial_trace(omega, {labels[0]})) + von_neumann_entropy(partial_trace(omega, {labels[1]})) -
         von_neumann_entropy(omega);
}

Verdict counterexample() {
  ProcessMatrix w = build_counterexample_W();
  const double iw = process_mutual_information(w, {0});
  const double ia = ancilla_mutual_information(w, counterexample_scheme(), {0});
  return {std::abs(iw - 1.0) <= kCounterexampleTol && std::abs(ia - 2.0) <= kCounterexampleTol,
          fmt("I(W/trW) = %.9f bits, I(ancillas) = %.9f bits", iw, ia)};
}

Verdict teleport_identity() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ProcessMatrix w = random_causal_process({2, 2}, {2, 2}, 2, seed);
    if (seed % 4 == 1) w = swap_parties(w);
    if (seed % 4 == 2) {
      // causally separable mixture of both orders
      ProcessMatrix v = swap_parties(random_causal_process({2, 2}, {2, 2}, 2, seed + 1000));
      const double q = 0.25 + 0.5 * static_cast<double>(seed % 3) / 2.0;
      w = ProcessMatrix(w.parties(), q * w.matrix() + (1 - q) * v.matrix());
    }
    if (!validate_process(w, seed).valid()) return {false, fmt("seed %d produced an invalid W", int(seed))};
    DensityMatrix rho = final_ancilla_state(w, teleport_scheme(w.parties()));
    Matrix target = w.matrix() / w.matrix().trace().real();
    worst = std::max(worst, (rho.matrix() - target).norm());
  }
  return {worst <= kTeleportTol, fmt("20 seeded W (both orders + mixtures), max ||rho - W/trW||_F = %.3e", worst)};
}

Verdict state_measure() {
  std::vector<std::pair<std::string, DensityMatrix>> cases;
  HilbertFactorization ab({{"A_I", 2}, {"B_I", 2}});
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  cases.emplace_back("bell", DensityMatrix::from_pure(PureState(ab, bell)));
  cases.emplace_back("product", DensityMatrix::from_pure(PureState::basis(ab, 0)));
  Rng rng(2024);
  cases.emplace_back("mixed", random_density_matrix(ab, 2, rng));
  bool pass = true;
  std::string detail;
  for (const auto& [name, omega] : cases) {
    const double exact = oracle_mutual_information(omega);
    CorrelationBudget budget;
    budget.seed = 11;
    const double est = estimate_C_W(process_from_state(omega), {0}, budget).value;
    pass = pass && std::abs(est - exact) <= kMeasureTol;
    detail += fmt("%s: C_W %.4f vs I %.4f; ", name.c_str(), est, exact);
  }
  return {pass, detail};
}

Verdict channel_measure() {
  CorrelationBudget budget;
  budget.seed = 5;
  auto est = estimate_C_W(process_from_channel(identity_channel(2)), {0}, budget);
  return {est.value >= kChannelFloor && est.value <= 2.0 + kSlack && est.cap == 2.0,
          fmt("identity qubit channel: C_W %.6f bits, cap %.1f", est.value, est.cap)};
}

Verdict area_law() {
  std::size_t violations = 0, runs = 0;
  double max_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Scenario s = random_scenario(seed);
    auto result = run_experiment(initial_state(s.lattice, s.spins, {}), s.h, s.schedule, s.region, {});
    const double I = alice_mutual_information(result);
    auto p = AreaLawParams::from_sie(kCSie, s.h, s.split, s.region.T_tot());
    const double bound = area_law_bound_1d(p);
    if (!(I <= bound + kSlack)) ++violations;
    max_ratio = std::max(max_ratio, I / (2.0 * double(s.region.X()) + 2.0 * s.region.T_tot()));
    ++runs;
  }
  return {violations == 0 && runs >= 100,
          fmt("%zu runs, %zu violations, empirical max I/(2X+2T_tot) = %.4f bits", runs, violations, max_ratio)};
}

Verdict sie_rate() {
  std::size_t violations = 0, decoupled = 0, runs = 0;
  double worst_decoupled = 0.0, max_rate_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 g(mix_seed(seed, 0x51E));
    const std::size_t n = pick(g, 2, 6);
    LatticeSpec lattice = LatticeSpec::chain(n);
    std::string family;
    LocalHamiltonian h = random_family(lattice, g, mix_seed(seed, 7), family);
    const std::size_t x = pick(g, 1, n - 1);
    const std::size_t offset = pick(g, 0, n - x);
    std::vector<std::size_t> sigma;
    for (std::size_t k = 0; k < x; ++k) sigma.push_back(offset + k);
    RegionSplit split = make_region_split(lattice, sigma, h.range());
    if (seed % 5 == 0) {
      // decoupled: drop every term crossing the cut
      auto parts = split_hamiltonian(h, split);
      auto terms = parts.sigma_terms;
      terms.insert(terms.end(), parts.complement_terms.begin(), parts.complement_terms.end());
      h = LocalHamiltonian(lattice, std::move(terms), h.range());
    }
    // ancilla-assisted: one ancilla qubit on each side, random global pure state
    HilbertFactorization space = spin_space(lattice).concat(HilbertFactorization({{"ra", 2}, {"rc", 2}}));
    Rng rng(mix_seed(seed, 0xA1));
    TrackedState state = TrackedState::from_pure(random_pure_state(space, rng));
    std::vector<std::string> c_labels{"rc"};
    for (std::size_t s = 0; s < n; ++s)
      if (!split.in_sigma(s)) c_labels.push_back(site_label(s));
    EntropyStep step = measure_entropy_step(state, h, kSieDt, c_labels);
    auto p = AreaLawParams::from_sie(kCSie, h, split, kSieDt);
    const double bound = sie_step_bound(h, split, kSieDt, p);
    const std::size_t M = split_hamiltonian(h, split).crossing_terms.size();
    if (M == 0) {
      ++decoupled;
      worst_decoupled = std::max(worst_decoupled, step.delta);
      if (step.delta >= kDecoupledTol) ++violations;
    } else {
      if (!(step.delta <= bound + kSlack)) ++violations;
      max_rate_ratio = std::max(max_rate_ratio, step.delta / bound);
    }
    ++runs;
  }
  return {violations == 0 && runs >= 200 && decoupled > 0,
          fmt("%zu configurations (%zu decoupled, max |dS| %.2e), %zu violations, max rate/bound = %.4f", runs,
              decoupled, worst_decoupled, violations, max_rate_ratio)};
}

Verdict proof_chain() {
  std::size_t failing = 0;
  double worst = INFINITY, max_rate = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Scenario s = random_scenario(seed + 500);
    ExperimentOptions opts;
    opts.snapshots = true;
    auto result = run_experiment(initial_state(s.lattice, s.spins, {}), s.h, s.schedule, s.region, {}, opts);
    auto p = AreaLawParams::from_sie(kCSie, s.h, s.split, s.region.T_tot());
    auto report = proof_chain_report(result.snapshots, s.region, s.h, s.split, p);
    if (!report.holds()) ++failing;
    for (const auto& c : report.checks) worst = std::min(worst, c.margin);
    max_rate = std::max(max_rate, report.max_rate);
  }
  return {failing == 0, fmt("20 runs, %zu with a violated inequality, smallest margin %.3e bits, max rate %.4f bits/time",
                            failing, worst, max_rate)};
}

Verdict data_processing() {
  std::size_t ok_classical = 0, ok_signal = 0, signalling_runs = 0;
  double max_signal = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 g(mix_seed(seed, 0xD9));
    const std::size_t n = pick(g, 3, 4);
    LatticeSpec lattice = LatticeSpec::chain(n);
    std::string family;
    LocalHamiltonian h = random_family(lattice, g, mix_seed(seed, 3), family);
    UniformTiming timing{0, pick(g, 1, 2), pick(g, 1, 3), uniform(g, 0.2, 0.9)};
    SpacetimeRegion region = timing.region({0});
    RegionSplit split = make_region_split(lattice, region.sigma, h.range());

    SettingDistribution setting{{"keep", "flip"}, {}};
    const double q = uniform(g, 0.2, 0.8);
    setting.probabilities = {q, 1 - q};
    auto controlled = std::make_shared<PurifiedInstrument>(purify(controlled_instrument(
        setting, {instruments::identity(), instruments::unitary_channel(hamiltonians::pauli_x())})));
    std::vector<Register> registers{{"p", 2, Owner::alice}};

    MeasurementSchedule schedule;
    schedule.times = timing.times();
    const std::size_t first = timing.steps_before + 1, last = schedule.times.size() - 1;
    schedule.events.push_back({first, {0}, {"p"}, controlled, "controlled"});
    for (std::size_t k = first + 1; k <= timing.steps_before + timing.T_steps; ++k)
      schedule.events.push_back({k, {0}, {}, random_instrument(g, mix_seed(seed, k)), "random"});
    const std::size_t extra = pick(g, 0, 2);
    for (std::size_t e = 0; e < extra; ++e)
      schedule.events.push_back({pick(g, 0, last - 1), {pick(g, 1, n - 1)}, {}, random_instrument(g, mix_seed(seed, 99, e)), "random"});
    schedule.events.push_back({last, {n - 1}, {}, std::make_shared<PurifiedInstrument>(purify(instruments::projective_z())), "z"});
    // drop duplicated (site, time) pairs the random draw may have produced
    std::vector<ScheduledInstrument> unique;
    for (const auto& e : schedule.events) {
      bool clash = false;
      for (const auto& u : unique) clash = clash || (u.time_index == e.time_index && u.sites == e.sites);
      if (!clash) unique.push_back(e);
    }
    schedule.events = std::move(unique);

    std::map<std::string, Vector> reg_states{{"p", setting.setting_state()}};
    Rng rng(mix_seed(seed, 0x1D));
    PureState spins = random_pure_state(spin_space(lattice), rng);
    ExperimentOptions opts;
    opts.track = Track::alice_and_bob;
    auto result = run_experiment(initial_state(lattice, spins, registers, reg_states), h, schedule, region, registers, opts);

    auto corr = outcome_correlations(result);
    if (corr.classical_mi <= corr.quantum_mi + kSlack) ++ok_classical;
    const double bound = area_law_bound(AreaLawParams::from_sie(kCSie, h, split, region.T_tot()));
    auto sig = signaling_capacity(result, "p", bound);
    if (sig.mutual_information <= bound + kSlack) ++ok_signal;
    if (sig.mutual_information > 1e-6) ++signalling_runs;
    max_signal = std::max(max_signal, sig.mutual_information);
  }
  return {ok_classical == 100 && ok_signal == 100,
          fmt("classical <= quantum in %zu/100, signaling <= bound in %zu/100 (%zu runs signal, max %.4f bits)",
              ok_classical, ok_signal, signalling_runs, max_signal)};
}

Verdict harvesting() {
  HarvestModel model = harvest_model(17);
  const double t_beta = model.spec.t_beta;
  const double bound = harvesting_bound(harvesting_params(model.spec, kCSie));
  std::vector<Vector> finals;
  bool below = true;
  double max_I = 0.0, drift = 0.0;
  for (std::size_t m = 1; m <= 64; m *= 2) {
    Trajectory traj = evolve_switched(model.spec, model.detectors, model.spins, t_beta, m);
    const double I = detector_mutual_information(traj, t_beta, t_beta);
    below = below && I <= bound + kSlack;
    max_I = std::max(max_I, I);
    drift = std::max(drift, traj.max_norm_drift);
    finals.push_back(traj.at(t_beta));
  }
  const double cauchy = projector_distance(finals[finals.size() - 2], finals.back());
  return {below && cauchy <= kCauchyTol && drift < 1e-9,
          fmt("m = 1..64: max I(a:b) %.6f <= bound %.4f bits; ||P_64 - P_32||_F = %.3e; norm drift %.1e", max_I, bound,
              cauchy, drift)};
}

Verdict trivial_limit() {
  LatticeSpec lattice = LatticeSpec::chain(2);
  LocalHamiltonian h(lattice, {}, 1);
  UniformTiming timing{0, 1, 1, 0.5};
  SpacetimeRegion region = timing.region({0});
  MeasurementSchedule schedule;
  schedule.times = timing.times();
  schedule.events.push_back({1, {0}, {}, std::make_shared<PurifiedInstrument>(purify(instruments::swap_with_ancilla())), "swap"});
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  auto result = run_experiment(initial_state(lattice, PureState(spin_space(lattice), bell), {}), h, schedule, region, {});
  const double I = alice_mutual_information(result);
  return {std::abs(I - 2.0) <= kTrivialTol, fmt("I(A:Abar) = %.12f bits (2|Sigma| log2 d = 2)", I)};
}

Verdict reproducibility() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "arealaw_repro";
  fs::remove_all(base);
  const fs::path config = fs::path(AREALAW_SOURCE_DIR) / "configs" / "area_sweep.json";
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::vector<std::string> csvs;
  for (std::size_t jobs : {1, 2, 1}) {
    const fs::path out = base / ("run" + std::to_string(csvs.size()));
    cli::RunOptions opts;
    opts.jobs = jobs;
    opts.out_dir = out;
    opts.quiet = true;
    const int code = cli::run_command(config, opts);
    if (code != 0) return {false, fmt("run exited with %d", code)};
    csvs.push_back(read(out / "sweep.csv"));
  }
  const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[1] == csvs[2];
  fs::remove_all(base);
  return {same, fmt("configs/area_sweep.json three times (jobs 1, 2, 1): %s, %zu bytes", same ? "byte-identical" : "differ",
                    csvs[0].size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"counterexample", counterexample},   {"teleport-identity", teleport_identity},
      {"state-process-measure", state_measure}, {"channel-process-measure", channel_measure},
      {"area-law-suite", area_law},         {"sie-rate-suite", sie_rate},
      {"proof-chain-suite", proof_chain},   {"data-processing-suite", data_processing},
      {"harvesting-suite", harvesting},     {"trivial-limit", trivial_limit},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
