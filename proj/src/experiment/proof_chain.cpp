#include "arealaw/experiment/proof_chain.hpp"

#include <algorithm>
#include <cmath>

#include "arealaw/core/errors.hpp"

namespace arealaw {

namespace {

constexpr double slack = 1e-9;

ChainCheck check(std::string name, double lhs, double rhs) {
  const double margin = rhs - lhs + slack;
  return {std::move(name), lhs, rhs, margin, margin >= 0.0};
}

const Snapshot& find(const std::vector<Snapshot>& snaps, std::size_t k, Snapshot::Stage stage) {
  for (const auto& s : snaps)
    if (s.time_index == k && s.stage == stage) return s;
  throw ValidationError("run has no snapshot for time index " + std::to_string(k));
}

}  // namespace

bool ProofChainReport::holds() const { return violations() == 0; }

std::size_t ProofChainReport::violations() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const ChainCheck& c) { return !c.holds; }));
}

ProofChainReport proof_chain_report(const std::vector<Snapshot>& snapshots, const SpacetimeRegion& region,
                                    const LocalHamiltonian& h, const RegionSplit& split, const AreaLawParams& params) {
  if (snapshots.empty()) throw ValidationError("proof chain needs per-step snapshots");
  ProofChainReport report;

  // t_0: last event time not after t_α; t_T: last event time inside the window.
  std::size_t last = 0;
  for (const auto& s : snapshots) last = std::max(last, s.time_index);
  std::size_t k0 = 0, kT = 0;
  bool any_window = false;
  for (const auto& s : snapshots) {
    if (s.stage != Snapshot::Stage::instruments) continue;
    if (!region.in_window(s.time) && s.time <= region.t_alpha + 1e-12) k0 = std::max(k0, s.time_index);
    if (region.in_window(s.time)) {
      kT = std::max(kT, s.time_index);
      any_window = true;
    }
  }
  if (!any_window) kT = k0;

  const auto& s0 = find(snapshots, k0, Snapshot::Stage::instruments);
  const auto& sT = find(snapshots, kT, Snapshot::Stage::instruments);
  const auto& sf = find(snapshots, last, Snapshot::Stage::instruments);
  const double log_d = std::log2(static_cast<double>(params.d));
  const double cap_B = static_cast<double>(region.X()) * log_d;

  report.checks.push_back(check("product start: |S_AB(t0) - S_B(t0)| + S_A(t0) = 0",
                                std::abs(s0.S_AB - s0.S_B) + s0.S_A, 0.0));

  double chained = 0.0;
  for (std::size_t k = k0 + 1; k <= kT; ++k) {
    const auto& before = find(snapshots, k - 1, Snapshot::Stage::instruments);
    const auto& evolved = find(snapshots, k, Snapshot::Stage::evolution);
    const auto& after = find(snapshots, k, Snapshot::Stage::instruments);
    const double delta = std::abs(evolved.S_AB - before.S_AB);
    const double bound = sie_step_bound(h, split, evolved.gap, params);
    chained += bound;
    if (evolved.gap > 0.0) report.max_rate = std::max(report.max_rate, delta / evolved.gap);
    report.checks.push_back(check("SIE step " + std::to_string(k) + ": |dS_AB| <= c dt M (n-1) |h| log d", delta, bound));
    report.checks.push_back(check("local instruments at step " + std::to_string(k) + " keep S_AB",
                                  std::abs(after.S_AB - evolved.S_AB), 0.0));
    report.checks.push_back(check("chained bound at step " + std::to_string(k) + ": S_AB(t_k) <= S_B(t0) + sum dS",
                                  after.S_AB, s0.S_B + chained));
  }

  report.checks.push_back(check("Araki-Lieb at t_T: |S_A - S_B| <= S_AB", std::abs(sT.S_A - sT.S_B), sT.S_AB));
  report.checks.push_back(check("subadditivity at t_T: S_AB <= S_A + S_B", sT.S_AB, sT.S_A + sT.S_B));
  report.checks.push_back(check("S_A(t_f) = S_A(t_T)", std::abs(sf.S_A - sT.S_A), 0.0));
  report.checks.push_back(check("S_B(t0) <= X log d", s0.S_B, cap_B));
  report.checks.push_back(check("S_B(t_T) <= X log d", sT.S_B, cap_B));
  report.checks.push_back(check("final assembly: S_A(t_f) <= S_B(t0) + S_B(t_T) + sum dS", sf.S_A, s0.S_B + sT.S_B + chained));
  report.checks.push_back(check("final assembly: S_A(t_f) <= 2 X log d + sum dS", sf.S_A, 2.0 * cap_B + chained));

  report.S_A_final = sf.S_A;
  report.I_bits = 2.0 * sf.S_A;
  report.bound_bits = params.dimension == 1 ? area_law_bound_1d(params) : area_law_bound(params);
  report.checks.push_back(check("area law: I(A:rest) <= bound", report.I_bits, report.bound_bits));
  return report;
}

}  // namespace arealaw
