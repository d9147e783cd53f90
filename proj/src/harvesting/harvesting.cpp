#include "arealaw/harvesting/harvesting.hpp"

#include <algorithm>
#include <cmath>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/tolerances.hpp"
#include "arealaw/experiment/tracked_state.hpp"

namespace arealaw {

namespace {

constexpr double time_eps = 1e-12;

bool is_detector(const std::string& label) { return label == "a" || label == "b"; }

Matrix sample(const Coupling& c, double t) {
  Matrix m = c.at(t);
  if ((m - m.adjoint()).norm() > tol::hermitian * std::max(1.0, m.norm()))
    throw ValidationError("coupling sampled at t = " + std::to_string(t) + " is not Hermitian");
  return m;
}

struct Stepper {
  HilbertFactorization space;
  std::vector<std::string> spins;
  Matrix h0;
  std::vector<std::pair<double, Matrix>> h0_cache;  // τ → exp(−iτH₀)

  void apply_h0(Vector& psi, double tau) {
    const Matrix* u = nullptr;
    for (const auto& [t, m] : h0_cache)
      if (std::abs(t - tau) <= time_eps * std::max(1.0, tau)) u = &m;
    if (!u) {
      h0_cache.emplace_back(tau, hermitian_exponential(h0, tau));
      u = &h0_cache.back().second;
    }
    psi = apply_on_rows(space, psi, spins, *u);
  }

  void apply_coupling(Vector& psi, const Coupling& c, double t, double tau) {
    if (c.empty()) return;
    psi = apply_on_rows(space, psi, c.labels, hermitian_exponential(sample(c, t), tau));
  }

  // exp(−iτ H(t)) for the full Hamiltonian outside the window.
  void apply_full(Vector& psi, const SwitchedHamiltonian& spec, double t, double tau) {
    Matrix h = embed_operator(h0, spins, space);
    for (const Coupling* c : {&spec.b_complement, &spec.b_sigma})
      if (!c->empty()) h += embed_operator(sample(*c, t), c->labels, space);
    psi = hermitian_exponential(h, tau) * psi;
  }
};

}  // namespace

Coupling make_coupling(std::vector<std::string> labels, Matrix op, std::function<double(double)> envelope) {
  Coupling c;
  c.labels = std::move(labels);
  if (envelope)
    c.at = [op = std::move(op), envelope = std::move(envelope)](double t) -> Matrix { return envelope(t) * op; };
  else
    c.at = [op = std::move(op)](double) -> Matrix { return op; };
  return c;
}

void SwitchedHamiltonian::validate(const std::vector<DetectorSpec>& detectors) const {
  if (!(t_beta > t_alpha)) throw ValidationError("harvesting window needs t_beta > t_alpha");
  bool has_a = false, has_b = false;
  for (const auto& d : detectors) {
    if (d.label == "a") has_a = true;
    else if (d.label == "b") has_b = true;
    else throw ValidationError("detectors must be labelled 'a' and 'b'");
    if (d.dim < 1) throw ValidationError("detector dimension must be positive");
  }
  if (!has_a || !has_b) throw ValidationError("harvesting needs detectors 'a' and 'b'");

  auto check = [&](const Coupling& c, const char* name, const std::string& detector, bool sigma_side) {
    if (c.empty()) return;
    for (const auto& l : c.labels) {
      if (is_detector(l)) {
        if (l != detector) throw ValidationError(std::string(name) + " may only involve detector " + detector);
        continue;
      }
      if (l.size() < 2 || l[0] != 's') throw LabelError(std::string(name) + " names unknown label '" + l + "'");
      const std::size_t site = std::stoul(l.substr(1));
      if (site >= h0.lattice().num_sites()) throw LabelError(std::string(name) + " acts outside the lattice");
      const bool in = std::find(sigma.begin(), sigma.end(), site) != sigma.end();
      if (in != sigma_side)
        throw ValidationError(std::string(name) + " must act on " + (sigma_side ? "Σ" : "the complement of Σ"));
    }
  };
  check(a_sigma, "H_a,Σ", "a", true);
  check(b_sigma, "H_b,Σ", "b", true);
  check(b_complement, "H_b,Σ̄", "b", false);
}

const Vector& Trajectory::at(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - t) <= time_eps * std::max(1.0, std::abs(t))) return states[k];
  throw ValidationError("time " + std::to_string(t) + " was not recorded");
}

Trajectory evolve_switched(const SwitchedHamiltonian& spec, const std::vector<DetectorSpec>& detectors,
                           const PureState& spins0, double t_end, std::size_t m, const HarvestOptions& options) {
  spec.validate(detectors);
  if (m == 0) throw ValidationError("harvesting needs m ≥ 1");
  if (t_end + time_eps < spec.t_beta) throw ValidationError("t_end must not precede t_beta");
  if (options.t_start > spec.t_alpha + time_eps) throw ValidationError("t_start must not follow t_alpha");
  const auto& lattice = spec.h0.lattice();
  if (!(spins0.space() == spin_space(lattice))) throw LabelError("initial spin state must live on the lattice spins");

  std::size_t da = 1, db = 1;
  for (const auto& d : detectors) (d.label == "a" ? da : db) = d.dim;
  Stepper step;
  step.space = spin_space(lattice).concat(HilbertFactorization({{"a", da}, {"b", db}}));
  check_dim_cap(step.space.total_dim(), options.dim_cap, "harvesting");
  step.spins = spin_space(lattice).labels();
  step.h0 = spec.h0.matrix(options.dim_cap);

  Trajectory traj;
  traj.space = step.space;
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(step.space.total_dim()));
  // |ψ⟩ ⊗ |0⟩_a ⊗ |0⟩_b
  for (Eigen::Index i = 0; i < spins0.amplitudes().size(); ++i)
    psi(i * static_cast<Eigen::Index>(da * db)) = spins0.amplitudes()(i);

  std::vector<double> records = options.record_times;
  records.push_back(t_end);
  for (double r : records)
    if (r > spec.t_alpha + time_eps && r < spec.t_beta - time_eps)
      throw ValidationError("record times inside the window are not supported");
  std::sort(records.begin(), records.end());

  const double T = spec.T();
  const double width = T / static_cast<double>(m);
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(psi.norm() - 1.0));
  };
  std::size_t next_record = 0;
  auto flush_records = [&](double now) {
    while (next_record < records.size() && records[next_record] <= now + time_eps) record(records[next_record++]);
  };

  // Outside the window: midpoint-sampled exact exponentials of the full H.
  auto outside = [&](double from, double to) {
    if (to <= from + time_eps) return;
    const auto slices = static_cast<std::size_t>(std::ceil((to - from) / width - 1e-9));
    const double tau = (to - from) / static_cast<double>(std::max<std::size_t>(slices, 1));
    for (std::size_t k = 0; k < std::max<std::size_t>(slices, 1); ++k) {
      const double t0 = from + static_cast<double>(k) * tau;
      step.apply_full(psi, spec, t0 + tau / 2, tau);
    }
  };

  double now = options.t_start;
  flush_records(now);
  for (double r : records)
    if (r <= spec.t_alpha + time_eps && r > now) {
      outside(now, r);
      now = r;
      flush_records(now);
    }
  outside(now, spec.t_alpha);

  const double tau = T / (2.0 * static_cast<double>(m));
  for (std::size_t l = 1; l <= m; ++l) {
    const double tl = spec.t_alpha + static_cast<double>(l) * T / static_cast<double>(m) - T / (2.0 * static_cast<double>(m));
    step.apply_h0(psi, tau);
    step.apply_coupling(psi, spec.b_complement, tl, tau);
    step.apply_coupling(psi, spec.a_sigma, tl, tau);
    step.apply_coupling(psi, spec.a_sigma, tl, tau);
    step.apply_coupling(psi, spec.b_complement, tl, tau);
    step.apply_h0(psi, tau);
  }
  now = spec.t_beta;
  flush_records(now);
  for (std::size_t k = next_record; k < records.size(); ++k) {
    outside(now, records[k]);
    now = records[k];
    flush_records(now);
  }
  return traj;
}

double detector_mutual_information(const Trajectory& trajectory, double t, double t_beta) {
  if (t + time_eps < t_beta) throw ValidationError("detector mutual information is only claimed for t ≥ t_beta");
  TrackedState state(trajectory.space, trajectory.at(t) / trajectory.at(t).norm());
  return state.mutual_information({"a"}, {"b"});
}

AreaLawParams harvesting_params(const SwitchedHamiltonian& spec, double c_sie) {
  auto split = make_region_split(spec.h0.lattice(), spec.sigma, spec.h0.range());
  return AreaLawParams::from_sie(c_sie, spec.h0, split, spec.T());
}

double harvesting_bound(const AreaLawParams& p) { return area_law_bound(p); }

}  // namespace arealaw
