#include "arealaw/process/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/parallel.hpp"
#include "arealaw/core/random.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// One party's probe: a unitary on X_O ⊗ A' ⊗ E whose first d_I columns are
// the dilating isometry. Rows are ordered (out, ancilla, environment).
struct PartyProbe {
  PartyDims dims;
  std::size_t ancilla = 1;
  std::size_t env = 1;
  Matrix u;

  std::size_t size() const { return dims.out * ancilla * env; }

  ChoiMatrix choi() const {
    std::vector<Matrix> kraus;
    const std::size_t out = dims.out * ancilla;
    for (std::size_t e = 0; e < env; ++e) {
      Matrix k(idx(out), idx(dims.in));
      for (std::size_t r = 0; r < out; ++r) k.row(idx(r)) = u.block(idx(r * env + e), 0, 1, idx(dims.in));
      kraus.push_back(std::move(k));
    }
    return choi_from_kraus(dims.in, out, kraus);
  }
};

struct Candidate {
  std::vector<PartyProbe> probes;
  std::string origin;
};

ProbingScheme to_scheme(const std::vector<PartyProbe>& probes) {
  ProbingScheme s;
  for (const auto& p : probes) {
    s.maps.push_back(p.choi());
    s.ancilla_dims.push_back(p.ancilla);
  }
  return s;
}

// Unitary whose leading columns are `v` (orthonormal columns).
Matrix complete_unitary(const Matrix& v, Rng& rng) {
  const Eigen::Index n = v.rows();
  Matrix fill(n, n - v.cols());
  for (Eigen::Index i = 0; i < fill.rows(); ++i)
    for (Eigen::Index j = 0; j < fill.cols(); ++j) fill(i, j) = rng.complex_normal();
  fill -= v * (v.adjoint() * fill);
  Matrix u(n, n);
  u.leftCols(v.cols()) = v;
  if (fill.cols() > 0) {
    Eigen::HouseholderQR<Matrix> qr(fill);
    Matrix q = qr.householderQ() * Matrix::Identity(n, fill.cols());
    q -= v * (v.adjoint() * q);  // re-orthogonalize against v
    Eigen::HouseholderQR<Matrix> qr2(q);
    u.rightCols(fill.cols()) = qr2.householderQ() * Matrix::Identity(n, fill.cols());
  }
  return u;
}

Matrix hermitian_from(const std::vector<double>& theta, std::size_t offset, std::size_t n) {
  Matrix h = Matrix::Zero(idx(n), idx(n));
  std::size_t p = offset;
  for (std::size_t i = 0; i < n; ++i) h(idx(i), idx(i)) = theta[p++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex z(theta[p], theta[p + 1]);
      p += 2;
      h(idx(i), idx(j)) = z;
      h(idx(j), idx(i)) = std::conj(z);
    }
  return h;
}

class Objective {
 public:
  Objective(const ProcessMatrix& w, std::vector<std::size_t> group) : w_(w), group_(std::move(group)) {}

  double operator()(const std::vector<PartyProbe>& probes) const {
    return ancilla_mutual_information(w_, to_scheme(probes), group_);
  }

  // Probes moved along exp(iH(θ)) per party.
  std::vector<PartyProbe> moved(const std::vector<PartyProbe>& probes, const std::vector<double>& theta) const {
    auto out = probes;
    std::size_t offset = 0;
    for (auto& p : out) {
      const std::size_t n = p.size();
      Matrix h = hermitian_from(theta, offset, n);
      offset += n * n;
      if (h.norm() > 0.0) p.u = hermitian_exponential(h, -1.0) * p.u;
    }
    return out;
  }

 private:
  const ProcessMatrix& w_;
  std::vector<std::size_t> group_;
};

struct AscentResult {
  double value = 0.0;
  std::vector<PartyProbe> probes;
  std::size_t iterations = 0;
  bool converged = false;
};

AscentResult ascend(const Objective& f, std::vector<PartyProbe> probes, const CorrelationBudget& budget, double cap) {
  std::size_t params = 0;
  for (const auto& p : probes) params += p.size() * p.size();
  AscentResult r{f(probes), probes, 0, false};
  double step = 0.5;
  constexpr double fd = 1e-6;
  for (; r.iterations < budget.iterations; ++r.iterations) {
    if (r.value >= cap - budget.tolerance) {
      r.converged = true;
      break;
    }
    std::vector<double> grad(params, 0.0), theta(params, 0.0);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < params; ++k) {
      theta[k] = fd;
      grad[k] = (f(f.moved(r.probes, theta)) - r.value) / fd;
      theta[k] = 0.0;
      norm2 += grad[k] * grad[k];
    }
    if (norm2 < 1e-16) {
      r.converged = true;
      break;
    }
    // Armijo backtracking along the gradient, starting from twice the last accepted step.
    double alpha = std::min(step * 2.0, 4.0) / std::sqrt(norm2);
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries, alpha *= 0.5) {
      for (std::size_t k = 0; k < params; ++k) theta[k] = alpha * grad[k];
      auto candidate = f.moved(r.probes, theta);
      const double value = f(candidate);
      if (value >= r.value + 1e-4 * alpha * norm2) {
        const double gain = value - r.value;
        r.value = value;
        r.probes = std::move(candidate);
        step = alpha * std::sqrt(norm2);
        accepted = true;
        if (gain < budget.tolerance) r.converged = true;
        break;
      }
    }
    if (!accepted || r.converged) {
      r.converged = true;
      break;
    }
  }
  return r;
}

// Structured starting points: the teleport probe and capture-and-prepare |j⟩ probes.
std::vector<Candidate> structured_candidates(const std::vector<PartyDims>& parties, const std::vector<std::size_t>& anc,
                                             std::size_t env, Rng& rng) {
  std::vector<Candidate> out;
  const std::size_t n = parties.size();

  auto embed = [&](std::size_t k, const Matrix& v_out_anc) {
    // v_out_anc rows (out, ancilla); place it on environment state 0.
    PartyProbe probe{parties[k], anc[k], env, {}};
    Matrix v = Matrix::Zero(idx(probe.size()), idx(parties[k].in));
    for (Eigen::Index r = 0; r < v_out_anc.rows(); ++r) v.row(r * idx(env)) = v_out_anc.row(r);
    probe.u = complete_unitary(v, rng);
    return probe;
  };

  // Teleport probe on every party where the ancilla is large enough.
  bool teleport_fits = true;
  for (std::size_t k = 0; k < n; ++k) teleport_fits &= anc[k] == parties[k].total();
  if (teleport_fits) {
    Candidate c{{}, "teleport"};
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = parties[k];
      Matrix v = Matrix::Zero(idx(p.out * anc[k]), idx(p.in));
      const double amp = 1.0 / std::sqrt(static_cast<double>(p.out));
      for (std::size_t i = 0; i < p.in; ++i)
        for (std::size_t j = 0; j < p.out; ++j) v(idx((j * p.in + i) * p.out + j), idx(i)) = amp;
      c.probes.push_back(embed(k, v));
    }
    out.push_back(std::move(c));
  }

  // Capture the input into the ancilla and prepare |j⟩ on the output.
  bool capture_fits = true;
  for (std::size_t k = 0; k < n; ++k) capture_fits &= anc[k] >= parties[k].in;
  if (capture_fits) {
    std::size_t max_out = 1;
    for (const auto& p : parties) max_out = std::max(max_out, p.out);
    for (std::size_t j = 0; j < max_out; ++j) {
      Candidate c{{}, "capture-prepare-" + std::to_string(j)};
      for (std::size_t k = 0; k < n; ++k) {
        const auto& p = parties[k];
        Matrix v = Matrix::Zero(idx(p.out * anc[k]), idx(p.in));
        const std::size_t jj = j % p.out;
        for (std::size_t i = 0; i < p.in; ++i) v(idx(jj * anc[k] + i), idx(i)) = 1.0;
        c.probes.push_back(embed(k, v));
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

double correlation_cap(const ProcessMatrix& w, const std::vector<std::size_t>& group) {
  double left = 1.0, right = 1.0;
  for (std::size_t k = 0; k < w.parties().size(); ++k) {
    const bool in = std::find(group.begin(), group.end(), k) != group.end();
    (in ? left : right) *= static_cast<double>(w.parties()[k].total());
  }
  return 2.0 * std::log2(std::min(left, right));
}

CorrelationEstimate estimate_C_W(const ProcessMatrix& w, const std::vector<std::size_t>& group,
                                 const CorrelationBudget& budget) {
  const auto& parties = w.parties();
  for (std::size_t g : group)
    if (g >= parties.size()) throw DimensionError("bipartition names an unknown party");
  if (group.empty() || group.size() >= parties.size()) throw DimensionError("bipartition needs parties on both sides");

  CorrelationEstimate est;
  est.cap = correlation_cap(w, group);
  Objective f(w, group);

  std::size_t top = 1;
  for (const auto& p : parties) top = std::max(top, p.total());
  if (budget.max_ancilla_dim > 0) top = std::min(top, budget.max_ancilla_dim);

  double best = -1.0;
  bool any_incomplete = false;
  for (std::size_t a = 1; a <= top; ++a) {
    std::vector<std::size_t> anc;
    for (const auto& p : parties) anc.push_back(std::min(a, p.total()));

    Rng seed_rng(mix_seed(budget.seed, a, 0x5EED));
    auto starts = structured_candidates(parties, anc, budget.environment_dim, seed_rng);
    for (std::size_t r = 0; r < budget.restarts; ++r) {
      Rng rng(mix_seed(budget.seed, a, r));
      Candidate c{{}, "haar-" + std::to_string(r)};
      for (std::size_t k = 0; k < parties.size(); ++k) {
        PartyProbe probe{parties[k], anc[k], budget.environment_dim, {}};
        probe.u = random_unitary(probe.size(), rng);
        c.probes.push_back(std::move(probe));
      }
      starts.push_back(std::move(c));
    }

    std::vector<AscentResult> results(starts.size());
    parallel_for(starts.size(), budget.jobs, [&](std::size_t i) { results[i] = ascend(f, starts[i].probes, budget, est.cap); });

    double dim_best = -1.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& res = results[i];
      std::ostringstream line;
      line << "ancilla=" << a << " start=" << starts[i].origin << " value=" << res.value << " iterations=" << res.iterations
           << (res.converged ? "" : " (budget exhausted)");
      est.trace.push_back(line.str());
      dim_best = std::max(dim_best, res.value);
      // Ties keep the earliest start, which makes the merge independent of thread timing.
      if (res.value > best + 1e-12) {
        best = res.value;
        est.scheme = to_scheme(res.probes);
        any_incomplete = !res.converged;
      }
    }
    est.per_dimension.emplace_back(a, std::min(dim_best, est.cap));
    if (best >= est.cap - budget.tolerance) break;
  }

  if (best > est.cap + 1e-9) {
    est.note = "optimizer exceeded the rank cap by " + std::to_string(best - est.cap) + "; clamped";
  } else {
    est.note = "lower bound over ancilla dimensions up to " + std::to_string(top) +
               "; attainment of the supremum at this dimension is not claimed";
  }
  est.value = std::min(std::max(best, 0.0), est.cap);
  est.complete = !any_incomplete || est.value >= est.cap - budget.tolerance;
  return est;
}

}  // namespace arealaw
