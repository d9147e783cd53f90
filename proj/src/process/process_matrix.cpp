#include "arealaw/process/process_matrix.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/core/random.hpp"
#include "arealaw/core/tolerances.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::size_t total_dim(const std::vector<PartyDims>& parties) {
  std::size_t d = 1;
  for (const auto& p : parties) d *= p.total();
  return d;
}

std::string ancilla_label(std::size_t party) { return party_name(party) + "'"; }

}  // namespace

std::string party_name(std::size_t party) { return std::string(1, static_cast<char>('A' + party)); }

ProcessMatrix::ProcessMatrix(std::vector<PartyDims> parties, Matrix w) : parties_(std::move(parties)), w_(std::move(w)) {
  if (parties_.empty() || parties_.size() > 3) throw DimensionError("processes are supported for 1 to 3 parties");
  for (const auto& p : parties_)
    if (p.in == 0 || p.out == 0) throw DimensionError("party dimensions must be positive");
  const auto d = idx(total_dim(parties_));
  if (w_.rows() != d || w_.cols() != d) throw DimensionError("process matrix does not match the party dimensions");
}

double ProcessMatrix::expected_trace() const {
  double t = 1.0;
  for (const auto& p : parties_) t *= static_cast<double>(p.out);
  return t;
}

HilbertFactorization ProcessMatrix::space() const {
  std::vector<Factor> factors;
  for (std::size_t k = 0; k < parties_.size(); ++k) {
    factors.push_back({party_name(k) + "_I", parties_[k].in});
    factors.push_back({party_name(k) + "_O", parties_[k].out});
  }
  return HilbertFactorization(std::move(factors));
}

double probability_rule(const ProcessMatrix& w, const std::vector<ChoiMatrix>& branches) {
  if (branches.size() != w.parties().size()) throw DimensionError("one branch per party is required");
  Matrix joint = Matrix::Ones(1, 1);
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const auto& b = branches[k];
    if (b.in_dim != w.parties()[k].in || b.out_dim != w.parties()[k].out)
      throw DimensionError("branch dimensions do not match party " + party_name(k));
    joint = Eigen::kroneckerProduct(joint, b.matrix).eval();
  }
  // tr(K Wᵀ) = Σ_ij K_ij W_ij
  return joint.cwiseProduct(w.matrix()).sum().real();
}

double probability_rule(const ProcessMatrix& w, const ChoiMatrix& ma, const ChoiMatrix& mb) {
  return probability_rule(w, std::vector<ChoiMatrix>{ma, mb});
}

ProcessReport validate_process(const ProcessMatrix& w, std::uint64_t seed, std::size_t probes) {
  ProcessReport report;
  Matrix h = (w.matrix() + w.matrix().adjoint()) / 2.0;
  report.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  const double herm = (w.matrix() - w.matrix().adjoint()).norm();
  report.psd = report.min_eigenvalue >= -tol::psd && herm <= tol::hermitian * std::max(1.0, w.matrix().norm());
  report.trace = w.matrix().trace().real();
  report.expected_trace = w.expected_trace();
  report.trace_ok = std::abs(report.trace - report.expected_trace) <= tol::trace * report.expected_trace;

  // Random two-outcome instruments on every party, each dilated with a qubit environment.
  constexpr std::size_t outcomes = 2, env = 2;
  const std::size_t n = w.parties().size();
  for (std::size_t probe = 0; probe < probes; ++probe) {
    std::vector<std::vector<ChoiMatrix>> branches(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = w.parties()[k];
      Rng rng(mix_seed(seed, probe, k));
      Matrix v = random_isometry(p.in, p.out * outcomes * env, rng);
      for (std::size_t b = 0; b < outcomes; ++b) {
        std::vector<Matrix> kraus;
        for (std::size_t e = 0; e < env; ++e) {
          Matrix kop(idx(p.out), idx(p.in));
          for (std::size_t o = 0; o < p.out; ++o) kop.row(idx(o)) = v.row(idx((o * outcomes + b) * env + e));
          kraus.push_back(std::move(kop));
        }
        branches[k].push_back(choi_from_kraus(p.in, p.out, kraus));
      }
    }
    double total = 0.0;
    std::vector<std::size_t> pick(n, 0);
    for (std::size_t flat = 0; flat < static_cast<std::size_t>(std::pow(outcomes, n)); ++flat) {
      std::size_t rest = flat;
      std::vector<ChoiMatrix> chosen;
      for (std::size_t k = n; k-- > 0;) {
        pick[k] = rest % outcomes;
        rest /= outcomes;
      }
      for (std::size_t k = 0; k < n; ++k) chosen.push_back(branches[k][pick[k]]);
      const double p = probability_rule(w, chosen);
      report.range_residual = std::max({report.range_residual, -p, p - 1.0});
      total += p;
    }
    report.normalization_residual = std::max(report.normalization_residual, std::abs(total - 1.0));
  }
  report.probes = probes;
  report.normalization_ok = report.normalization_residual <= 1e-8 && report.range_residual <= 1e-8;
  return report;
}

ProcessMatrix process_from_state(const DensityMatrix& omega, std::size_t a_out, std::size_t b_out) {
  const auto& space = omega.space();
  if (space.size() != 2) throw DimensionError("state process needs a two-factor state (A_I, B_I)");
  const std::size_t ai = space.factors()[0].dim, bi = space.factors()[1].dim;
  HilbertFactorization layout({{"A_I", ai}, {"B_I", bi}, {"A_O", a_out}, {"B_O", b_out}});
  Matrix full = Eigen::kroneckerProduct(omega.matrix(), Matrix::Identity(idx(a_out * b_out), idx(a_out * b_out))).eval();
  Matrix w = permute_operator(full, layout, {"A_I", "A_O", "B_I", "B_O"});
  return ProcessMatrix({{ai, a_out}, {bi, b_out}}, std::move(w));
}

ProcessMatrix process_from_channel(const ChoiMatrix& channel) {
  if (cp_residual(channel) > tol::psd || tp_residual(channel) > tol::trace)
    throw ValidationError("channel process needs a CPTP channel");
  return ProcessMatrix({{1, channel.in_dim}, {channel.out_dim, 1}}, channel.matrix);
}

ProcessMatrix build_counterexample_W() {
  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  Matrix full = Eigen::kroneckerProduct(bell, p0).eval() + Eigen::kroneckerProduct(Matrix::Identity(4, 4) / 4.0, p1).eval();
  HilbertFactorization layout({{"A_I", 2}, {"B_I", 2}, {"A_O", 2}});
  Matrix w = permute_operator(full, layout, {"A_I", "A_O", "B_I"});
  return ProcessMatrix({{2, 2}, {2, 1}}, std::move(w));
}

ProcessMatrix random_causal_process(PartyDims a, PartyDims b, std::size_t memory, std::uint64_t seed) {
  // Comb: |ψ⟩ on A_I ⊗ M, then an isometry A_O ⊗ M → B_I ⊗ E with E traced.
  constexpr std::size_t env = 2;
  Rng rng(mix_seed(seed, 0xC0B));
  Vector psi = random_pure_state(HilbertFactorization({{"A_I", a.in}, {"M", memory}}), rng).amplitudes();
  Matrix v = random_isometry(a.out * memory, b.in * env, rng);

  std::vector<Matrix> kraus;
  for (std::size_t e = 0; e < env; ++e) {
    Matrix k = Matrix::Zero(idx(a.in * b.in), idx(a.out));
    for (std::size_t ai = 0; ai < a.in; ++ai)
      for (std::size_t bi = 0; bi < b.in; ++bi)
        for (std::size_t ao = 0; ao < a.out; ++ao)
          for (std::size_t m = 0; m < memory; ++m)
            k(idx(ai * b.in + bi), idx(ao)) += psi(idx(ai * memory + m)) * v(idx(bi * env + e), idx(ao * memory + m));
    kraus.push_back(std::move(k));
  }
  ChoiMatrix comb = choi_from_kraus(a.out, a.in * b.in, kraus);
  Matrix full = Eigen::kroneckerProduct(comb.matrix, Matrix::Identity(idx(b.out), idx(b.out))).eval();
  HilbertFactorization layout({{"A_O", a.out}, {"A_I", a.in}, {"B_I", b.in}, {"B_O", b.out}});
  Matrix w = permute_operator(full, layout, {"A_I", "A_O", "B_I", "B_O"});
  return ProcessMatrix({a, b}, std::move(w));
}

Matrix final_ancilla_matrix(const ProcessMatrix& w, const ProbingScheme& scheme) {
  const auto& parties = w.parties();
  if (scheme.maps.size() != parties.size() || scheme.ancilla_dims.size() != parties.size())
    throw DimensionError("probing scheme needs one map per party");

  // R lives on X_k ⊗ … ⊗ X_N ⊗ A'_1 ⊗ … ⊗ A'_{k−1}; every step contracts the leading party.
  Matrix r = w.matrix().transpose();
  for (std::size_t k = 0; k < parties.size(); ++k) {
    const auto& m = scheme.maps[k];
    const std::size_t dx = parties[k].total();
    const std::size_t a = scheme.ancilla_dims[k];
    if (m.in_dim != parties[k].in || m.out_dim != parties[k].out * a)
      throw DimensionError("probing map of party " + party_name(k) + " has wrong dimensions");
    const std::size_t rest = static_cast<std::size_t>(r.rows()) / dx;
    Matrix next = Matrix::Zero(idx(rest * a), idx(rest * a));
    for (std::size_t x = 0; x < dx; ++x)
      for (std::size_t y = 0; y < dx; ++y) {
        auto rb = r.block(idx(x * rest), idx(y * rest), idx(rest), idx(rest));
        auto mb = m.matrix.block(idx(y * a), idx(x * a), idx(a), idx(a));
        next.noalias() += Eigen::kroneckerProduct(rb, mb).eval();
      }
    r = std::move(next);
  }
  return r;
}

DensityMatrix final_ancilla_state(const ProcessMatrix& w, const ProbingScheme& scheme) {
  std::vector<Factor> factors;
  for (std::size_t k = 0; k < scheme.ancilla_dims.size(); ++k) factors.push_back({ancilla_label(k), scheme.ancilla_dims[k]});
  return DensityMatrix(HilbertFactorization(std::move(factors)), final_ancilla_matrix(w, scheme));
}

ProbingScheme teleport_scheme(const std::vector<PartyDims>& parties) {
  ProbingScheme scheme;
  for (const auto& p : parties) {
    // Rows ordered (X_O, A'_1 = copy of X_I, A'_2 = partner of X_O).
    Matrix v = Matrix::Zero(idx(p.out * p.in * p.out), idx(p.in));
    const double amp = 1.0 / std::sqrt(static_cast<double>(p.out));
    for (std::size_t i = 0; i < p.in; ++i)
      for (std::size_t k = 0; k < p.out; ++k) v(idx((k * p.in + i) * p.out + k), idx(i)) = amp;
    scheme.maps.push_back(choi_from_isometry(v));
    scheme.ancilla_dims.push_back(p.in * p.out);
  }
  return scheme;
}

ProbingScheme counterexample_scheme() {
  Matrix va = Matrix::Zero(4, 2);  // rows (A_O, A'_O)
  va(0, 0) = va(1, 1) = 1.0;
  return {{choi_from_isometry(va), choi_from_isometry(Matrix::Identity(2, 2))}, {2, 2}};
}

namespace {

double bipartite_information(const Matrix& rho, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& group,
                             const char* prefix) {
  std::vector<Factor> factors;
  LabelSet left, right;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::string label = std::string(prefix) + std::to_string(k);
    factors.push_back({label, dims[k]});
    bool in = std::find(group.begin(), group.end(), k) != group.end();
    (in ? left : right).push_back(label);
  }
  if (left.empty() || right.empty()) throw DimensionError("bipartition needs parties on both sides");
  HilbertFactorization space(std::move(factors));
  const double sa = von_neumann_entropy(partial_trace_matrix(rho, space, left).rows);
  const double sb = von_neumann_entropy(partial_trace_matrix(rho, space, right).rows);
  return sa + sb - von_neumann_entropy(rho);
}

}  // namespace

double ancilla_mutual_information(const ProcessMatrix& w, const ProbingScheme& scheme,
                                  const std::vector<std::size_t>& group) {
  Matrix rho = final_ancilla_matrix(w, scheme);
  return bipartite_information(rho, scheme.ancilla_dims, group, "a");
}

double process_mutual_information(const ProcessMatrix& w, const std::vector<std::size_t>& group) {
  std::vector<std::size_t> dims;
  for (const auto& p : w.parties()) dims.push_back(p.total());
  return bipartite_information(w.matrix() / w.matrix().trace(), dims, group, "x");
}

}  // namespace arealaw
