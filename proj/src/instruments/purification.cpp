#include "arealaw/instruments/purification.hpp"

#include <algorithm>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/tensor.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

Matrix PurifiedInstrument::projector(std::size_t outcome) const {
  Matrix p = Matrix::Zero(idx(ancilla_dim), idx(ancilla_dim));
  const auto& b = outcomes.at(outcome);
  for (std::size_t k = 0; k < b.size; ++k) p(idx(b.start + k), idx(b.start + k)) = 1.0;
  return p;
}

std::size_t PurifiedInstrument::outcome_of(std::size_t ancilla_index) const {
  for (std::size_t a = 0; a < outcomes.size(); ++a)
    if (ancilla_index >= outcomes[a].start && ancilla_index < outcomes[a].start + outcomes[a].size) return a;
  throw DimensionError("ancilla index outside every outcome block");
}

PurifiedInstrument purify(const Instrument& ins) {
  auto report = validate_instrument(ins);
  if (!report.valid()) throw ValidationError("cannot purify an invalid instrument: " + report.message);

  PurifiedInstrument p;
  p.input_dim = ins.input_dim;
  p.output_dim = ins.output_dim;
  std::vector<std::vector<Matrix>> kraus;
  std::size_t anc = 0;
  for (const auto& b : ins.branches) {
    kraus.push_back(kraus_from_choi(b.choi));
    p.outcomes.push_back({anc, kraus.back().size()});
    p.labels.push_back(b.label);
    anc += kraus.back().size();
  }
  p.ancilla_dim = anc;
  p.isometry = Matrix::Zero(idx(p.output_dim * anc), idx(p.input_dim));
  for (std::size_t b = 0; b < kraus.size(); ++b)
    for (std::size_t k = 0; k < kraus[b].size(); ++k) {
      const std::size_t a = p.outcomes[b].start + k;
      for (std::size_t o = 0; o < p.output_dim; ++o) p.isometry.row(idx(o * anc + a)) = kraus[b][k].row(idx(o));
    }
  return p;
}

ChoiMatrix branch_from_purified(const PurifiedInstrument& p, std::size_t outcome) {
  const auto& block = p.outcomes.at(outcome);
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < block.size; ++k) {
    Matrix op(idx(p.output_dim), idx(p.input_dim));
    for (std::size_t o = 0; o < p.output_dim; ++o) op.row(idx(o)) = p.isometry.row(idx(o * p.ancilla_dim + block.start + k));
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) {
    const auto n = idx(p.input_dim * p.output_dim);
    return {p.input_dim, p.output_dim, Matrix::Zero(n, n)};
  }
  return choi_from_kraus(p.input_dim, p.output_dim, kraus);
}

DensityMatrix apply_purified(const DensityMatrix& rho, const PurifiedInstrument& p,
                             const std::vector<std::string>& targets, const std::string& ancilla_label) {
  const auto& space = rho.space();
  if (space.dim_of(targets) != p.input_dim) throw DimensionError("instrument input does not match its targets");
  std::vector<Factor> outputs;
  if (p.output_dim == p.input_dim) {
    for (const auto& t : targets) outputs.push_back({t, space.dim(t)});
  } else if (targets.size() == 1) {
    outputs.push_back({targets.front(), p.output_dim});
  } else {
    throw DimensionError("dimension-changing instruments must act on a single factor");
  }
  outputs.push_back({ancilla_label, p.ancilla_dim});
  auto left = apply_on_rows(space, rho.matrix(), targets, p.isometry, outputs);
  Matrix half = left.rows.adjoint();
  auto right = apply_on_rows(space, half, targets, p.isometry, outputs);
  return DensityMatrix::unchecked(left.space, right.rows.adjoint());
}

ProbabilityDistribution outcome_distribution_from_diagonal(const Eigen::VectorXd& diagonal,
                                                           const std::vector<const PurifiedInstrument*>& instruments) {
  std::size_t total = 1;
  for (const auto* p : instruments) total *= p->ancilla_dim;
  if (static_cast<std::size_t>(diagonal.size()) != total) throw DimensionError("diagonal does not match the ancillas");

  std::size_t joint_size = 1;
  for (const auto* p : instruments) joint_size *= p->outcomes.size();
  std::vector<double> joint(joint_size, 0.0);
  std::vector<std::size_t> digits(instruments.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = instruments.size(); k-- > 0;) {
      digits[k] = rest % instruments[k]->ancilla_dim;
      rest /= instruments[k]->ancilla_dim;
    }
    std::size_t key = 0;
    for (std::size_t k = 0; k < instruments.size(); ++k)
      key = key * instruments[k]->outcomes.size() + instruments[k]->outcome_of(digits[k]);
    joint[key] += diagonal(idx(flat));
  }

  std::vector<ProbabilityDistribution::Entry> entries;
  for (std::size_t key = 0; key < joint_size; ++key) {
    Outcome label(instruments.size());
    std::size_t rest = key;
    for (std::size_t k = instruments.size(); k-- > 0;) {
      label[k] = static_cast<int>(rest % instruments[k]->outcomes.size());
      rest /= instruments[k]->outcomes.size();
    }
    entries.emplace_back(std::move(label), std::max(joint[key], 0.0));
  }
  return ProbabilityDistribution(std::move(entries));
}

ProbabilityDistribution deferred_outcome_distribution(
    const DensityMatrix& state, const std::vector<std::pair<const PurifiedInstrument*, std::string>>& measured) {
  if (measured.empty()) return ProbabilityDistribution({{Outcome{}, 1.0}});
  std::vector<std::string> labels;
  std::vector<const PurifiedInstrument*> instruments;
  for (const auto& [p, label] : measured) {
    if (!state.space().contains(label)) throw LabelError("ancilla '" + label + "' is not part of the state");
    if (state.space().dim(label) != p->ancilla_dim) throw DimensionError("ancilla '" + label + "' has the wrong dimension");
    labels.push_back(label);
    instruments.push_back(p);
  }
  auto marginal = partial_trace_matrix(state.matrix(), state.space(), labels);
  // partial_trace_matrix keeps the original relative order; bring it to the requested one.
  Matrix ordered = permute_operator(marginal.rows, marginal.space, labels);
  return outcome_distribution_from_diagonal(ordered.diagonal().real(), instruments);
}

}  // namespace arealaw
