#include "arealaw/experiment/tracked_state.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/tolerances.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::vector<std::string> rest_labels(const HilbertFactorization& space, const std::vector<std::string>& labels) {
  return space.without(labels).labels();
}

}  // namespace

TrackedState::TrackedState(HilbertFactorization space, Matrix psi) : space_(std::move(space)), data_(std::move(psi)) {
  if (data_.rows() != idx(space_.total_dim())) throw DimensionError("Ψ rows do not match the factorization");
  if (data_.cols() < 1) throw DimensionError("Ψ needs at least one column");
  if (std::abs(data_.squaredNorm() - 1.0) > tol::trace) throw ValidationError("ΨΨ† must have unit trace");
}

TrackedState TrackedState::from_pure(const PureState& psi) { return TrackedState(psi.space(), psi.amplitudes()); }

TrackedState TrackedState::from_density(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = eig.eigenvalues().size(); k-- > 0;)
    if (eig.eigenvalues()(k) > tol::eigenvalue_clip) keep.push_back(k);
  Matrix psi(rho.matrix().rows(), idx(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    psi.col(idx(j)) = eig.eigenvectors().col(keep[j]) * std::sqrt(eig.eigenvalues()(keep[j]));
  psi /= std::sqrt(psi.squaredNorm());
  return TrackedState(rho.space(), std::move(psi));
}

void TrackedState::apply_unitary(const std::vector<std::string>& targets, const Matrix& u) {
  std::vector<Factor> outputs;
  for (const auto& t : targets) outputs.push_back({t, space_.dim(t)});
  apply_map(targets, u, outputs);
}

void TrackedState::apply_map(const std::vector<std::string>& targets, const Matrix& v, const std::vector<Factor>& outputs) {
  auto left = apply_on_rows(space_, data_, targets, v, outputs);
  if (!dense_) {
    space_ = std::move(left.space);
    data_ = std::move(left.rows);
    return;
  }
  Matrix half = left.rows.adjoint();
  auto right = apply_on_rows(space_, half, targets, v, outputs);
  space_ = std::move(left.space);
  data_ = right.rows.adjoint();
}

void TrackedState::apply_channel(const std::vector<std::string>& targets, const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
  if (kraus.size() == 1) {
    apply_unitary(targets, kraus.front());
    return;
  }
  if (!dense_) {
    Matrix stacked(data_.rows(), data_.cols() * idx(kraus.size()));
    for (std::size_t k = 0; k < kraus.size(); ++k)
      stacked.middleCols(idx(k) * data_.cols(), data_.cols()) = apply_on_rows(space_, data_, targets, kraus[k]);
    data_ = std::move(stacked);
    maybe_densify();
    return;
  }
  Matrix out = Matrix::Zero(data_.rows(), data_.cols());
  for (const auto& k : kraus) {
    Matrix left = apply_on_rows(space_, data_, targets, k);
    Matrix half = left.adjoint();
    out += apply_on_rows(space_, half, targets, k).adjoint();
  }
  data_ = std::move(out);
}

void TrackedState::append(const PureState& factor_state) {
  HilbertFactorization space = space_.concat(factor_state.space());
  const Vector& v = factor_state.amplitudes();
  if (dense_)
    data_ = Eigen::kroneckerProduct(data_, (v * v.adjoint()).eval()).eval();
  else
    data_ = Eigen::kroneckerProduct(data_, v).eval();
  space_ = std::move(space);
}

void TrackedState::trace_out(const std::vector<std::string>& labels) {
  if (labels.empty()) return;
  for (const auto& l : labels) space_.position(l);  // throws on unknown labels
  auto rest = rest_labels(space_, labels);
  if (dense_) {
    auto reduced = partial_trace_matrix(data_, space_, rest);
    space_ = std::move(reduced.space);
    data_ = std::move(reduced.rows);
    return;
  }
  std::vector<std::string> order = rest;
  order.insert(order.end(), labels.begin(), labels.end());
  Matrix p = permute_rows(data_, space_, order);
  const auto dl = idx(space_.dim_of(labels));
  const auto dr = p.rows() / dl;
  Matrix moved(dr, p.cols() * dl);
  for (Eigen::Index c = 0; c < p.cols(); ++c)
    moved.middleCols(c * dl, dl) = Eigen::Map<const Matrix>(p.col(c).data(), dl, dr).transpose();
  space_ = space_.subset(rest);
  data_ = std::move(moved);
  maybe_densify();
}

void TrackedState::maybe_densify() {
  if (dense_ || 2 * data_.cols() <= data_.rows()) return;
  data_ = (data_ * data_.adjoint()).eval();
  dense_ = true;
}

Matrix TrackedState::regroup(const std::vector<std::string>& labels) const {
  auto rest = rest_labels(space_, labels);
  std::vector<std::string> order = labels;
  order.insert(order.end(), rest.begin(), rest.end());
  Matrix p = permute_rows(data_, space_, order);
  const auto dl = idx(space_.dim_of(labels));
  const auto dr = p.rows() / dl;
  Matrix m(dl, dr * p.cols());
  for (Eigen::Index c = 0; c < p.cols(); ++c)
    m.middleCols(c * dr, dr) = Eigen::Map<const Matrix>(p.col(c).data(), dr, dl).transpose();
  return m;
}

Matrix TrackedState::marginal_matrix(const std::vector<std::string>& labels) const {
  if (labels.empty()) return Matrix::Constant(1, 1, trace());
  if (!dense_) {
    Matrix m = regroup(labels);
    return m * m.adjoint();
  }
  auto reduced = partial_trace_matrix(data_, space_, labels);
  return permute_operator(reduced.rows, reduced.space, labels);
}

double TrackedState::entropy(const std::vector<std::string>& labels) const {
  if (labels.empty()) return 0.0;
  if (!dense_) {
    Matrix m = regroup(labels);
    Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
    return von_neumann_entropy(gram);
  }
  return von_neumann_entropy(partial_trace_matrix(data_, space_, labels).rows);
}

double TrackedState::mutual_information(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
  std::vector<std::string> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return entropy(a) + entropy(b) - entropy(both);
}

Eigen::VectorXd TrackedState::basis_probabilities(const std::vector<std::string>& labels) const {
  if (labels.empty()) return Eigen::VectorXd::Constant(1, trace());
  if (!dense_) return regroup(labels).rowwise().squaredNorm();
  // The marginal's diagonal is the marginal of the diagonal.
  auto rest = rest_labels(space_, labels);
  std::vector<std::string> order = labels;
  order.insert(order.end(), rest.begin(), rest.end());
  const auto old_index = reorder_indices(space_, order);
  const auto dr = idx(space_.dim_of(rest));
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(idx(space_.dim_of(labels)));
  for (std::size_t i = 0; i < old_index.size(); ++i)
    probs(idx(i) / dr) += data_(old_index[i], old_index[i]).real();
  return probs;
}

double TrackedState::trace() const { return dense_ ? data_.trace().real() : data_.squaredNorm(); }

DensityMatrix TrackedState::density() const {
  return DensityMatrix::unchecked(space_, dense_ ? data_ : Matrix(data_ * data_.adjoint()));
}

}  // namespace arealaw
