#include "arealaw/core/states.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/tolerances.hpp"

namespace arealaw {

namespace {

void require_square(const HilbertFactorization& space, const Matrix& m, const char* what) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  if (m.rows() != n || m.cols() != n)
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", space has dimension " + std::to_string(n));
}

void require_hermitian(const Matrix& m, const char* what) {
  const double r = relative_distance(m, m.adjoint());
  if (r > tol::hermitian)
    throw ValidationError(std::string(what) + " is not Hermitian (residual " + std::to_string(r) + ")");
}

}  // namespace

double relative_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

DensityMatrix::DensityMatrix(HilbertFactorization space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(space_, matrix_, "density matrix");
  require_hermitian(matrix_, "density matrix");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::trace)
    throw ValidationError("density matrix trace is " + std::to_string(tr));
  const double min_eig = hermitian_eigenvalues(matrix_).minCoeff();
  if (min_eig < -tol::psd)
    throw ValidationError("density matrix has eigenvalue " + std::to_string(min_eig));
}

DensityMatrix DensityMatrix::unchecked(HilbertFactorization space, Matrix matrix) {
  require_square(space, matrix, "density matrix");
  DensityMatrix out;
  out.space_ = std::move(space);
  out.matrix_ = std::move(matrix);
  return out;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return unchecked(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(HilbertFactorization space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return unchecked(std::move(space), Matrix::Identity(n, n) / static_cast<double>(n));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

PureState::PureState(HilbertFactorization space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim())
    throw DimensionError("state vector length does not match the factorization");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::trace)
    throw ValidationError("state vector norm is " + std::to_string(norm));
}

PureState PureState::basis(HilbertFactorization space, std::size_t index) {
  if (index >= space.total_dim()) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(space), std::move(v));
}

PureState PureState::normalized(HilbertFactorization space, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw ValidationError("cannot normalize the zero vector");
  return PureState(std::move(space), amplitudes / norm);
}

HermitianOperator::HermitianOperator(HilbertFactorization space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(space_, matrix_, "Hermitian operator");
  require_hermitian(matrix_, "operator");
}

HermitianOperator HermitianOperator::zero(HilbertFactorization space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return HermitianOperator(std::move(space), Matrix::Zero(n, n));
}

UnitaryOperator::UnitaryOperator(HilbertFactorization space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(space_, matrix_, "unitary operator");
  const auto n = matrix_.rows();
  const double r = relative_distance(matrix_ * matrix_.adjoint(), Matrix::Identity(n, n));
  if (r > tol::unitary) throw ValidationError("operator is not unitary (residual " + std::to_string(r) + ")");
}

UnitaryOperator UnitaryOperator::identity(HilbertFactorization space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return UnitaryOperator(std::move(space), Matrix::Identity(n, n));
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
  double total = 0.0;
  for (const auto& [label, p] : entries_) {
    if (p < -tol::trace || p > 1.0 + tol::trace)
      throw ValidationError("probability out of range: " + std::to_string(p));
    total += p;
  }
  if (std::abs(total - 1.0) > tol::trace)
    throw ValidationError("probabilities sum to " + std::to_string(total));
}

double ProbabilityDistribution::probability(const Outcome& outcome) const {
  double p = 0.0;
  for (const auto& [label, q] : entries_)
    if (label == outcome) p += q;
  return p;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(a.space().concat(b.space()),
                                  Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(a.space().concat(b.space()),
                   Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval());
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(a.space().concat(b.space()),
                           Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(a.space().concat(b.space()),
                         Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  auto reduced = partial_trace_matrix(rho.matrix(), rho.space(), keep);
  return DensityMatrix::unchecked(std::move(reduced.space), std::move(reduced.rows));
}

}  // namespace arealaw
