#include "arealaw/core/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/tolerances.hpp"

namespace arealaw {

Matrix hermitian_exponential(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw DimensionError("exponential of a non-square matrix");
  if (relative_distance(h, h.adjoint()) > tol::hermitian)
    throw ValidationError("hermitian_exponential needs a Hermitian generator");
  if (t == 0.0) return Matrix::Identity(h.rows(), h.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  if (eig.info() != Eigen::Success) throw ValidationError("eigensolver failed");
  const Vector phases = (eig.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

UnitaryOperator hermitian_exponential(const HermitianOperator& h, double t) {
  return UnitaryOperator(h.space(), hermitian_exponential(h.matrix(), t));
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& hermitian) {
  if (hermitian.size() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw ValidationError("eigensolver failed");
  return eig.eigenvalues();
}

double operator_norm(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  return hermitian_eigenvalues(hermitian).cwiseAbs().maxCoeff();
}

double operator_norm(const HermitianOperator& h) { return operator_norm(h.matrix()); }

}  // namespace arealaw
