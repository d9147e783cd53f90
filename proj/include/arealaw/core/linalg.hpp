#pragma once

#include <Eigen/Dense>

#include "arealaw/core/states.hpp"

namespace arealaw {

/// exp(−i t h) through the eigendecomposition of h.
UnitaryOperator hermitian_exponential(const HermitianOperator& h, double t);

/// Same on a bare matrix; `h` must be Hermitian.
Matrix hermitian_exponential(const Matrix& h, double t);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianOperator& h);
double operator_norm(const Matrix& hermitian);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& hermitian);

}  // namespace arealaw
