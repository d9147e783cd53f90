#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arealaw/core/factorization.hpp"
#include "arealaw/core/tensor.hpp"

namespace arealaw {

class PureState;

/// Unit-trace positive semidefinite operator over a labeled factorization.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  DensityMatrix(HilbertFactorization space, Matrix matrix);

  /// Skips the (eigendecomposition-based) validation; for values produced by
  /// operations that preserve the invariants by construction.
  static DensityMatrix unchecked(HilbertFactorization space, Matrix matrix);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(HilbertFactorization space);

  const HilbertFactorization& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  double purity() const;

 private:
  DensityMatrix() = default;
  HilbertFactorization space_;
  Matrix matrix_;
};

/// Unit vector over a labeled factorization.
class PureState {
 public:
  PureState(HilbertFactorization space, Vector amplitudes);

  /// Computational basis vector with the given flat index.
  static PureState basis(HilbertFactorization space, std::size_t index);
  /// Normalizes `amplitudes` instead of rejecting them.
  static PureState normalized(HilbertFactorization space, Vector amplitudes);

  const HilbertFactorization& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  HilbertFactorization space_;
  Vector amplitudes_;
};

class HermitianOperator {
 public:
  HermitianOperator(HilbertFactorization space, Matrix matrix);
  static HermitianOperator zero(HilbertFactorization space);

  const HilbertFactorization& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  HilbertFactorization space_;
  Matrix matrix_;
};

class UnitaryOperator {
 public:
  UnitaryOperator(HilbertFactorization space, Matrix matrix);
  static UnitaryOperator identity(HilbertFactorization space);

  const HilbertFactorization& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  HilbertFactorization space_;
  Matrix matrix_;
};

using Outcome = std::vector<int>;

/// Finite distribution over outcome tuples.
class ProbabilityDistribution {
 public:
  using Entry = std::pair<Outcome, double>;

  ProbabilityDistribution() = default;
  explicit ProbabilityDistribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double probability(const Outcome& outcome) const;

 private:
  std::vector<Entry> entries_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Relative Frobenius distance ‖a − b‖ / max(1, ‖b‖).
double relative_distance(const Matrix& a, const Matrix& b);

}  // namespace arealaw
