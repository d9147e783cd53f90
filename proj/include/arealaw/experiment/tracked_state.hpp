#pragma once

#include <string>
#include <vector>

#include "arealaw/core/states.hpp"

namespace arealaw {

/// State of the tracked factors of the experiment.
///
/// While the rank is small it is stored as ρ = ΨΨ†, the columns of Ψ indexing
/// an implicit environment that absorbs traced factors and Kraus branches.
/// Once the column count exceeds half the dimension it switches to a dense ρ
/// for good; both forms give identical reduced states.
class TrackedState {
 public:
  TrackedState(HilbertFactorization space, Matrix psi);
  static TrackedState from_pure(const PureState& psi);
  static TrackedState from_density(const DensityMatrix& rho);

  const HilbertFactorization& space() const { return space_; }
  bool is_dense() const { return dense_; }
  /// Number of environment columns (dimension when dense).
  std::size_t rank_bound() const { return static_cast<std::size_t>(data_.cols()); }

  void apply_unitary(const std::vector<std::string>& targets, const Matrix& u);
  /// Applies the isometry/operator `v` (targets → outputs); see apply_on_rows for the label rules.
  void apply_map(const std::vector<std::string>& targets, const Matrix& v, const std::vector<Factor>& outputs);
  /// ρ ↦ Σ_k K_k ρ K_k† on `targets` (square Kraus operators).
  void apply_channel(const std::vector<std::string>& targets, const std::vector<Matrix>& kraus);
  /// Appends a factor in the given pure state.
  void append(const PureState& factor_state);
  void trace_out(const std::vector<std::string>& labels);

  double entropy(const std::vector<std::string>& labels) const;
  double mutual_information(const std::vector<std::string>& a, const std::vector<std::string>& b) const;
  /// Diagonal of the marginal on `labels`, in the given order.
  Eigen::VectorXd basis_probabilities(const std::vector<std::string>& labels) const;
  double trace() const;

  /// Reduced density matrix on `labels`, in the given order.
  Matrix marginal_matrix(const std::vector<std::string>& labels) const;
  DensityMatrix density() const;

 private:
  // Ψ mode: rows regrouped as (labels) × (rest ⊗ environment).
  Matrix regroup(const std::vector<std::string>& labels) const;
  void maybe_densify();

  HilbertFactorization space_;
  Matrix data_;  // Ψ, or ρ when dense_
  bool dense_ = false;
};

}  // namespace arealaw
