#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "arealaw/core/states.hpp"

namespace arealaw {

using LabelSet = std::vector<std::string>;
using Bipartition = std::pair<LabelSet, LabelSet>;

/// −Σ λ log₂ λ over a spectrum; eigenvalues below the clip count as zero.
double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues);

/// Von Neumann entropy in bits. Throws ValidationError if an eigenvalue is
/// more negative than the PSD tolerance.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& rho);

/// I(A:B) = S(A) + S(B) − S(AB). The partition must cover every label exactly once.
double quantum_mutual_information(const DensityMatrix& rho, const Bipartition& partition);

/// I(A:B) of the marginal on A ∪ B; the remaining labels are traced out.
double marginal_mutual_information(const DensityMatrix& rho, const LabelSet& a, const LabelSet& b);

/// Shannon entropy in bits.
double shannon_entropy(std::span<const double> probabilities);

/// Classical mutual information between the first `first_arity` entries of
/// every outcome tuple and the remaining entries.
double classical_mutual_information(const ProbabilityDistribution& joint, std::size_t first_arity);

/// Pair-labeled joint distribution, i.e. first_arity = 1 on 2-tuples.
double classical_mutual_information(const ProbabilityDistribution& joint);

struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;  // descending, nonzero
  Matrix left;                   // columns are |l_k⟩
  Matrix right;                  // columns are |r_k⟩
  HilbertFactorization left_space;
  HilbertFactorization right_space;

  std::size_t rank() const { return static_cast<std::size_t>(coefficients.size()); }
  /// Σ λ_k |l_k⟩|r_k⟩ in the ordering left_space ⊗ right_space.
  Vector reconstruct() const;
};

/// Schmidt decomposition across (left, rest); coefficients below 1e−6 (squared weight
/// below the entropy clip) are dropped.
SchmidtDecomposition schmidt_decomposition(const PureState& psi, const LabelSet& left);

}  // namespace arealaw
