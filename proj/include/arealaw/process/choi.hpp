#pragma once

#include <functional>
#include <vector>

#include "arealaw/core/states.hpp"

namespace arealaw {

/// M = Σ_ij |i⟩⟨j| ⊗ 𝓜(|i⟩⟨j|) on in ⊗ out.
struct ChoiMatrix {
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  Matrix matrix;

  std::size_t dim() const { return in_dim * out_dim; }
  /// Block ⟨i|M|j⟩ on the output space, i.e. 𝓜(|i⟩⟨j|).
  Matrix block(std::size_t i, std::size_t j) const;
};

using LinearMap = std::function<Matrix(const Matrix&)>;

ChoiMatrix choi_from_map(std::size_t in_dim, std::size_t out_dim, const LinearMap& map);
ChoiMatrix choi_from_kraus(std::size_t in_dim, std::size_t out_dim, const std::vector<Matrix>& kraus);
/// Isometric (single-Kraus) map.
ChoiMatrix choi_from_isometry(const Matrix& v);

/// 𝓜(ρ) = tr_in(M (ρᵀ ⊗ I)).
Matrix map_from_choi(const ChoiMatrix& m, const Matrix& rho);

/// Kraus operators from the eigendecomposition of M; eigenvalues below `clip`
/// (relative to the largest) are dropped. Operators are ordered by decreasing weight.
std::vector<Matrix> kraus_from_choi(const ChoiMatrix& m, double clip = 1e-12);

/// tr_out M (an operator on the input space).
Matrix trace_output(const ChoiMatrix& m);
/// max(0, −λ_min(M)); zero iff CP.
double cp_residual(const ChoiMatrix& m);
/// ‖tr_out M − I‖_F; zero iff trace preserving.
double tp_residual(const ChoiMatrix& m);

ChoiMatrix identity_channel(std::size_t dim);
/// ρ ↦ tr(ρ) I/d.
ChoiMatrix completely_depolarizing(std::size_t dim);

}  // namespace arealaw
