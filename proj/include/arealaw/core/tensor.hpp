#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "arealaw/core/factorization.hpp"

namespace arealaw {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// For every basis index of `space` reordered to `order`, the index in the original order.
std::vector<Eigen::Index> reorder_indices(const HilbertFactorization& space,
                                          const std::vector<std::string>& order);

/// Rows of `rows` are indexed by `space`; returns them reindexed by `order`.
Matrix permute_rows(const Matrix& rows, const HilbertFactorization& space,
                    const std::vector<std::string>& order);

/// Square operator on `space` rewritten in the basis ordered by `order`.
Matrix permute_operator(const Matrix& op, const HilbertFactorization& space,
                        const std::vector<std::string>& order);

/// Result of acting with a local map on the row index of a matrix.
struct RowMapResult {
  HilbertFactorization space;
  Matrix rows;
};

/// Applies `op` to the factors `targets` of every column of `rows`.
///
/// `op` maps the joint target space (in the order of `targets`) to the joint
/// space of `outputs`. Output factors whose label matches a target keep that
/// target's position; other output labels are appended at the end. Targets
/// absent from `outputs` disappear from the factorization.
RowMapResult apply_on_rows(const HilbertFactorization& space, const Matrix& rows,
                           const std::vector<std::string>& targets, const Matrix& op,
                           const std::vector<Factor>& outputs);

/// Same as above with outputs identical to the targets (square `op`).
Matrix apply_on_rows(const HilbertFactorization& space, const Matrix& rows,
                     const std::vector<std::string>& targets, const Matrix& op);

/// op ⊗ identity on `space`, with `op` acting on `targets` in the given order.
Matrix embed_operator(const Matrix& op, const std::vector<std::string>& targets,
                      const HilbertFactorization& space);

/// Partial trace of a square operator, keeping `keep` in the original relative order.
RowMapResult partial_trace_matrix(const Matrix& op, const HilbertFactorization& space,
                                  const std::vector<std::string>& keep);

}  // namespace arealaw
