#include "arealaw/core/tensor.hpp"

#include <algorithm>

#include "arealaw/core/errors.hpp"

namespace arealaw {

std::vector<Eigen::Index> reorder_indices(const HilbertFactorization& space,
                                          const std::vector<std::string>& order) {
  if (order.size() != space.size())
    throw LabelError("reordering must name every factor exactly once");
  const auto& factors = space.factors();
  const std::size_t k = factors.size();

  // Strides of the original ordering.
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * factors[i].dim;

  std::vector<std::size_t> pos(k), dims(k), seen(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    pos[j] = space.position(order[j]);
    if (seen[pos[j]]++) throw LabelError("reordering repeats '" + order[j] + "'");
    dims[j] = factors[pos[j]].dim;
  }

  const std::size_t total = space.total_dim();
  std::vector<Eigen::Index> map(total);
  std::vector<std::size_t> digit(k, 0);
  std::size_t old_index = 0;
  for (std::size_t n = 0; n < total; ++n) {
    map[n] = static_cast<Eigen::Index>(old_index);
    // Odometer over the new ordering, last factor fastest.
    for (std::size_t j = k; j-- > 0;) {
      ++digit[j];
      old_index += stride[pos[j]];
      if (digit[j] < dims[j]) break;
      old_index -= digit[j] * stride[pos[j]];
      digit[j] = 0;
    }
  }
  return map;
}

Matrix permute_rows(const Matrix& rows, const HilbertFactorization& space,
                    const std::vector<std::string>& order) {
  if (static_cast<std::size_t>(rows.rows()) != space.total_dim())
    throw DimensionError("row count does not match the factorization");
  const auto map = reorder_indices(space, order);
  Matrix out(rows.rows(), rows.cols());
  for (Eigen::Index n = 0; n < rows.rows(); ++n) out.row(n) = rows.row(map[n]);
  return out;
}

Matrix permute_operator(const Matrix& op, const HilbertFactorization& space,
                        const std::vector<std::string>& order) {
  if (static_cast<std::size_t>(op.rows()) != space.total_dim() || op.rows() != op.cols())
    throw DimensionError("operator does not match the factorization");
  const auto map = reorder_indices(space, order);
  const Eigen::Index n = op.rows();
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = op(map[i], map[j]);
  return out;
}

RowMapResult apply_on_rows(const HilbertFactorization& space, const Matrix& rows,
                           const std::vector<std::string>& targets, const Matrix& op,
                           const std::vector<Factor>& outputs) {
  const HilbertFactorization rest = space.without(targets);
  const std::size_t din = space.dim_of(targets);
  std::size_t dout = 1;
  for (const auto& f : outputs) dout *= f.dim;
  if (static_cast<std::size_t>(op.cols()) != din || static_cast<std::size_t>(op.rows()) != dout)
    throw DimensionError("local map has shape " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", expected " + std::to_string(dout) + "x" +
                         std::to_string(din));
  for (const auto& f : outputs)
    if (rest.contains(f.label)) throw LabelError("output label '" + f.label + "' collides");

  std::vector<std::string> order = rest.labels();
  order.insert(order.end(), targets.begin(), targets.end());
  const Matrix permuted = permute_rows(rows, space, order);

  const Eigen::Index nrest = static_cast<Eigen::Index>(rest.total_dim());
  const Eigen::Index in = static_cast<Eigen::Index>(din), out = static_cast<Eigen::Index>(dout);
  Matrix mapped(nrest * out, rows.cols());
  for (Eigen::Index r = 0; r < nrest; ++r)
    mapped.middleRows(r * out, out).noalias() = op * permuted.middleRows(r * in, in);

  const HilbertFactorization interim = rest.concat(HilbertFactorization(outputs));

  // Outputs reuse the positions of same-named targets; new labels go last.
  std::vector<std::string> final_order;
  for (const auto& f : space.factors()) {
    const bool is_target = std::find(targets.begin(), targets.end(), f.label) != targets.end();
    if (!is_target || interim.contains(f.label)) final_order.push_back(f.label);
  }
  for (const auto& f : outputs)
    if (!space.contains(f.label)) final_order.push_back(f.label);

  Matrix result = permute_rows(mapped, interim, final_order);
  return {interim.subset(final_order), std::move(result)};
}

Matrix apply_on_rows(const HilbertFactorization& space, const Matrix& rows,
                     const std::vector<std::string>& targets, const Matrix& op) {
  std::vector<Factor> outputs;
  outputs.reserve(targets.size());
  for (const auto& t : targets) outputs.push_back({t, space.dim(t)});
  return apply_on_rows(space, rows, targets, op, outputs).rows;
}

Matrix embed_operator(const Matrix& op, const std::vector<std::string>& targets,
                      const HilbertFactorization& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return apply_on_rows(space, Matrix::Identity(n, n), targets, op);
}

RowMapResult partial_trace_matrix(const Matrix& op, const HilbertFactorization& space,
                                  const std::vector<std::string>& keep) {
  if (static_cast<std::size_t>(op.rows()) != space.total_dim() || op.rows() != op.cols())
    throw DimensionError("operator does not match the factorization");
  std::vector<std::string> kept_in_order;
  for (const auto& f : space.factors())
    if (std::find(keep.begin(), keep.end(), f.label) != keep.end()) kept_in_order.push_back(f.label);
  for (const auto& k : keep) (void)space.position(k);

  const HilbertFactorization kept = space.subset(kept_in_order);
  const HilbertFactorization traced = space.without(kept_in_order);
  std::vector<std::string> order = kept_in_order;
  const auto traced_labels = traced.labels();
  order.insert(order.end(), traced_labels.begin(), traced_labels.end());
  const auto map = reorder_indices(space, order);

  const Eigen::Index dk = static_cast<Eigen::Index>(kept.total_dim());
  const Eigen::Index dt = static_cast<Eigen::Index>(traced.total_dim());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index j = 0; j < dk; ++j)
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += op(map[i * dt + t], map[j * dt + t]);
      out(i, j) = acc;
    }
  return {kept, std::move(out)};
}

}  // namespace arealaw
