#include "arealaw/process/choi.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "arealaw/core/errors.hpp"

namespace arealaw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

Matrix ChoiMatrix::block(std::size_t i, std::size_t j) const {
  return matrix.block(idx(i * out_dim), idx(j * out_dim), idx(out_dim), idx(out_dim));
}

ChoiMatrix choi_from_map(std::size_t in_dim, std::size_t out_dim, const LinearMap& map) {
  ChoiMatrix m{in_dim, out_dim, Matrix::Zero(idx(in_dim * out_dim), idx(in_dim * out_dim))};
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j) {
      Matrix unit = Matrix::Zero(idx(in_dim), idx(in_dim));
      unit(idx(i), idx(j)) = 1.0;
      Matrix out = map(unit);
      if (out.rows() != idx(out_dim) || out.cols() != idx(out_dim))
        throw DimensionError("map output does not have the declared dimension");
      m.matrix.block(idx(i * out_dim), idx(j * out_dim), idx(out_dim), idx(out_dim)) = out;
    }
  return m;
}

ChoiMatrix choi_from_kraus(std::size_t in_dim, std::size_t out_dim, const std::vector<Matrix>& kraus) {
  const auto n = idx(in_dim * out_dim);
  ChoiMatrix m{in_dim, out_dim, Matrix::Zero(n, n)};
  for (const auto& k : kraus) {
    if (k.rows() != idx(out_dim) || k.cols() != idx(in_dim)) throw DimensionError("Kraus operator has wrong shape");
    // vec with the input index most significant: v[i·d_out + o] = K(o, i).
    Vector v = Eigen::Map<const Vector>(k.data(), n);  // column-major data is exactly that order
    m.matrix.noalias() += v * v.adjoint();
  }
  return m;
}

ChoiMatrix choi_from_isometry(const Matrix& v) {
  return choi_from_kraus(static_cast<std::size_t>(v.cols()), static_cast<std::size_t>(v.rows()), {v});
}

Matrix map_from_choi(const ChoiMatrix& m, const Matrix& rho) {
  if (rho.rows() != idx(m.in_dim) || rho.cols() != idx(m.in_dim))
    throw DimensionError("state does not match the Choi input dimension");
  Matrix out = Matrix::Zero(idx(m.out_dim), idx(m.out_dim));
  for (std::size_t i = 0; i < m.in_dim; ++i)
    for (std::size_t j = 0; j < m.in_dim; ++j) {
      const Complex r = rho(idx(i), idx(j));
      if (r != Complex(0.0)) out += r * m.block(i, j);
    }
  return out;
}

std::vector<Matrix> kraus_from_choi(const ChoiMatrix& m, double clip) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix);
  const auto& values = eig.eigenvalues();
  const double top = values.size() ? std::max(values.maxCoeff(), 0.0) : 0.0;
  std::vector<Matrix> kraus;
  for (Eigen::Index k = values.size(); k-- > 0;) {
    if (values(k) <= clip * std::max(top, 1.0)) break;
    Vector v = eig.eigenvectors().col(k) * std::sqrt(values(k));
    // Fix the free phase: the largest-magnitude entry becomes real and positive.
    Eigen::Index top_entry = 0;
    v.cwiseAbs().maxCoeff(&top_entry);
    v *= std::conj(v(top_entry)) / std::abs(v(top_entry));
    kraus.emplace_back(Eigen::Map<const Matrix>(v.data(), idx(m.out_dim), idx(m.in_dim)));
  }
  return kraus;
}

Matrix trace_output(const ChoiMatrix& m) {
  Matrix t(idx(m.in_dim), idx(m.in_dim));
  for (std::size_t i = 0; i < m.in_dim; ++i)
    for (std::size_t j = 0; j < m.in_dim; ++j) t(idx(i), idx(j)) = m.block(i, j).trace();
  return t;
}

double cp_residual(const ChoiMatrix& m) {
  if (m.matrix.size() == 0) return 0.0;
  Matrix h = (m.matrix + m.matrix.adjoint()) / 2.0;
  double lo = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  double herm = (m.matrix - m.matrix.adjoint()).norm();
  return std::max(0.0, -lo) + herm;
}

double tp_residual(const ChoiMatrix& m) {
  return (trace_output(m) - Matrix::Identity(idx(m.in_dim), idx(m.in_dim))).norm();
}

ChoiMatrix identity_channel(std::size_t dim) {
  return choi_from_kraus(dim, dim, {Matrix::Identity(idx(dim), idx(dim))});
}

ChoiMatrix completely_depolarizing(std::size_t dim) {
  const auto n = idx(dim * dim);
  return {dim, dim, Matrix::Identity(n, n) / static_cast<double>(dim)};
}

}  // namespace arealaw
