#include "arealaw/instruments/templates.hpp"

#include <cmath>
#include <numbers>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/random.hpp"

namespace arealaw::instruments {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

Instrument rank_one_measurement(const Matrix& basis) {
  const auto d = static_cast<std::size_t>(basis.rows());
  Instrument ins{d, d, {}};
  for (std::size_t a = 0; a < d; ++a) {
    Matrix p = basis.col(idx(a)) * basis.col(idx(a)).adjoint();
    ins.branches.push_back({std::to_string(a), choi_from_kraus(d, d, {p})});
  }
  return ins;
}

void require_dim(std::size_t d) {
  if (d < 1) throw ValidationError("instrument dimension must be positive");
}

}  // namespace

Instrument projective_z(std::size_t d) {
  require_dim(d);
  return rank_one_measurement(Matrix::Identity(idx(d), idx(d)));
}

Instrument projective_x(std::size_t d) {
  require_dim(d);
  Matrix f(idx(d), idx(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      f(idx(j), idx(k)) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                     2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(d));
  return rank_one_measurement(f);
}

Instrument swap_with_ancilla(std::size_t d) {
  require_dim(d);
  Instrument ins{d, d, {}};
  for (std::size_t j = 0; j < d; ++j) {
    Matrix k = Matrix::Zero(idx(d), idx(d));
    k(0, idx(j)) = 1.0;
    ins.branches.push_back({std::to_string(j), choi_from_kraus(d, d, {k})});
  }
  return ins;
}

Instrument identity(std::size_t d) {
  require_dim(d);
  return Instrument{d, d, {{"0", identity_channel(d)}}};
}

Instrument depolarize(double p, std::size_t d) {
  require_dim(d);
  if (p < 0.0 || p > 1.0) throw ValidationError("depolarizing probability must lie in [0, 1]");
  auto choi = choi_from_map(d, d, [&](const Matrix& rho) -> Matrix {
    return (1.0 - p) * rho + p * rho.trace() * Matrix::Identity(idx(d), idx(d)) / static_cast<double>(d);
  });
  return Instrument{d, d, {{"0", std::move(choi)}}};
}

Instrument amplitude_damp(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw ValidationError("damping probability must lie in [0, 1]");
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return Instrument{2, 2, {{"0", choi_from_kraus(2, 2, {k0, k1})}}};
}

Instrument random_isometry(std::uint64_t seed, std::size_t anc_dim, std::size_t d) {
  require_dim(d);
  if (anc_dim < 1) throw ValidationError("random isometry needs anc_dim ≥ 1");
  Rng rng(seed);
  Matrix v = arealaw::random_isometry(d, d * anc_dim, rng);
  Instrument ins{d, d, {}};
  for (std::size_t b = 0; b < anc_dim; ++b) {
    Matrix k(idx(d), idx(d));
    for (std::size_t o = 0; o < d; ++o) k.row(idx(o)) = v.row(idx(o * anc_dim + b));
    ins.branches.push_back({std::to_string(b), choi_from_kraus(d, d, {k})});
  }
  return ins;
}

Instrument unitary_channel(const Matrix& u) {
  const auto d = static_cast<std::size_t>(u.rows());
  if (u.cols() != u.rows()) throw DimensionError("unitary channel needs a square matrix");
  return Instrument{d, d, {{"0", choi_from_kraus(d, d, {u})}}};
}

}  // namespace arealaw::instruments
