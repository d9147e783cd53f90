#include "arealaw/core/random.hpp"

#include <cmath>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"

namespace arealaw {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

std::size_t Rng::index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

namespace {

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

Matrix random_unitary(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

Matrix random_isometry(std::size_t in, std::size_t out, Rng& rng) {
  if (out < in) throw DimensionError("isometry needs out >= in");
  return random_unitary(out, rng).leftCols(static_cast<Eigen::Index>(in));
}

Matrix random_hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Matrix h = (g + g.adjoint()) / 2.0;
  const double norm = operator_norm(h);
  if (norm > 0.0) h /= norm;
  return h;
}

PureState random_pure_state(const HilbertFactorization& space, Rng& rng) {
  return PureState::normalized(space, ginibre(space.total_dim(), 1, rng).col(0));
}

DensityMatrix random_density_matrix(const HilbertFactorization& space, std::size_t rank, Rng& rng) {
  const Matrix g = ginibre(space.total_dim(), rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(space, (rho + rho.adjoint()) / 2.0);
}

}  // namespace arealaw
