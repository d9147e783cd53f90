#pragma once

#include <cstdint>
#include <random>

#include "arealaw/core/states.hpp"

namespace arealaw {

/// splitmix64 finalizer; used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  Complex complex_normal();
  std::size_t index(std::size_t n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(std::size_t dim, Rng& rng);
/// Haar-random isometry from C^in into C^out (out ≥ in).
Matrix random_isometry(std::size_t in, std::size_t out, Rng& rng);
/// GUE sample normalized to unit operator norm.
Matrix random_hermitian(std::size_t dim, Rng& rng);
PureState random_pure_state(const HilbertFactorization& space, Rng& rng);
/// Induced measure: partial trace of a random pure state with environment of size `rank`.
DensityMatrix random_density_matrix(const HilbertFactorization& space, std::size_t rank, Rng& rng);

}  // namespace arealaw
