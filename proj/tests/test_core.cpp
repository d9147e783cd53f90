#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/random.hpp"
#include "arealaw/core/states.hpp"
#include "arealaw/core/tensor.hpp"

using namespace arealaw;

namespace {

HilbertFactorization qubits(std::initializer_list<const char*> labels) {
  std::vector<Factor> f;
  for (const char* l : labels) f.push_back({l, 2});
  return HilbertFactorization(f);
}

Matrix sz() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

Vector bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return v;
}

// Index-loop partial trace over the second of two factors.
Matrix trace_second(const Matrix& rho, std::size_t da, std::size_t db) {
  Matrix out = Matrix::Zero(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
  return out;
}

Matrix trace_first(const Matrix& rho, std::size_t da, std::size_t db) {
  Matrix out = Matrix::Zero(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

double h2(std::initializer_list<double> p) {
  double s = 0;
  for (double x : p)
    if (x > 0) s -= x * std::log2(x);
  return s;
}

}  // namespace

TEST_CASE("factorization labels and order") {
  HilbertFactorization s({{"x", 2}, {"y", 3}, {"z", 2}});
  CHECK(s.total_dim() == 12);
  CHECK(s.position("z") == 2);
  const std::vector<std::string> zx{"z", "x"};
  CHECK(s.subset(zx).labels() == zx);
  CHECK(s.without(zx).labels() == std::vector<std::string>{"y"});
  CHECK(s.dim_of(zx) == 4);
  CHECK_THROWS_AS(HilbertFactorization({{"x", 2}, {"x", 2}}), LabelError);
  CHECK_THROWS_AS(s.concat(qubits({"y"})), LabelError);
  CHECK_THROWS_AS(s.position("w"), LabelError);
}

TEST_CASE("tensor product fixtures") {
  auto a = qubits({"a"}), b = qubits({"b"});
  auto I2 = UnitaryOperator::identity(a);
  CHECK(tensor_product(I2, UnitaryOperator::identity(b)).matrix().isApprox(Matrix::Identity(4, 4)));

  auto e = tensor_product(PureState::basis(a, 0), PureState::basis(b, 1));
  CHECK(e.amplitudes().isApprox(Vector::Unit(4, 1)));

  auto zz = tensor_product(HermitianOperator(a, sz()), HermitianOperator(b, sz()));
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 1, -1, -1, 1;
  CHECK((zz.matrix() - expect).norm() < 1e-15);
  CHECK(zz.space().labels() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("partial trace matches the index-loop oracle") {
  auto ab = qubits({"a", "b"});
  auto phi = DensityMatrix::from_pure(PureState(ab, bell()));
  CHECK((partial_trace(phi, {"a"}).matrix() - Matrix::Identity(2, 2) / 2.0).norm() < 1e-15);

  Rng rng(3);
  auto ra = random_density_matrix(qubits({"a"}), 2, rng);
  auto rb = random_density_matrix(qubits({"b"}), 2, rng);
  CHECK((partial_trace(tensor_product(ra, rb), {"a"}).matrix() - ra.matrix()).norm() < 1e-12);

  HilbertFactorization s({{"a", 2}, {"b", 3}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng r(seed);
    auto rho = random_density_matrix(s, 3, r);
    auto keep_a = partial_trace(rho, {"a"});
    auto keep_b = partial_trace(rho, {"b"});
    CHECK(std::abs(keep_a.matrix().trace() - 1.0) < 1e-12);
    CHECK((keep_a.matrix() - trace_second(rho.matrix(), 2, 3)).norm() < 1e-12);
    CHECK((keep_b.matrix() - trace_first(rho.matrix(), 2, 3)).norm() < 1e-12);
  }
}

TEST_CASE("partial trace keeps the original factor order") {
  Rng rng(11);
  HilbertFactorization s({{"a", 2}, {"b", 3}, {"c", 2}});
  auto rho = random_density_matrix(s, 4, rng);
  auto ca = partial_trace(rho, {"c", "a"});
  auto ac = partial_trace(rho, {"a", "c"});
  CHECK(ca.space().labels() == std::vector<std::string>{"a", "c"});
  CHECK((ca.matrix() - ac.matrix()).norm() == 0.0);
  // (a, c) block of the index-loop oracle after moving b last
  Matrix moved = permute_operator(rho.matrix(), s, {"a", "c", "b"});
  CHECK((ac.matrix() - trace_second(moved, 4, 3)).norm() < 1e-12);
}

TEST_CASE("density matrix validation") {
  auto a = qubits({"a"});
  Matrix bad = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(a, bad), ValidationError);  // trace 2
  Matrix neg = Matrix::Zero(2, 2);
  neg.diagonal() << 1.1, -0.1;
  CHECK_THROWS_AS(DensityMatrix(a, neg), ValidationError);
  Matrix nh = Matrix::Identity(2, 2) / 2.0;
  nh(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(a, nh), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(a, Matrix::Identity(4, 4) / 4.0), DimensionError);
  CHECK_THROWS_AS(PureState(a, Vector::Ones(2)), ValidationError);
}

TEST_CASE("von Neumann entropy fixtures") {
  Rng rng(5);
  CHECK(von_neumann_entropy(DensityMatrix::from_pure(random_pure_state(qubits({"a", "b"}), rng))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(qubits({"a", "b"}))) == doctest::Approx(2.0));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 0.75, 0.25;
  const double oracle = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(von_neumann_entropy(d) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(0.8112781).epsilon(1e-7));
}

TEST_CASE("quantum mutual information fixtures") {
  auto ab = qubits({"a", "b"});
  Bipartition cut{{"a"}, {"b"}};
  CHECK(quantum_mutual_information(DensityMatrix::from_pure(PureState(ab, bell())), cut) == doctest::Approx(2.0));
  Rng rng(2);
  auto prod = tensor_product(random_density_matrix(qubits({"a"}), 2, rng), random_density_matrix(qubits({"b"}), 2, rng));
  CHECK(std::abs(quantum_mutual_information(prod, cut)) < 1e-10);
  Matrix cl = Matrix::Zero(4, 4);
  cl(0, 0) = cl(3, 3) = 0.5;
  CHECK(quantum_mutual_information(DensityMatrix(ab, cl), cut) == doctest::Approx(1.0));
  CHECK_THROWS_AS(quantum_mutual_information(DensityMatrix(ab, cl), Bipartition{{"a"}, {}}), LabelError);
}

TEST_CASE("classical mutual information fixtures") {
  ProbabilityDistribution same({{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  CHECK(classical_mutual_information(same) == doctest::Approx(1.0));
  ProbabilityDistribution prod({{{0, 0}, 0.06}, {{0, 1}, 0.14}, {{1, 0}, 0.24}, {{1, 1}, 0.56}});
  CHECK(std::abs(classical_mutual_information(prod)) < 1e-12);
  ProbabilityDistribution skew({{{0, 0}, 0.4}, {{0, 1}, 0.1}, {{1, 0}, 0.1}, {{1, 1}, 0.4}});
  const double oracle = h2({0.5, 0.5}) + h2({0.5, 0.5}) - h2({0.4, 0.1, 0.1, 0.4});
  CHECK(classical_mutual_information(skew) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(0.2780719).epsilon(1e-7));
  CHECK_THROWS_AS(ProbabilityDistribution({{{0}, 0.7}}), ValidationError);
}

TEST_CASE("hermitian exponential") {
  CHECK(hermitian_exponential(sz(), 0.0).isApprox(Matrix::Identity(2, 2)));
  CHECK((hermitian_exponential(sz(), std::numbers::pi) + Matrix::Identity(2, 2)).norm() < 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Matrix h = random_hermitian(5, rng);
    Matrix u = hermitian_exponential(h, 0.7);
    CHECK((u * u.adjoint() - Matrix::Identity(5, 5)).norm() < 1e-12);
    CHECK((u * hermitian_exponential(h, -0.7) - Matrix::Identity(5, 5)).norm() < 1e-12);
    // Taylor series oracle
    Matrix term = Matrix::Identity(5, 5), sum = term;
    for (int k = 1; k < 40; ++k) {
      term = term * (Complex(0, -0.7) * h) / static_cast<double>(k);
      sum += term;
    }
    CHECK((u - sum).norm() < 1e-12);
  }
}

TEST_CASE("Schmidt decomposition") {
  auto ab = qubits({"a", "b"});
  auto prod = tensor_product(PureState::basis(qubits({"a"}), 1), PureState::basis(qubits({"b"}), 0));
  auto sp = schmidt_decomposition(prod, {"a"});
  REQUIRE(sp.rank() == 1);
  CHECK(sp.coefficients(0) == doctest::Approx(1.0));

  auto sb = schmidt_decomposition(PureState(ab, bell()), {"a"});
  REQUIRE(sb.rank() == 2);
  CHECK(sb.coefficients(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sb.coefficients(1) == doctest::Approx(1 / std::sqrt(2.0)));

  HilbertFactorization s23({{"l", 2}, {"r", 3}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    auto psi = random_pure_state(s23, rng);
    CHECK((schmidt_decomposition(psi, {"l"}).reconstruct() - psi.amplitudes()).norm() < 1e-10);
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix((Matrix(2, 2) << 0, 1, 1, 0).finished())) == doctest::Approx(1.0));
  CHECK(operator_norm(Matrix::Zero(3, 3).eval()) == 0.0);
  Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  CHECK(operator_norm(Matrix(3.0 * Eigen::kroneckerProduct(sz(), x))) == doctest::Approx(3.0));
}

TEST_CASE("apply_on_rows moves factors and appends outputs") {
  auto s = qubits({"a", "b"});
  Vector psi = PureState::basis(s, 1).amplitudes();  // |0⟩_a|1⟩_b
  Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  CHECK(apply_on_rows(s, psi, {"b"}, x).col(0).isApprox(Vector::Unit(4, 0)));

  // b → (b, anc) copy in the computational basis
  Matrix copy = Matrix::Zero(4, 2);
  copy(0, 0) = copy(3, 1) = 1;
  auto r = apply_on_rows(s, psi, {"b"}, copy, {{"b", 2}, {"anc", 2}});
  CHECK(r.space.labels() == std::vector<std::string>{"a", "b", "anc"});
  CHECK(r.rows.col(0).isApprox(Vector::Unit(8, 3)));
}

TEST_CASE("random generators") {
  Rng rng(9);
  Matrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-12);
  Matrix v = random_isometry(2, 6, rng);
  CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(operator_norm(random_hermitian(4, rng)) == doctest::Approx(1.0));
  CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
  CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
  Rng a(42), b(42);
  CHECK(random_unitary(3, a).isApprox(random_unitary(3, b)));
}
