#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/core/random.hpp"
#include "arealaw/process/choi.hpp"
#include "arealaw/process/correlation.hpp"
#include "arealaw/process/process_io.hpp"
#include "arealaw/process/process_matrix.hpp"

using namespace arealaw;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix proj(std::size_t d, std::size_t k) {
  Matrix p = Matrix::Zero(d, d);
  p(k, k) = 1;
  return p;
}

Matrix bell_projector() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return v * v.adjoint();
}

DensityMatrix two_qubit(const Matrix& m) { return DensityMatrix(HilbertFactorization({{"A_I", 2}, {"B_I", 2}}), m); }

// Measure-and-prepare branch ρ ↦ tr(Eρ)·σ with a one-dimensional output.
ChoiMatrix povm_branch(const Matrix& effect) {
  return choi_from_map(effect.rows(), 1, [&](const Matrix& rho) { return Matrix::Constant(1, 1, (effect * rho).trace()); });
}

std::vector<Matrix> random_kraus(std::size_t d, std::size_t k, Rng& rng) {
  Matrix v = random_isometry(d, d * k, rng);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(v.middleRows(i * d, d));
  return out;
}

}  // namespace

TEST_CASE("Choi matrices") {
  auto id = identity_channel(2);
  Matrix expect = Matrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) expect(i, j) = 1;
  CHECK((id.matrix - expect).norm() < 1e-15);
  CHECK(id.matrix.trace().real() == doctest::Approx(2.0));
  CHECK((completely_depolarizing(2).matrix - Matrix::Identity(4, 4) / 2.0).norm() < 1e-15);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    auto kraus = random_kraus(2, 3, rng);
    auto choi = choi_from_kraus(2, 2, kraus);
    CHECK(cp_residual(choi) < 1e-12);
    CHECK(tp_residual(choi) < 1e-12);
    Matrix rho = random_density_matrix(HilbertFactorization({{"x", 2}}), 2, rng).matrix();
    Matrix direct = Matrix::Zero(2, 2);
    for (const auto& k : kraus) direct += k * rho * k.adjoint();
    CHECK((map_from_choi(choi, rho) - direct).norm() < 1e-10);
    CHECK((choi_from_kraus(2, 2, kraus_from_choi(choi)).matrix - choi.matrix).norm() < 1e-10);
  }
}

TEST_CASE("process validation") {
  auto bell = process_from_state(two_qubit(bell_projector()), 2, 2);
  auto r = validate_process(bell);
  CHECK(r.valid());
  CHECK(r.trace == doctest::Approx(4.0));
  CHECK(std::string(r.subspace_check) == "not checked");

  auto zero = ProcessMatrix({{2, 2}, {2, 1}}, Matrix::Zero(8, 8));
  auto rz = validate_process(zero);
  CHECK_FALSE(rz.trace_ok);
  CHECK_FALSE(rz.valid());

  CHECK(validate_process(build_counterexample_W()).valid());
  CHECK(validate_process(process_from_channel(identity_channel(2))).valid());

  auto depol = choi_from_map(2, 2, [](const Matrix& rho) { return Matrix(0.7 * rho + 0.3 * rho.trace() * Matrix::Identity(2, 2) / 2.0); });
  CHECK(validate_process(process_from_channel(depol)).valid());

  Matrix broken = build_counterexample_W().matrix();
  broken(0, 0) = -0.25;
  CHECK_FALSE(validate_process(ProcessMatrix({{2, 2}, {2, 1}}, broken)).psd);
}

TEST_CASE("probability rule against the Born rule") {
  // I/4 with Z measurements: uniform
  auto mixed = process_from_state(two_qubit(Matrix::Identity(4, 4) / 4.0));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(probability_rule(mixed, povm_branch(proj(2, a)), povm_branch(proj(2, b))) == doctest::Approx(0.25));

  auto bell = process_from_state(two_qubit(bell_projector()));
  CHECK(probability_rule(bell, povm_branch(proj(2, 0)), povm_branch(proj(2, 0))) == doctest::Approx(0.5));
  CHECK(std::abs(probability_rule(bell, povm_branch(proj(2, 0)), povm_branch(proj(2, 1)))) < 1e-12);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto omega = random_density_matrix(HilbertFactorization({{"A_I", 2}, {"B_I", 2}}), 3, rng);
    auto w = process_from_state(omega);
    Matrix ua = random_unitary(2, rng), ub = random_unitary(2, rng);
    double total = 0;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        Matrix ea = ua * proj(2, a) * ua.adjoint(), eb = ub * proj(2, b) * ub.adjoint();
        const double born = (kron(ea, eb) * omega.matrix()).trace().real();
        const double p = probability_rule(w, povm_branch(ea), povm_branch(eb));
        CHECK(std::abs(p - born) < 1e-10);
        total += p;
      }
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("probability rule reproduces channel statistics") {
  Rng rng(8);
  auto kraus = random_kraus(2, 2, rng);
  auto channel = choi_from_kraus(2, 2, kraus);
  auto w = process_from_channel(channel);
  Matrix sigma = random_density_matrix(HilbertFactorization({{"x", 2}}), 2, rng).matrix();
  // Alice prepares σ (trivial input), Bob measures in Z
  auto prep = choi_from_map(1, 2, [&](const Matrix& r) { return Matrix(r(0, 0) * sigma); });
  Matrix out = map_from_choi(channel, sigma);
  for (std::size_t b = 0; b < 2; ++b)
    CHECK(std::abs(probability_rule(w, prep, povm_branch(proj(2, b))) - out(b, b).real()) < 1e-10);
}

TEST_CASE("counterexample process") {
  auto w = build_counterexample_W();
  CHECK(w.matrix().trace().real() == doctest::Approx(2.0));
  CHECK(process_mutual_information(w, {0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ancilla_mutual_information(w, counterexample_scheme(), {0}) == doctest::Approx(2.0).epsilon(1e-9));

  // Alice prepares |0⟩ and measures Z: Φ+ statistics on (A_I, B_I)
  auto alice = choi_from_map(2, 2, [](const Matrix& r) { return Matrix(r(0, 0) * proj(2, 0)); });
  auto alice1 = choi_from_map(2, 2, [](const Matrix& r) { return Matrix(r(1, 1) * proj(2, 0)); });
  CHECK(probability_rule(w, alice, povm_branch(proj(2, 0))) == doctest::Approx(0.5));
  CHECK(std::abs(probability_rule(w, alice, povm_branch(proj(2, 1)))) < 1e-12);
  CHECK(probability_rule(w, alice1, povm_branch(proj(2, 1))) == doctest::Approx(0.5));
}

TEST_CASE("teleport and discard probes") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto w = random_causal_process({2, 2}, {2, 2}, 2, seed);
    Matrix rho = final_ancilla_matrix(w, teleport_scheme(w.parties()));
    CHECK((rho - w.matrix() / w.matrix().trace()).norm() < 1e-12);
  }
  auto w = build_counterexample_W();
  ProbingScheme discard;
  for (const auto& p : w.parties()) {
    discard.maps.push_back(choi_from_map(p.in, p.out * 2, [&](const Matrix& r) {
      Matrix out = Matrix::Zero(p.out * 2, p.out * 2);
      out(0, 0) = r.trace();
      return out;
    }));
    discard.ancilla_dims.push_back(2);
  }
  CHECK(std::abs(ancilla_mutual_information(w, discard, {0})) < 1e-12);
}

TEST_CASE("C_W estimates") {
  CorrelationBudget budget;
  budget.restarts = 2;
  budget.iterations = 40;
  auto bell = process_from_state(two_qubit(bell_projector()));
  auto eb = estimate_C_W(bell, {0}, budget);
  CHECK(eb.value == doctest::Approx(2.0).epsilon(0.01));
  CHECK(eb.value <= eb.cap + 1e-9);
  auto ec = estimate_C_W(build_counterexample_W(), {0}, budget);
  CHECK(ec.value >= 2.0 - 1e-9);
  CHECK(correlation_cap(bell, {0}) == doctest::Approx(2.0));
}

TEST_CASE("process JSON round trip") {
  auto w = random_causal_process({2, 2}, {2, 1}, 1, 3);
  auto back = process_from_json(process_to_json(w));
  CHECK(back.parties() == w.parties());
  CHECK((back.matrix() - w.matrix()).norm() < 1e-14);
  CHECK_THROWS(process_from_json(nlohmann::json{{"dims", {2, 2}}, {"entries", {{1, 0}}}}));
}
