#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"

#include "arealaw/core/linalg.hpp"
#include "arealaw/core/tensor.hpp"
#include "support/harvest_model.hpp"

using namespace arealaw;
using arealaw::testing::exchange;
using arealaw::testing::harvest_model;
using arealaw::testing::projector_distance;

namespace {

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1;
  return s;
}

Vector bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return v;
}

const std::vector<DetectorSpec> kDetectors{{"a", 2}, {"b", 2}};

}  // namespace

TEST_CASE("no couplings and no dynamics: constant trajectory") {
  auto lattice = LatticeSpec::chain(2);
  SwitchedHamiltonian spec{LocalHamiltonian(lattice, {}, 1), {1}, {}, {}, {}, 0.2, 0.6};
  Rng rng(1);
  auto spins = random_pure_state(spin_space(lattice), rng);
  HarvestOptions opts;
  opts.record_times = {0.1, 0.8};
  auto traj = evolve_switched(spec, kDetectors, spins, 1.0, 4, opts);
  Vector expect = Eigen::kroneckerProduct(spins.amplitudes(), Vector::Unit(4, 0)).eval();
  for (double t : {0.1, 0.8, 1.0}) CHECK((traj.at(t) - expect).norm() < 1e-12);
}

TEST_CASE("time-independent H matches the exact exponential") {
  auto lattice = LatticeSpec::chain(2);
  SwitchedHamiltonian spec{hamiltonians::ising(lattice, 0.7, 0.5), {1}, {}, {}, {}, 0.3, 0.7};
  spec.b_complement = make_coupling({"b", "s0"}, 0.6 * exchange());
  Rng rng(2);
  auto spins = random_pure_state(spin_space(lattice), rng);
  auto space = spin_space(lattice).concat(HilbertFactorization({{"a", 2}, {"b", 2}}));
  Matrix H = embed_operator(spec.h0.matrix(), {"s0", "s1"}, space) + embed_operator(0.6 * exchange(), {"b", "s0"}, space);
  Vector psi0 = Eigen::kroneckerProduct(spins.amplitudes(), Vector::Unit(4, 0)).eval();
  Vector exact = hermitian_exponential(H, 1.0) * psi0;
  double prev = 0;
  for (std::size_t m : {8, 16, 32, 64}) {
    const double err = (evolve_switched(spec, kDetectors, spins, 1.0, m).at(1.0) - exact).norm();
    CHECK(err < 1.0 / static_cast<double>(m));
    if (prev > 0) CHECK(prev / err >= 1.8);
    prev = err;
  }
}

TEST_CASE("doubling m shrinks the terminal error") {
  auto model = harvest_model(5, 0.3, 0.2, 0.5, 1.0);
  const double t_end = model.spec.t_beta + 0.2;
  const Vector ref = evolve_switched(model.spec, model.detectors, model.spins, t_end, 1024).at(t_end);
  double prev = 0;
  for (std::size_t m : {2, 4, 8, 16, 32}) {
    const double err = (evolve_switched(model.spec, model.detectors, model.spins, t_end, m).at(t_end) - ref).norm();
    if (prev > 0) CHECK(prev / err >= 1.8);
    prev = err;
  }
}

TEST_CASE("no a-coupling: no harvested correlation") {
  auto model = harvest_model(7);
  model.spec.a_sigma = {};
  HarvestOptions opts;
  opts.record_times = {model.spec.t_beta, model.spec.t_beta + 0.2};
  auto traj = evolve_switched(model.spec, model.detectors, model.spins, model.spec.t_beta + 0.5, 8, opts);
  for (double t : traj.times) CHECK(std::abs(detector_mutual_information(traj, t, model.spec.t_beta)) < 1e-12);
}

TEST_CASE("SWAP harvesting of a Bell pair gives 2 bits") {
  auto lattice = LatticeSpec::chain(2);
  const double T = 0.5, after = 0.5, t_beta = 0.25 + T;
  SwitchedHamiltonian spec{LocalHamiltonian(lattice, {}, 1), {1}, {}, {}, {}, 0.25, t_beta};
  spec.a_sigma = make_coupling({"a", "s1"}, std::numbers::pi / (2 * T) * swap_gate());
  spec.b_complement = make_coupling({"b", "s0"}, std::numbers::pi / (2 * after) * swap_gate(),
                                    [t_beta](double t) { return t > t_beta ? 1.0 : 0.0; });
  auto traj = evolve_switched(spec, kDetectors, PureState(spin_space(lattice), bell()), t_beta + after, 4);
  const double I = detector_mutual_information(traj, t_beta + after, t_beta);
  CHECK(I == doctest::Approx(2.0).epsilon(1e-9));

  auto p = harvesting_params(spec, 18.0);
  CHECK(I <= harvesting_bound(p));
}

TEST_CASE("I(a:b) is frozen once b decouples") {
  auto model = harvest_model(11);
  const double t_beta = model.spec.t_beta;
  model.spec.b_complement = make_coupling({"b", "s0"}, 0.5 * exchange(), [t_beta](double t) { return t < t_beta ? 1.0 : 0.0; });
  model.spec.b_sigma = make_coupling({"b", "s1"}, 0.25 * exchange(), [t_beta](double t) { return t < t_beta ? 1.0 : 0.0; });
  HarvestOptions opts;
  opts.record_times = {t_beta, t_beta + 0.3};
  auto traj = evolve_switched(model.spec, model.detectors, model.spins, t_beta + 0.6, 16, opts);
  const double I0 = detector_mutual_information(traj, t_beta, t_beta);
  CHECK(I0 > 1e-6);
  for (double t : traj.times) CHECK(detector_mutual_information(traj, t, t_beta) == doctest::Approx(I0).epsilon(1e-9));
}

TEST_CASE("harvesting bound arithmetic") {
  auto model = harvest_model(1);
  auto p = harvesting_params(model.spec, 18.0);
  CHECK(p.sigma_size == 1);
  CHECK(p.boundary_size == 1);
  CHECK(p.T_tot == doctest::Approx(model.spec.T()));
  CHECK(harvesting_bound(p) == doctest::Approx(area_law_bound(p)));

  p.C = 1.0;
  p.h_norm = 1.0;
  p.T_tot = 2.0;
  CHECK(harvesting_bound(p) == doctest::Approx(4.0));
  p.T_tot = 0.0;
  CHECK(harvesting_bound(p) == doctest::Approx(2.0));
  // an interior 1-D block has two boundary sites, where both forms agree
  p.sigma_size = p.X = 2;
  p.boundary_size = 2;
  p.T_tot = 2.0;
  CHECK(harvesting_bound(p) == doctest::Approx(area_law_bound_1d(p)));
}

TEST_CASE("invalid harvesting setups") {
  auto model = harvest_model(2);
  CHECK_THROWS(evolve_switched(model.spec, model.detectors, model.spins, 1.0, 0));
  CHECK_THROWS(evolve_switched(model.spec, model.detectors, model.spins, model.spec.t_beta - 0.1, 4));
  HarvestOptions inside;
  inside.record_times = {model.spec.t_alpha + 0.1};
  CHECK_THROWS(evolve_switched(model.spec, model.detectors, model.spins, 1.0, 4, inside));

  auto bad = model.spec;
  bad.a_sigma = make_coupling({"a", "s0"}, exchange());  // a may only touch Σ
  CHECK_THROWS(bad.validate(model.detectors));
  auto traj = evolve_switched(model.spec, model.detectors, model.spins, 1.0, 4);
  CHECK_THROWS(detector_mutual_information(traj, model.spec.t_alpha, model.spec.t_beta));
  CHECK(projector_distance(traj.at(1.0), traj.at(1.0)) == 0.0);
}
