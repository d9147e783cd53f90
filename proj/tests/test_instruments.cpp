#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"

#include "arealaw/core/errors.hpp"
#include "arealaw/core/information.hpp"
#include "arealaw/core/random.hpp"
#include "arealaw/instruments/instrument.hpp"
#include "arealaw/instruments/purification.hpp"
#include "arealaw/instruments/templates.hpp"

using namespace arealaw;

namespace {

HilbertFactorization qubit(const char* l) { return HilbertFactorization({{l, 2}}); }

Matrix proj(int k) {
  Matrix p = Matrix::Zero(2, 2);
  p(k, k) = 1;
  return p;
}

// Direct Kraus application, the oracle for branch reproduction.
Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

}  // namespace

TEST_CASE("instrument validation") {
  CHECK(validate_instrument(instruments::projective_z()).valid());
  CHECK(validate_instrument(instruments::amplitude_damp(0.3)).valid());
  CHECK(validate_instrument(instruments::random_isometry(4, 3)).valid());

  Instrument twice;
  twice.branches = {{"0", choi_from_kraus(2, 2, {Matrix::Identity(2, 2)})},
                    {"1", choi_from_kraus(2, 2, {Matrix::Identity(2, 2)})}};
  auto r = validate_instrument(twice);
  CHECK_FALSE(r.tp);
  CHECK(r.tp_residual > 0.5);

  Instrument neg = instruments::projective_z();
  neg.branches[0].choi.matrix(3, 3) -= 0.1;  // |1⟩⟨1| ⊗ |1⟩⟨1| lies outside branch 0's support
  neg.branches[1].choi.matrix(3, 3) += 0.1;  // keeps the total trace-preserving
  auto rn = validate_instrument(neg);
  CHECK(rn.tp);
  CHECK_FALSE(rn.branches[0].cp);
  CHECK(rn.branches[0].cp_residual == doctest::Approx(0.1));
  CHECK_THROWS_AS(purify(neg), ValidationError);
}

TEST_CASE("purification dimensions and branch reproduction") {
  Rng rng(4);
  Matrix u = random_unitary(2, rng);
  auto pu = purify(instruments::unitary_channel(u));
  CHECK(pu.ancilla_dim == 1);
  // a channel fixes U only up to a global phase
  const Complex phase = (u.adjoint() * pu.isometry).trace() / 2.0;
  CHECK(std::abs(phase) == doctest::Approx(1.0));
  CHECK((pu.isometry - phase * u).norm() < 1e-10);

  auto pz = purify(instruments::projective_z());
  CHECK(pz.ancilla_dim == 2);
  Vector psi = random_pure_state(qubit("s"), rng).amplitudes();
  Vector expect = Vector::Zero(4);
  for (int a = 0; a < 2; ++a) expect += Eigen::kroneckerProduct(Vector(proj(a) * psi), Vector::Unit(2, a)).eval();
  CHECK((pz.isometry * psi - expect).norm() < 1e-12);

  const double g = 0.35;
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1 - g);
  k1(0, 1) = std::sqrt(g);
  auto pa = purify(instruments::amplitude_damp(g));
  CHECK(pa.ancilla_dim == 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng r(seed);
    Matrix rho = random_density_matrix(qubit("s"), 2, r).matrix();
    Matrix got = map_from_choi(branch_from_purified(pa, 0), rho);
    CHECK((got - apply_kraus({k0, k1}, rho)).norm() < 1e-9);
  }
}

TEST_CASE("purify then un-purify recovers every branch") {
  for (const auto& ins : {instruments::projective_x(3), instruments::random_isometry(9, 3),
                          instruments::depolarize(0.4), instruments::swap_with_ancilla()}) {
    auto p = purify(ins);
    REQUIRE(p.outcomes.size() == ins.outcomes());
    for (std::size_t b = 0; b < ins.outcomes(); ++b)
      CHECK((branch_from_purified(p, b).matrix - ins.branches[b].choi.matrix).norm() < 1e-9);
  }
}

TEST_CASE("outcome distributions by deferred measurement") {
  auto pz = std::make_shared<PurifiedInstrument>(purify(instruments::projective_z()));
  // no instruments: probability 1 on the empty tuple
  auto s0 = DensityMatrix::from_pure(PureState::basis(qubit("s"), 0));
  auto empty = deferred_outcome_distribution(s0, {});
  CHECK(empty.probability({}) == doctest::Approx(1.0));

  Vector plus = Vector::Ones(2) / std::sqrt(2.0);
  auto rho = apply_purified(DensityMatrix::from_pure(PureState(qubit("s"), plus)), *pz, {"s"}, "m");
  auto one = deferred_outcome_distribution(rho, {{pz.get(), "m"}});
  CHECK(one.probability({0}) == doctest::Approx(0.5));
  CHECK(one.probability({1}) == doctest::Approx(0.5));

  HilbertFactorization ab({{"a", 2}, {"b", 2}});
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  auto state = DensityMatrix::from_pure(PureState(ab, bell));
  state = apply_purified(state, *pz, {"a"}, "m1");
  state = apply_purified(state, *pz, {"b"}, "m2");
  auto joint = deferred_outcome_distribution(state, {{pz.get(), "m1"}, {pz.get(), "m2"}});
  CHECK(joint.probability({0, 0}) == doctest::Approx(0.5));
  CHECK(joint.probability({1, 1}) == doctest::Approx(0.5));
  CHECK(joint.probability({0, 1}) == doctest::Approx(0.0));
  CHECK(classical_mutual_information(joint) == doctest::Approx(1.0));
}

TEST_CASE("controlled instruments") {
  Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  auto flip = instruments::unitary_channel(x);
  auto keep = instruments::identity();

  auto single = controlled_instrument({{"only"}, {1.0}}, {flip});
  CHECK(validate_instrument(single).valid());
  CHECK(single.input_dim == 2);  // a one-level setting register

  // {σ_x, I} with p = (½, ½) on |0⟩: the spin marginal is I/2
  auto setting = SettingDistribution::uniform(2);
  auto ctrl = purify(controlled_instrument(setting, {flip, keep}));
  HilbertFactorization reg({{"p", 2}, {"s", 2}});
  Vector in = Eigen::kroneckerProduct(setting.setting_state(), Vector::Unit(2, 0)).eval();
  auto out = apply_purified(DensityMatrix::from_pure(PureState(reg, in)), ctrl, {"p", "s"}, "anc");
  CHECK((partial_trace(out, {"s"}).matrix() - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);

  // p = (1, 0): exactly the first setting's behaviour
  SettingDistribution det{{"f", "k"}, {1.0, 0.0}};
  auto cd = purify(controlled_instrument(det, {flip, keep}));
  Vector in1 = Eigen::kroneckerProduct(det.setting_state(), Vector::Unit(2, 0)).eval();
  auto o1 = apply_purified(DensityMatrix::from_pure(PureState(reg, in1)), cd, {"p", "s"}, "anc");
  CHECK((partial_trace(o1, {"s"}).matrix() - proj(1)).norm() < 1e-12);

  CHECK_THROWS_AS(SettingDistribution({{"a", "b"}, {0.7, 0.7}}).validate(), ValidationError);
}

TEST_CASE("instrument JSON round trip") {
  auto ins = instruments::random_isometry(3, 2);
  auto back = instrument_from_json(instrument_to_json(ins));
  REQUIRE(back.outcomes() == ins.outcomes());
  for (std::size_t b = 0; b < ins.outcomes(); ++b)
    CHECK((back.branches[b].choi.matrix - ins.branches[b].choi.matrix).norm() < 1e-14);
}
