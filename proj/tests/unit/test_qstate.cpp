#include <doctest.h>

#include <cmath>
#include <vector>

#include "fqkd/density_matrix.hpp"
#include "fqkd/protocol.hpp"
#include "fqkd/state_vector.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fqkd;

namespace {

const Complex I{0, 1};
const double kInvSqrt2 = 1 / std::sqrt(2.0);

StateVector random_state(int n, CounterRng& r) {
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& x : v) x = {r.uniform() - 0.5, r.uniform() - 0.5};
  return StateVector::from_amplitudes(v);
}

DensityMatrix random_mixed(int n, CounterRng& r) {
  // Purification with an ancilla of the same size.
  const auto s = random_state(2 * n, r);
  std::vector<int> keep;
  for (int q = 0; q < n; ++q) keep.push_back(q);
  return reduced_density(s, keep);
}

}  // namespace

TEST_CASE("equator states") {
  auto s0 = make_equator_state(EquatorAngle(0.0));
  CHECK(test::near(s0.amplitude(0), kInvSqrt2));
  CHECK(test::near(s0.amplitude(1), kInvSqrt2));
  auto sp = make_equator_state(EquatorAngle(kPi));
  CHECK(test::near(sp.amplitude(0), kInvSqrt2));
  CHECK(test::near(sp.amplitude(1), -kInvSqrt2));

  auto r = test::rng_for(1);
  for (int i = 0; i < 20; ++i) {
    const EquatorAngle phi(r.angle());
    CHECK(std::abs(inner_product(make_equator_state(phi), make_equator_state(phi.bar()))) < 1e-12);
  }
}

TEST_CASE("equator angle reduction") {
  CHECK(EquatorAngle(-kPi / 2).radians() == doctest::Approx(3 * kPi / 2));
  CHECK(EquatorAngle(5 * kPi).radians() == doctest::Approx(kPi));
  CHECK(EquatorAngle(1.0).bar().radians() == doctest::Approx(1.0 + kPi));
  CHECK(EquatorAngle(kTwoPi).radians() == 0.0);
}

TEST_CASE("inner product of equator states") {
  auto r = test::rng_for(2);
  for (int i = 0; i < 50; ++i) {
    const double a = r.angle(), b = r.angle();
    const Complex expect = (1.0 + std::polar(1.0, b - a)) / 2.0;
    CHECK(test::near(inner_product(make_equator_state(EquatorAngle(a)), make_equator_state(EquatorAngle(b))), expect,
                     1e-12));
  }
}

TEST_CASE("qfr acting on |0> x |phi>") {
  auto r = test::rng_for(3);
  for (int i = 0; i < 20; ++i) {
    const double phi = r.angle();
    auto s = apply_qfr(tensor(make_equator_state(EquatorAngle(0.0)), make_equator_state(EquatorAngle(phi))), 0, 1);
    CHECK(fidelity_up_to_global_phase(s, oracle::step3(phi)) > 1 - 1e-12);
    // Exact amplitudes, no global phase freedom.
    const auto expect = oracle::product({oracle::up(), oracle::eq(phi + kPi / 2)});
    const auto expect2 = oracle::product({oracle::down(), oracle::eq(phi - kPi / 2)});
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(test::near(s.amplitude(k),
                       kInvSqrt2 * (std::polar(1.0, -kPi / 4) * expect[k] + std::polar(1.0, kPi / 4) * expect2[k])));
  }
}

TEST_CASE("qfr phases") {
  auto s = apply_qfr(StateVector::basis(2, 0), 0, 1);
  CHECK(test::near(s.amplitude(0), std::polar(1.0, -kPi / 4)));

  // Twice is exp(-i pi/2 ZZ) = diag(-i, i, i, -i).
  const Complex diag[4] = {-I, I, I, -I};
  for (std::size_t k = 0; k < 4; ++k) {
    auto t = apply_qfr(apply_qfr(StateVector::basis(2, k), 0, 1), 0, 1);
    for (std::size_t j = 0; j < 4; ++j) CHECK(test::near(t.amplitude(j), j == k ? diag[k] : 0.0));
  }

  CHECK_THROWS_AS(apply_qfr(s, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(apply_qfr(s, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(apply_qfr(s, -1, 1), std::invalid_argument);
}

TEST_CASE("qfr on disjoint pairs commutes") {
  auto r = test::rng_for(4);
  const auto s = random_state(4, r);
  auto a = apply_qfr(apply_qfr(s, 0, 2), 1, 3);
  auto b = apply_qfr(apply_qfr(s, 1, 3), 0, 2);
  auto c = apply_qfr(apply_qfr(s, 2, 1), 0, 2);
  auto d = apply_qfr(apply_qfr(s, 0, 2), 2, 1);
  for (std::size_t k = 0; k < s.dimension(); ++k) {
    CHECK(std::abs(a.amplitude(k) - b.amplitude(k)) < 1e-12);
    CHECK(std::abs(c.amplitude(k) - d.amplitude(k)) < 1e-12);
  }
}

TEST_CASE("gates preserve the norm") {
  auto r = test::rng_for(5);
  auto s = random_state(5, r);
  for (int i = 0; i < 200; ++i) {
    const int q0 = static_cast<int>(r.below(5));
    const int q1 = (q0 + 1 + static_cast<int>(r.below(4))) % 5;
    switch (r.below(3)) {
      case 0: qfr_inplace(s, q0, q1); break;
      case 1: pauli_x_inplace(s, q0); break;
      default: phase_inplace(s, q0, r.angle()); break;
    }
    REQUIRE(std::abs(s.norm() - 1) < 1e-10);
  }
}

TEST_CASE("pauli x") {
  auto up = make_z_state(0);
  auto dn = apply_pauli_x(up, 0);
  CHECK(test::near(dn.amplitude(1), 1.0));
  auto back = apply_pauli_x(dn, 0);
  CHECK(test::near(back.amplitude(0), 1.0));

  auto r = test::rng_for(6);
  for (int i = 0; i < 20; ++i) {
    const double phi = r.angle();
    auto s = apply_pauli_x(make_equator_state(EquatorAngle(phi)), 0);
    // [[0,1],[1,0]] (1, e^{iφ})/√2 = e^{iφ} |−φ⟩
    const Complex e = std::polar(1.0, phi);
    CHECK(test::near(s.amplitude(0), e * kInvSqrt2));
    CHECK(test::near(s.amplitude(1), e * std::polar(kInvSqrt2, -phi)));
  }
}

TEST_CASE("measure_equator on eigenstates is deterministic") {
  auto r = test::rng_for(7);
  for (int i = 0; i < 50; ++i) {
    const EquatorAngle phi(r.angle());
    auto m = measure_equator(make_equator_state(phi), 0, phi, r);
    CHECK(m.outcome == +1);
    auto m2 = measure_equator(make_equator_state(phi.bar()), 0, phi, r);
    CHECK(m2.outcome == -1);
    CHECK(measure_equator(m2.collapsed, 0, phi, r).outcome == -1);
  }
}

TEST_CASE("measurement statistics follow the Born rule") {
  auto r = test::rng_for(8);
  const int n = 10000;
  int plus_eq = 0, plus_z = 0;
  const auto up = make_z_state(0);
  const auto h = make_equator_state(EquatorAngle(0.0));
  for (int i = 0; i < n; ++i) {
    plus_eq += measure_equator(up, 0, EquatorAngle(r.angle()), r).outcome == 1;
    plus_z += measure_z(h, 0, r).outcome == 1;
  }
  const double tol = 3 * test::sigma(0.5, n);
  CHECK(std::abs(plus_eq / double(n) - 0.5) < tol);
  CHECK(std::abs(plus_z / double(n) - 0.5) < tol);

  CHECK(measure_z(up, 0, r).outcome == 1);
  CHECK(measure_z(make_z_state(1), 0, r).outcome == -1);
}

TEST_CASE("measurement on a register collapses consistently") {
  auto r = test::rng_for(9);
  for (int i = 0; i < 50; ++i) {
    const auto s = random_state(3, r);
    const EquatorAngle phi(r.angle());
    const int q = static_cast<int>(r.below(3));
    const double p_plus = s.probability(q, equator_ket(phi));
    const double p_minus = s.probability(q, equator_ket(phi.bar()));
    CHECK(p_plus + p_minus == doctest::Approx(1.0).epsilon(1e-12));
    auto m = measure_equator(s, q, phi, r);
    CHECK(std::abs(m.collapsed.norm() - 1) < 1e-10);
    CHECK(measure_equator(m.collapsed, q, phi, r).outcome == m.outcome);
    auto z = measure_z(m.collapsed, q, r);
    CHECK(measure_z(z.collapsed, q, r).outcome == z.outcome);
  }
}

TEST_CASE("tensor ordering and global phase") {
  auto t = tensor(make_z_state(1), make_z_state(0));
  CHECK(t.dimension() == 4);
  CHECK(test::near(t.amplitude(1), 1.0));  // first factor is bit 0

  auto r = test::rng_for(10);
  const auto s = random_state(3, r);
  std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
  const Complex g = std::polar(1.0, r.angle());
  for (auto& x : rotated) x *= g;
  CHECK(fidelity_up_to_global_phase(s, StateVector::from_amplitudes(rotated)) == doctest::Approx(1.0));

  CHECK_THROWS(StateVector::from_amplitudes({1.0, 0.0, 0.0}));
  CHECK_THROWS(StateVector::from_amplitudes({0.0, 0.0}));
}

TEST_CASE("permute_qubits") {
  auto s = tensor({make_z_state(1), make_z_state(0), make_z_state(0)});
  const int order[] = {2, 0, 1};
  auto p = permute_qubits(s, order);
  CHECK(test::near(p.amplitude(2), 1.0));
}

TEST_CASE("reduced density and purity") {
  auto prod = tensor(make_equator_state(EquatorAngle(0.3)), make_equator_state(EquatorAngle(1.9)));
  const int q0[] = {0};
  CHECK(reduced_density(prod, q0).purity() == doctest::Approx(1.0));

  auto bell = StateVector::from_amplitudes({0.0, 1.0, 1.0, 0.0});
  auto rho = reduced_density(bell, q0);
  CHECK(rho.purity() == doctest::Approx(0.5));
  CHECK(test::near(rho.matrix()(0, 0), 0.5));
  CHECK(test::near(rho.matrix()(0, 1), 0.0));

  auto r = test::rng_for(11);
  for (int i = 0; i < 20; ++i) {
    auto s = protocol::state_after_step3(EquatorAngle(r.angle()));
    const int c[] = {1};
    auto rc = reduced_density(s, c).matrix();
    CHECK((rc - Eigen::Matrix2cd::Identity() / 2.0).norm() < 1e-12);

    auto rs = random_state(4, r);
    const int q = static_cast<int>(r.below(4));
    const int keep[] = {q};
    const double pur = reduced_density(rs, keep).purity();
    CHECK(pur >= 0.5 - 1e-12);
    CHECK(pur <= 1 + 1e-12);
  }
}

TEST_CASE("partial trace keeps order") {
  // |↓⟩_0 |↑⟩_1 |↑⟩_2, keep (2, 0): qubit 0 becomes bit 1 of the result.
  auto s = tensor({make_z_state(1), make_z_state(0), make_z_state(0)});
  const int keep[] = {2, 0};
  auto m = partial_trace(s, keep);
  CHECK(test::near(m(2, 2), 1.0));
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS(DensityMatrix(bad));
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS(DensityMatrix(bad));
  Eigen::MatrixXcd nh = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  nh(0, 1) = 0.1;
  CHECK_THROWS(DensityMatrix(nh));
  CHECK_THROWS_AS(trace_norm(nh), std::invalid_argument);
}

TEST_CASE("trace distance") {
  auto up = DensityMatrix::pure(make_z_state(0));
  auto dn = DensityMatrix::pure(make_z_state(1));
  CHECK(trace_distance(up, up) == doctest::Approx(0.0));
  CHECK(trace_distance(up, dn) == doctest::Approx(1.0));

  auto r = test::rng_for(12);
  for (int i = 0; i < 20; ++i) {
    const auto a = make_equator_state(EquatorAngle(r.angle()));
    const auto b = make_equator_state(EquatorAngle(r.angle()));
    const double expect = std::sqrt(1 - std::norm(inner_product(a, b)));
    CHECK(trace_distance(DensityMatrix::pure(a), DensityMatrix::pure(b)) == doctest::Approx(expect).epsilon(1e-10));
  }
  for (int i = 0; i < 30; ++i) {
    const auto x = random_mixed(2, r), y = random_mixed(2, r), z = random_mixed(2, r);
    const double xy = trace_distance(x, y), yx = trace_distance(y, x);
    CHECK(std::abs(xy - yx) < 1e-12);
    CHECK(xy <= trace_distance(x, z) + trace_distance(z, y) + 1e-9);
    CHECK(xy >= 0);
    CHECK(xy <= 1 + 1e-12);
  }
}

TEST_CASE("helstrom") {
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(2, 2), plus(2, 2);
  up(0, 0) = 1;
  plus.setConstant(0.5);
  auto h = helstrom(0.5 * up, 0.5 * plus);
  // Pure states at overlap 1/√2: success ½(1 + sin(π/4)).
  CHECK(h.success == doctest::Approx(0.5 * (1 + std::sqrt(0.5))));
  auto h2 = helstrom(0.5 * up, 0.5 * up);
  CHECK(h2.success == doctest::Approx(0.5));
}
