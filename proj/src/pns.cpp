#include "fqkd/pns.hpp"

#include <cmath>
#include <stdexcept>

#include "fqkd/density_matrix.hpp"

namespace fqkd::adversary {

namespace {

using protocol::even_bit;
using protocol::odd_bit;

constexpr double kEveRotation = kPi / 2.0;

void qfr_all(StateVector& s, int home, std::initializer_list<int> photons) {
  for (int p : photons) qfr_inplace(s, home, p);
}

StateVector build_three_photon(EquatorAngle alpha, EquatorAngle beta) {
  enum { A, B, E1, E2, E1p, E2p, C, D };
  const StateVector home = make_equator_state(EquatorAngle(0.0));
  const StateVector pa = make_equator_state(alpha);
  const StateVector pb = make_equator_state(beta);
  StateVector s = tensor({home, home, pa, pa, pb, pb, pa, pb});
  qfr_all(s, A, {E1, E2, C});
  qfr_all(s, B, {E1p, E2p, D});
  // E1 and E1′ split off here.
  qfr_all(s, B, {E2, C});
  qfr_all(s, A, {E2p, D});
  phase_inplace(s, E1, kEveRotation);
  phase_inplace(s, E1p, kEveRotation);
  return s;
}

StateVector build_four_home(EquatorAngle alpha, EquatorAngle beta) {
  enum { C, D, A1, A2, B1, B2, E1, E2, E1p, E2p };
  const StateVector home = make_equator_state(EquatorAngle(0.0));
  const StateVector pa = make_equator_state(alpha);
  const StateVector pb = make_equator_state(beta);
  StateVector s = tensor({pa, pb, home, home, home, home, pa, pa, pb, pb});
  qfr_all(s, A1, {C, E1, E2});
  qfr_all(s, B1, {C, E2});
  qfr_all(s, B2, {C, E2});
  qfr_inplace(s, A2, C);
  qfr_all(s, B1, {D, E1p, E2p});
  qfr_all(s, A1, {D, E2p});
  qfr_all(s, A2, {D, E2p});
  qfr_inplace(s, B2, D);
  phase_inplace(s, E1, kEveRotation);
  phase_inplace(s, E1p, kEveRotation);
  return s;
}

std::vector<Complex> row_major(const Eigen::MatrixXcd& m) {
  std::vector<Complex> out(static_cast<std::size_t>(m.rows() * m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  return out;
}

PnsConditional finish(Eigen::MatrixXcd w0, Eigen::MatrixXcd w1) {
  PnsConditional out;
  const double p0 = w0.trace().real();
  const double p1 = w1.trace().real();
  if (p0 > 0.0 && p1 > 0.0) {
    const Eigen::MatrixXcd rho0 = w0 / p0;
    const Eigen::MatrixXcd rho1 = w1 / p1;
    out.trace_distance = std::min(1.0, 0.5 * trace_norm(Eigen::MatrixXcd(rho0 - rho1)));
  }
  out.helstrom_success = helstrom(w1, w0).success;
  out.weighted[0] = std::move(w0);
  out.weighted[1] = std::move(w1);
  return out;
}

}  // namespace

PnsLayout pns_layout(PnsVariant v) {
  if (v == PnsVariant::ThreePhoton)
    return {{"A", "B", "E1", "E2", "E1'", "E2'", "C", "D"}, 6, 7, {0}, {1}, {2, 3, 4, 5}};
  return {{"C", "D", "A1", "A2", "B1", "B2", "E1", "E2", "E1'", "E2'"}, 0, 1, {2, 3}, {4, 5}, {6, 7, 8, 9}};
}

PnsScenario pns_build(PnsVariant v, EquatorAngle alpha, EquatorAngle beta) {
  PnsScenario sc;
  sc.variant = v;
  sc.alpha = alpha;
  sc.beta = beta;
  sc.layout = pns_layout(v);
  sc.state = v == PnsVariant::ThreePhoton ? build_three_photon(alpha, beta) : build_four_home(alpha, beta);
  return sc;
}

PnsConditional pns_conditional_states(const PnsScenario& sc) {
  Eigen::MatrixXcd w[2];
  for (int k = 0; k < 2; ++k) {
    StateVector s = sc.state;
    const EquatorAngle basis = k == 1 ? sc.alpha : sc.alpha.bar();
    const double p = s.probability(sc.layout.c, equator_ket(basis));
    if (p <= 0.0) {
      const Eigen::Index d = Eigen::Index{1} << sc.layout.eve.size();
      w[k] = Eigen::MatrixXcd::Zero(d, d);
      continue;
    }
    s.project(sc.layout.c, equator_ket(basis));
    w[k] = p * partial_trace(s, sc.layout.eve);
  }
  return finish(std::move(w[0]), std::move(w[1]));
}

PnsConditional pns_angle_blind(PnsVariant v, int grid) {
  if (grid < 1) throw std::invalid_argument("pns_angle_blind: grid must be positive");
  const Eigen::Index d = Eigen::Index{1} << pns_layout(v).eve.size();
  Eigen::MatrixXcd w0 = Eigen::MatrixXcd::Zero(d, d), w1 = Eigen::MatrixXcd::Zero(d, d);
  const double weight = 1.0 / (static_cast<double>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const auto sc = pns_build(v, EquatorAngle(kTwoPi * i / grid), EquatorAngle(kTwoPi * j / grid));
      const auto cond = pns_conditional_states(sc);
      w0 += weight * cond.weighted[0];
      w1 += weight * cond.weighted[1];
    }
  return finish(std::move(w0), std::move(w1));
}

PnsRound pns_round(PnsVariant v, std::uint64_t n, CounterRng& rng, bool eve_has_photons) {
  PnsRound r;
  auto& t = r.transcript;
  t.round_index = n;
  t.alpha = EquatorAngle(rng.angle());
  t.beta = EquatorAngle(rng.angle());
  const PnsScenario sc = pns_build(v, t.alpha, t.beta);
  const auto& lay = sc.layout;

  Eigen::MatrixXcd guess_one;
  if (eve_has_photons) {
    const PnsConditional cond = pns_conditional_states(sc);
    r.trace_distance = cond.trace_distance;
    guess_one = helstrom(cond.weighted[1], cond.weighted[0]).guess0;
  }

  StateVector s = sc.state;
  t.outcome_alice_c = measure_equator_inplace(s, lay.c, t.alpha, rng).outcome;
  t.outcome_bob_d = measure_equator_inplace(s, lay.d, t.beta, rng).outcome;
  t.alice_bits.first = odd_bit(t.outcome_alice_c);
  t.bob_bits.first = odd_bit(t.outcome_bob_d);

  if (v == PnsVariant::ThreePhoton) {
    if (t.bob_bits.first == 1) pauli_x_inplace(s, lay.bob_homes[0]);
  } else {
    // Four homes: equal home parities come with K = 1, so Bob corrects on 0.
    if (t.bob_bits.first == 0) pauli_x_inplace(s, lay.bob_homes[0]);
  }
  std::uint8_t a_bits = 0, b_bits = 0;
  for (std::size_t k = 0; k < lay.alice_homes.size(); ++k) {
    const int z = measure_z_inplace(s, lay.alice_homes[k], rng).outcome;
    if (k == 0) t.outcome_alice_a_z = z;
    a_bits ^= even_bit(z);
  }
  for (std::size_t k = 0; k < lay.bob_homes.size(); ++k) {
    const int z = measure_z_inplace(s, lay.bob_homes[k], rng).outcome;
    if (k == 0) t.outcome_bob_b_z = z;
    b_bits ^= even_bit(z);
  }
  t.alice_bits.second = a_bits;
  t.bob_bits.second = b_bits;

  if (eve_has_photons) {
    const auto proj = row_major(guess_one);
    r.eve_odd_guess = measure_projector_inplace(s, lay.eve, proj, rng).outcome == +1 ? 1 : 0;
  } else {
    r.eve_odd_guess = rng.bernoulli(0.5) ? 1 : 0;
  }
  return r;
}

PnsLeakageReport pns_leakage(PnsVariant v, std::uint64_t seed, std::size_t rounds, bool eve_has_photons) {
  if (rounds == 0) throw std::invalid_argument("pns_leakage: rounds must be positive");
  PnsLeakageReport rep;
  rep.rounds = rounds;
  std::size_t correct = 0, mismatch = 0;
  double td_min = 1.0, td_sum = 0.0;
  for (std::size_t n = 0; n < rounds; ++n) {
    CounterRng rng(seed, n);
    const PnsRound r = pns_round(v, n, rng, eve_has_photons);
    correct += r.eve_odd_guess == r.transcript.alice_bits.first;
    mismatch += r.transcript.alice_bits.first != r.transcript.bob_bits.first;
    td_min = std::min(td_min, r.trace_distance);
    td_sum += r.trace_distance;
  }
  const double nn = static_cast<double>(rounds);
  rep.eve_key_accuracy = correct / nn;
  rep.detection_frequency = mismatch / nn;
  rep.trace_distance = td_min;
  rep.trace_distance_mean = td_sum / nn;
  if (eve_has_photons) {
    const auto blind = pns_angle_blind(v);
    rep.angle_blind_trace_distance = blind.trace_distance;
    rep.angle_blind_accuracy = blind.helstrom_success;
  }
  return rep;
}

}  // namespace fqkd::adversary
