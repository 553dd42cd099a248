#include "fqkd/impersonation.hpp"

#include <cmath>
#include <stdexcept>

namespace fqkd::adversary {

namespace r1 = one_home_reg;
using protocol::even_bit;
using protocol::odd_bit;

StateVector one_home_state(EquatorAngle alpha, EquatorAngle beta, EquatorAngle epsilon) {
  const StateVector home = make_equator_state(EquatorAngle(0.0));
  StateVector s = tensor({home, home, home, make_equator_state(alpha), make_equator_state(beta),
                          make_equator_state(epsilon)});
  qfr_inplace(s, r1::A, r1::C);
  qfr_inplace(s, r1::E, r1::C);
  qfr_inplace(s, r1::E, r1::EPrime);
  qfr_inplace(s, r1::A, r1::EPrime);
  qfr_inplace(s, r1::B, r1::D);
  qfr_inplace(s, r1::E, r1::D);
  return s;
}

ImpersonationRound impersonation_two_homes_round(std::uint64_t n, CounterRng& rng) {
  const auto with_alice = protocol::run_round(n, rng, {});
  const auto with_bob = protocol::run_round(n, rng, {});
  ImpersonationRound r;
  auto& t = r.transcript;
  t.round_index = n;
  t.alpha = with_alice.alpha;
  t.beta = with_bob.beta;
  t.outcome_alice_c = with_alice.outcome_alice_c;
  t.outcome_alice_a_z = with_alice.outcome_alice_a_z;
  t.alice_bits = with_alice.alice_bits;
  t.outcome_bob_d = with_bob.outcome_bob_d;
  t.outcome_bob_b_z = with_bob.outcome_bob_b_z;
  t.bob_bits = with_bob.bob_bits;
  r.eve_with_alice = with_alice.bob_bits;
  r.eve_with_bob = with_bob.alice_bits;
  return r;
}

ImpersonationRound impersonation_one_home_round(std::uint64_t n, CounterRng& rng) {
  ImpersonationRound r;
  auto& t = r.transcript;
  t.round_index = n;
  t.alpha = EquatorAngle(rng.angle());
  t.beta = EquatorAngle(rng.angle());
  const EquatorAngle epsilon(rng.angle());

  StateVector s = one_home_state(t.alpha, t.beta, epsilon);
  t.outcome_alice_c = measure_equator_inplace(s, r1::C, t.alpha, rng).outcome;
  t.outcome_bob_d = measure_equator_inplace(s, r1::D, t.beta, rng).outcome;
  const int eve_outcome = measure_equator_inplace(s, r1::EPrime, epsilon, rng).outcome;
  t.alice_bits.first = odd_bit(t.outcome_alice_c);
  t.bob_bits.first = odd_bit(t.outcome_bob_d);
  r.eve_with_alice.first = odd_bit(eve_outcome);
  // Eve has no travel qubit of her own towards Bob; she reuses her only odd bit.
  r.eve_with_bob.first = r.eve_with_alice.first;

  if (t.bob_bits.first == 1) pauli_x_inplace(s, r1::B);
  t.outcome_alice_a_z = measure_z_inplace(s, r1::A, rng).outcome;
  t.outcome_bob_b_z = measure_z_inplace(s, r1::B, rng).outcome;
  const int eve_z = measure_z_inplace(s, r1::E, rng).outcome;
  t.alice_bits.second = even_bit(t.outcome_alice_a_z);
  t.bob_bits.second = even_bit(t.outcome_bob_b_z);

  // Towards Alice, E plays Bob's home and would be flipped on a 1; towards
  // Bob it plays Alice's home and stays put.
  r.eve_with_alice.second = static_cast<std::uint8_t>(even_bit(eve_z) ^ r.eve_with_alice.first);
  r.eve_with_bob.second = even_bit(eve_z);
  return r;
}

ImpersonationRound impersonation_round(ImpersonationVariant v, std::uint64_t n, CounterRng& rng) {
  return v == ImpersonationVariant::OneHome ? impersonation_one_home_round(n, rng)
                                            : impersonation_two_homes_round(n, rng);
}

ImpersonationReport impersonation_report(ImpersonationVariant v, std::uint64_t seed, std::size_t rounds) {
  if (rounds == 0) throw std::invalid_argument("impersonation_report: rounds must be positive");
  std::size_t mismatch = 0, ea_odd = 0, ea_even = 0, eb_odd = 0, eb_even = 0;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (std::size_t n = 0; n < rounds; ++n) {
    CounterRng rng(seed, n);
    const auto r = impersonation_round(v, n, rng);
    const auto& t = r.transcript;
    mismatch += t.alice_bits.first != t.bob_bits.first;
    ea_odd += r.eve_with_alice.first == t.alice_bits.first;
    ea_even += r.eve_with_alice.second == t.alice_bits.second;
    eb_odd += r.eve_with_bob.first == t.bob_bits.first;
    eb_even += r.eve_with_bob.second == t.bob_bits.second;
    const double a = t.alice_bits.first, b = t.bob_bits.first;
    sa += a;
    sb += b;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  const double nn = static_cast<double>(rounds);
  ImpersonationReport rep;
  rep.rounds = rounds;
  rep.detection_frequency = mismatch / nn;
  rep.detection_sigma = std::sqrt(rep.detection_frequency * (1.0 - rep.detection_frequency) / nn);
  rep.eve_alice_odd_agreement = ea_odd / nn;
  rep.eve_alice_even_agreement = ea_even / nn;
  rep.eve_bob_odd_agreement = eb_odd / nn;
  rep.eve_bob_even_agreement = eb_even / nn;
  const double cov = sab / nn - (sa / nn) * (sb / nn);
  const double va = saa / nn - (sa / nn) * (sa / nn);
  const double vb = sbb / nn - (sb / nn) * (sb / nn);
  rep.odd_bit_correlation = (va > 0 && vb > 0) ? cov / std::sqrt(va * vb) : 0.0;
  return rep;
}

}  // namespace fqkd::adversary
