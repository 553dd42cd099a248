#include "fqkd/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fqkd::protocol {

std::string_view to_string(Leg leg) {
  switch (leg) {
    case Leg::CAliceToBob: return "C:A->B";
    case Leg::CBobToAlice: return "C:B->A";
    case Leg::DBobToAlice: return "D:B->A";
    case Leg::DAliceToBob: return "D:A->B";
  }
  return "?";
}

namespace {

void dispatch(Leg leg, std::span<const ChannelHook> hooks, StateVector& s, CounterRng& rng, EveRecord& eve) {
  for (const auto& h : hooks)
    if (h.leg == leg && h.transform) h.transform(s, rng, eve);
}

StateVector initial_register(EquatorAngle alpha, EquatorAngle beta) {
  const StateVector home = make_equator_state(EquatorAngle(0.0));
  return tensor({home, home, make_equator_state(alpha), make_equator_state(beta)});
}

}  // namespace

StateVector run_channel(EquatorAngle alpha, EquatorAngle beta, std::span<const ChannelHook> hooks,
                        CounterRng& rng, EveRecord& eve, const StepProbe& probe) {
  StateVector s = initial_register(alpha, beta);

  qfr_inplace(s, reg::A, reg::C);
  if (probe) probe(ProbePoint::Step3, s);
  dispatch(Leg::CAliceToBob, hooks, s, rng, eve);

  qfr_inplace(s, reg::B, reg::C);
  if (probe) probe(ProbePoint::Step4, s);
  dispatch(Leg::CBobToAlice, hooks, s, rng, eve);

  qfr_inplace(s, reg::B, reg::D);
  dispatch(Leg::DBobToAlice, hooks, s, rng, eve);

  qfr_inplace(s, reg::A, reg::D);
  if (probe) probe(ProbePoint::Step7, s);
  dispatch(Leg::DAliceToBob, hooks, s, rng, eve);
  return s;
}

RoundOutcome run_round_full(std::uint64_t n, CounterRng& rng, std::span<const ChannelHook> hooks,
                            const StepProbe& probe) {
  RoundOutcome out;
  auto& t = out.transcript;
  t.round_index = n;
  t.alpha = EquatorAngle(rng.angle());
  t.beta = EquatorAngle(rng.angle());

  StateVector s = run_channel(t.alpha, t.beta, hooks, rng, out.eve, probe);

  t.outcome_alice_c = measure_equator_inplace(s, reg::C, t.alpha, rng).outcome;
  t.outcome_bob_d = measure_equator_inplace(s, reg::D, t.beta, rng).outcome;
  t.alice_bits.first = odd_bit(t.outcome_alice_c);
  t.bob_bits.first = odd_bit(t.outcome_bob_d);

  if (t.bob_bits.first == 1) pauli_x_inplace(s, reg::B);

  t.outcome_alice_a_z = measure_z_inplace(s, reg::A, rng).outcome;
  t.outcome_bob_b_z = measure_z_inplace(s, reg::B, rng).outcome;
  t.alice_bits.second = even_bit(t.outcome_alice_a_z);
  t.bob_bits.second = even_bit(t.outcome_bob_b_z);

  out.final_state = std::move(s);
  return out;
}

RoundTranscript run_round(std::uint64_t n, CounterRng& rng, std::span<const ChannelHook> hooks) {
  return run_round_full(n, rng, hooks).transcript;
}

StateVector state_after_step3(EquatorAngle alpha) {
  StateVector s = tensor(make_equator_state(EquatorAngle(0.0)), make_equator_state(alpha));
  qfr_inplace(s, 0, 1);
  return s;
}

StateVector state_before_measurement(EquatorAngle alpha, EquatorAngle beta) {
  CounterRng unused(0, 0);
  EveRecord eve;
  return run_channel(alpha, beta, {}, unused, eve);
}

Verification verify_keys(std::span<RoundTranscript> transcripts, std::size_t m, CounterRng& rng) {
  const std::size_t n = transcripts.size();
  if (m > n) throw std::invalid_argument("verify_keys: more test bits than rounds");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(idx[k], idx[j]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());

  Verification v;
  v.tested.reserve(m);
  for (std::size_t i : idx) {
    auto& t = transcripts[i];
    t.used_for_test = true;
    if (t.alice_bits.first != t.bob_bits.first) ++v.mismatches;
    v.tested.push_back(odd_key_position(i));
  }
  v.detected = v.mismatches > 0;
  return v;
}

KeyLedger build_ledger(std::span<const RoundTranscript> transcripts, const Verification& v) {
  KeyLedger ledger;
  ledger.alice_key.reserve(2 * transcripts.size());
  ledger.bob_key.reserve(2 * transcripts.size());
  for (const auto& t : transcripts) {
    ledger.alice_key.push_back(t.alice_bits.first);
    ledger.alice_key.push_back(t.alice_bits.second);
    ledger.bob_key.push_back(t.bob_bits.first);
    ledger.bob_key.push_back(t.bob_bits.second);
  }
  for (std::size_t pos : v.tested) {
    if (pos == 0 || pos % 2 == 0 || pos > ledger.alice_key.size())
      throw std::invalid_argument("build_ledger: test index is not an odd key position");
  }
  ledger.test_indices = v.tested;
  ledger.detected = v.detected;
  return ledger;
}

std::vector<std::uint8_t> final_key(const KeyLedger& ledger, Party party) {
  if (ledger.detected) throw std::logic_error("final_key: verification detected an eavesdropper");
  const auto& key = party == Party::Alice ? ledger.alice_key : ledger.bob_key;
  std::vector<bool> drop(key.size(), false);
  for (std::size_t pos : ledger.test_indices) {
    drop.at(pos - 1) = true;
    drop.at(pos) = true;
  }
  std::vector<std::uint8_t> out;
  out.reserve(key.size());
  for (std::size_t i = 0; i < key.size(); ++i)
    if (!drop[i]) out.push_back(key[i]);
  return out;
}

}  // namespace fqkd::protocol
