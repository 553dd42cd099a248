#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fqkd/angle.hpp"
#include "fqkd/rng.hpp"
#include "fqkd/state_vector.hpp"

namespace fqkd::protocol {

/// Register layout of one round. Adversary ancillae are appended after D.
namespace reg {
inline constexpr int A = 0;  ///< Alice's home qubit, prepared at φ = 0
inline constexpr int B = 1;  ///< Bob's home qubit, prepared at φ = 0
inline constexpr int C = 2;  ///< Alice's travel qubit, prepared at α
inline constexpr int D = 3;  ///< Bob's travel qubit, prepared at β
inline constexpr int kCount = 4;
}  // namespace reg

enum class Leg {
  CAliceToBob,  ///< step 3
  CBobToAlice,  ///< step 4
  DBobToAlice,  ///< step 6
  DAliceToBob,  ///< step 7
};
std::string_view to_string(Leg leg);

/// Classical data an adversary collects during one round.
struct EveRecord {
  std::vector<int> outcomes;
};

/// Acts on the whole register; may append ancillae.
using HookFn = std::function<void(StateVector&, CounterRng&, EveRecord&)>;

struct ChannelHook {
  Leg leg;
  HookFn transform;
};

struct KeyBits {
  std::uint8_t first = 0;   ///< K_{2n-1}
  std::uint8_t second = 0;  ///< K_{2n}
  friend bool operator==(KeyBits, KeyBits) = default;
};

struct RoundTranscript {
  std::uint64_t round_index = 0;
  EquatorAngle alpha;
  EquatorAngle beta;
  int outcome_alice_c = 1;
  int outcome_bob_d = 1;
  int outcome_alice_a_z = 1;
  int outcome_bob_b_z = 1;
  KeyBits alice_bits;
  KeyBits bob_bits;
  bool used_for_test = false;
};

/// Step-8 mapping: +1 -> 1, -1 -> 0.
inline std::uint8_t odd_bit(int equator_outcome) { return equator_outcome == +1 ? 1 : 0; }
/// Step-10 mapping: +1 -> 0, -1 -> 1.
inline std::uint8_t even_bit(int z_outcome) { return z_outcome == +1 ? 0 : 1; }

enum class ProbePoint { Step3, Step4, Step7 };
/// Sees the register right after the named step's QFR, before any hook.
using StepProbe = std::function<void(ProbePoint, const StateVector&)>;

struct RoundOutcome {
  RoundTranscript transcript;
  StateVector final_state;
  EveRecord eve;
};

/// Steps 1-7 with fixed angles; returns the register entering step 8.
StateVector run_channel(EquatorAngle alpha, EquatorAngle beta, std::span<const ChannelHook> hooks,
                        CounterRng& rng, EveRecord& eve, const StepProbe& probe = {});

/// One protocol iteration. Draw order on `rng`: α, β, then whatever the
/// hooks consume, then the four measurements (C, D, A, B).
RoundOutcome run_round_full(std::uint64_t n, CounterRng& rng, std::span<const ChannelHook> hooks,
                            const StepProbe& probe = {});
RoundTranscript run_round(std::uint64_t n, CounterRng& rng, std::span<const ChannelHook> hooks);

/// Normalized (A, C) state after step 3; A is qubit 0.
StateVector state_after_step3(EquatorAngle alpha);
/// Register (A, B, C, D) entering step 8 with the identity channel.
StateVector state_before_measurement(EquatorAngle alpha, EquatorAngle beta);

struct Verification {
  bool detected = false;
  std::size_t mismatches = 0;
  /// 1-based key positions K_{2k-1}, ascending.
  std::vector<std::size_t> tested;
};

/// Samples `m` rounds without replacement and compares their odd bits.
/// Marks the sampled transcripts as used for the test.
Verification verify_keys(std::span<RoundTranscript> transcripts, std::size_t m, CounterRng& rng);

inline std::size_t odd_key_position(std::size_t round_offset) { return 2 * round_offset + 1; }

struct KeyLedger {
  std::vector<std::uint8_t> alice_key;  ///< K_1 ... K_2N
  std::vector<std::uint8_t> bob_key;
  std::vector<std::size_t> test_indices;
  bool detected = false;
};

KeyLedger build_ledger(std::span<const RoundTranscript> transcripts, const Verification& v);

enum class Party { Alice, Bob };

/// Key bits left after dropping each tested odd bit together with its even
/// partner. Throws std::logic_error when the ledger recorded a detection.
std::vector<std::uint8_t> final_key(const KeyLedger& ledger, Party party);

}  // namespace fqkd::protocol
