#pragma once

#include <cstddef>
#include <cstdint>

#include "fqkd/protocol.hpp"

namespace fqkd::adversary {

/// Register of the one-home impersonation scenario.
namespace one_home_reg {
inline constexpr int A = 0;
inline constexpr int B = 1;
inline constexpr int E = 2;       ///< Eve's only home qubit
inline constexpr int C = 3;       ///< Alice's travel qubit
inline constexpr int D = 4;       ///< Bob's travel qubit
inline constexpr int EPrime = 5;  ///< Eve's travel qubit, sent to Alice in place of D
inline constexpr int kCount = 6;
}  // namespace one_home_reg

enum class ImpersonationVariant { OneHome, TwoHomes };

/// Entering the measurements: C meets A then E, E′ meets E then A,
/// D meets B then E. Every home starts at φ = 0.
StateVector one_home_state(EquatorAngle alpha, EquatorAngle beta, EquatorAngle epsilon);

struct ImpersonationRound {
  /// Alice-side fields come from Alice's run, Bob-side fields from Bob's.
  protocol::RoundTranscript transcript;
  protocol::KeyBits eve_with_alice;
  protocol::KeyBits eve_with_bob;
};

/// Eve runs two independent protocol instances, one per victim. Draws
/// Alice's instance first.
ImpersonationRound impersonation_two_homes_round(std::uint64_t n, CounterRng& rng);
/// Draw order: α, β, ε, then measurements of C, D, E′, A, B, E.
ImpersonationRound impersonation_one_home_round(std::uint64_t n, CounterRng& rng);
ImpersonationRound impersonation_round(ImpersonationVariant v, std::uint64_t n, CounterRng& rng);

struct ImpersonationReport {
  std::size_t rounds = 0;
  /// Fraction of rounds whose odd bits disagree between Alice and Bob.
  double detection_frequency = 0.0;
  double detection_sigma = 0.0;
  double eve_alice_odd_agreement = 0.0;
  double eve_alice_even_agreement = 0.0;
  double eve_bob_odd_agreement = 0.0;
  double eve_bob_even_agreement = 0.0;
  /// Pearson correlation of Alice's and Bob's odd bits.
  double odd_bit_correlation = 0.0;
};

/// Round n uses the stream (seed, n).
ImpersonationReport impersonation_report(ImpersonationVariant v, std::uint64_t seed, std::size_t rounds);
inline ImpersonationReport impersonation_two_homes(std::uint64_t seed, std::size_t rounds) {
  return impersonation_report(ImpersonationVariant::TwoHomes, seed, rounds);
}
inline ImpersonationReport impersonation_one_home(std::uint64_t seed, std::size_t rounds) {
  return impersonation_report(ImpersonationVariant::OneHome, seed, rounds);
}

}  // namespace fqkd::adversary
