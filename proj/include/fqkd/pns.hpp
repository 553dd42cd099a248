#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fqkd/protocol.hpp"

namespace fqkd::adversary {

enum class PnsVariant { ThreePhoton, FourHome };

/// Three-photon register: A0 B1 E1 E2 E1′ E2′ C D (C at 6, D at 7).
/// E1, E2 and C come from Alice's pulse at α; E1′, E2′, D from Bob's at β.
/// Eve keeps E1 after it met A and E2 after it met A and B (mirrored for
/// the primed photons) and rotates E1, E1′ by diag(1, i).
///
/// Four-home register: C0 D1 A1 A2 B1 B2 E1 E2 E1′ E2′. C meets A1, then
/// B1 and B2 at Bob, then A2 on its way home; D meets B1, then A1 and A2,
/// then B2. Eve keeps E1 after A1 and E2 after A1, B1, B2 (mirrored for
/// the primed photons) and applies the same rotation to E1, E1′.
struct PnsLayout {
  std::vector<std::string> names;
  int c = 0;
  int d = 0;
  std::vector<int> alice_homes;
  std::vector<int> bob_homes;
  std::vector<int> eve;
};

PnsLayout pns_layout(PnsVariant v);

struct PnsScenario {
  PnsVariant variant = PnsVariant::ThreePhoton;
  EquatorAngle alpha;
  EquatorAngle beta;
  PnsLayout layout;
  /// Register before Alice and Bob measure.
  StateVector state;
};

PnsScenario pns_build(PnsVariant v, EquatorAngle alpha, EquatorAngle beta);

/// Eve's (unnormalized) states given Alice's odd bit: index 0 for K = 0,
/// index 1 for K = 1. Traces of the pair sum to one.
struct PnsConditional {
  Eigen::MatrixXcd weighted[2];
  double trace_distance = 0.0;  ///< between the normalized states
  double helstrom_success = 0.5;
};

PnsConditional pns_conditional_states(const PnsScenario& scenario);

struct PnsRound {
  protocol::RoundTranscript transcript;
  std::uint8_t eve_odd_guess = 0;
  double trace_distance = 0.0;
};

/// Draw order: α, β, C, D, homes, Eve's measurement. With
/// `eve_has_photons` false Eve's photons are traced out and she guesses
/// with a fair coin.
PnsRound pns_round(PnsVariant v, std::uint64_t n, CounterRng& rng, bool eve_has_photons = true);

struct PnsLeakageReport {
  std::size_t rounds = 0;
  double eve_key_accuracy = 0.0;
  double detection_frequency = 0.0;
  /// Minimum over rounds of the trace distance with known (α, β).
  double trace_distance = 0.0;
  double trace_distance_mean = 0.0;
  /// Eve's conditional states averaged over (α, β): what an eavesdropper
  /// who never learns the angles can use.
  double angle_blind_trace_distance = 0.0;
  double angle_blind_accuracy = 0.5;
};

PnsLeakageReport pns_leakage(PnsVariant v, std::uint64_t seed, std::size_t rounds, bool eve_has_photons = true);

/// Exact angle average on a uniform grid of `grid`×`grid` points.
PnsConditional pns_angle_blind(PnsVariant v, int grid = 8);

}  // namespace fqkd::adversary
