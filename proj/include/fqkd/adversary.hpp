#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fqkd/angle.hpp"
#include "fqkd/protocol.hpp"
#include "fqkd/state_vector.hpp"

namespace fqkd::adversary {

/// Ancillae appended by the general attack, in hook order.
namespace reg {
inline constexpr int E = 4;       ///< C on its way to Bob
inline constexpr int F = 5;       ///< C on its way back to Alice
inline constexpr int EPrime = 6;  ///< D on its way to Alice
inline constexpr int FPrime = 7;  ///< D on its way back to Bob
inline constexpr int kCount = 8;
}  // namespace reg

/// Collective-attack parameters. Overlaps are cos x = ⟨ε00|ε11⟩ and
/// cos y = ⟨η00|η11⟩; the primed pair belongs to E′, F′.
struct GeneralAttackSpec {
  EquatorAngle gamma;
  double overlap_c_x = 1.0;
  double overlap_c_y = 1.0;
  double overlap_c_x_primed = 1.0;
  double overlap_c_y_primed = 1.0;

  static GeneralAttackSpec symmetric(EquatorAngle gamma, double c_x, double c_y);
  static GeneralAttackSpec balanced(EquatorAngle gamma, double c) { return symmetric(gamma, c, c); }

  bool is_symmetric() const {
    return overlap_c_x == overlap_c_x_primed && overlap_c_y == overlap_c_y_primed;
  }
  /// Throws std::invalid_argument for overlaps outside [0, 1].
  void validate() const;
};

struct AncillaPair {
  StateVector v0;  ///< |0⟩
  StateVector v1;  ///< c|0⟩ + √(1−c²)|1⟩
};
AncillaPair make_ancilla_pair(double c);

/// Isometry on (travel, fresh ancilla): |b⟩|0⟩ ↦ |b⟩|0⟩ and
/// |b̄⟩|0⟩ ↦ |b̄⟩(c|0⟩ + √(1−c²)|1⟩), extended to a unitary by a
/// controlled rotation. Basis index is travel + 2·ancilla.
Op2 attack_unitary(EquatorAngle basis, double c);

/// Forward legs entangle in {|γ⟩, |γ̄⟩}; return legs in {|γ+π/2⟩, |γ−π/2⟩}.
std::vector<protocol::ChannelHook> general_attack_hooks(const GeneralAttackSpec& spec);

/// Relative angle α̃ = α − γ + π/2 (same form for β̃).
double relative_angle(EquatorAngle travel, EquatorAngle gamma);

/// The vectors |1⟩..|6⟩ on E⊗F (E least significant) and |1′⟩..|6′⟩ on E′⊗F′.
struct EveSubspaceDecomposition {
  std::array<Eigen::Vector4cd, 6> ef;
  std::array<Eigen::Vector4cd, 6> ef_primed;

  /// ⟨i|j⟩ with 1-based labels.
  Complex overlap(int i, int j, bool primed = false) const;
  /// ⟨i|j⟩/√(⟨i|i⟩⟨j|j⟩); zero if either vector vanishes.
  Complex normalized_overlap(int i, int j, bool primed = false) const;
};

EveSubspaceDecomposition build_subspace_decomposition(double alpha_rel, double beta_rel,
                                                      const GeneralAttackSpec& spec);

/// Eve's two-stage measurement on one ancilla pair. Stage one projects on
/// span{|1⟩, |4⟩} and discriminates |1⟩ from |4⟩; stage two runs Helstrom
/// between the residual components u = |2⟩+|3⟩ and v = |5⟩+|6⟩. Neither
/// stage depends on the round's angles.
struct HomeDiscriminator {
  /// Projector (4x4, row-major basis e + 2f) whose range means "home was ↑".
  Eigen::Matrix4cd guess_up;

  static HomeDiscriminator for_overlaps(double c_x, double c_y);
};

struct EveGuess {
  std::uint8_t alice_home = 0;  ///< A's z value, ↑ ↦ 0
  std::uint8_t bob_home = 0;    ///< B's z value before step 9, ↑ ↦ 0

  /// Guess for K_{2n−1}: anti-aligned homes give 1.
  std::uint8_t odd_key() const { return static_cast<std::uint8_t>(alice_home ^ bob_home); }
  /// Guess for K_{2n} (Alice's even bit).
  std::uint8_t even_key() const { return alice_home; }
};

struct EveStrategy {
  HomeDiscriminator ef;        ///< reveals B
  HomeDiscriminator ef_primed; ///< reveals A

  static EveStrategy for_spec(const GeneralAttackSpec& spec);
};

/// Measures (E, F) then (E′, F′) with the two-stage strategy. The state
/// is collapsed in place.
EveGuess eve_infer_keys(StateVector& post_attack_state, const GeneralAttackSpec& spec, CounterRng& rng);
EveGuess eve_infer_keys(StateVector& post_attack_state, const EveStrategy& strategy, CounterRng& rng);

/// Measure-and-resend on every leg; outcomes (+1 for |γ⟩ or |γ+π/2⟩) are
/// appended to the round's EveRecord in leg order.
std::vector<protocol::ChannelHook> intercept_resend_hooks(EquatorAngle gamma);

/// Home-qubit guesses from the four intercept outcomes. Equal outcomes on
/// a travel qubit's two legs mean the home it met between them was ↑:
/// C's legs reveal B, D's legs reveal A.
EveGuess intercept_guess(const protocol::EveRecord& record);

}  // namespace fqkd::adversary
