#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "fqkd/angle.hpp"
#include "fqkd/rng.hpp"

namespace fqkd {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;

/// Row-major 2x2 operator on one qubit.
using Op1 = std::array<Complex, 4>;
/// Row-major 4x4 operator on an ordered qubit pair (q0, q1); basis
/// index is b0 + 2*b1.
using Op2 = std::array<Complex, 16>;

/// Dense state of an ordered qubit register. Amplitude index bit k is the
/// z value of register qubit k (0 = up, 1 = down).
class StateVector {
 public:
  /// Zero-qubit register holding the scalar 1.
  StateVector();

  static StateVector basis(int num_qubits, std::size_t index);
  /// Normalizes the input. Length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }
  double norm() const;

  void apply(int q, const Op1& op);
  void apply(int q0, int q1, const Op2& op);
  /// Diagonal σz⊗σz phase kernel used by the Faraday rotation.
  void apply_zz_phase(int q0, int q1, Complex same, Complex differ);
  /// Appends `other` as the highest-index qubits.
  void append(const StateVector& other);

  /// Probability that qubit q is found in `ket` (a normalized 1-qubit state).
  double probability(int q, std::array<Complex, 2> ket) const;
  /// Projects qubit q onto `ket` and renormalizes. Returns the branch probability.
  double project(int q, std::array<Complex, 2> ket);

  /// Amplitudes are unnormalized after this; call renormalize().
  void project_subspace(std::span<const int> qubits, std::span<const Complex> projector);
  double renormalize();

 private:
  void check_qubit(int q) const;

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

struct Measurement {
  int outcome = 1;  ///< +1 or -1
  StateVector collapsed;
};

/// Outcome of a projective measurement that was already applied in place.
struct InPlaceMeasurement {
  int outcome = 1;
  double probability = 1.0;
};

std::array<Complex, 2> equator_ket(EquatorAngle phi);

StateVector make_equator_state(EquatorAngle phi);
StateVector make_z_state(int bit);

StateVector apply_qfr(StateVector s, int control, int target);
StateVector apply_pauli_x(StateVector s, int q);

/// Projective measurement of S_φ = cos φ σx + sin φ σy: +1 for |φ⟩, -1 for |φ+π⟩.
Measurement measure_equator(const StateVector& s, int q, EquatorAngle phi, CounterRng& rng);
Measurement measure_z(const StateVector& s, int q, CounterRng& rng);

/// In-place forms used by the round engine.
InPlaceMeasurement measure_equator_inplace(StateVector& s, int q, EquatorAngle phi, CounterRng& rng);
InPlaceMeasurement measure_z_inplace(StateVector& s, int q, CounterRng& rng);
void qfr_inplace(StateVector& s, int control, int target);
void pauli_x_inplace(StateVector& s, int q);
/// diag(1, e^{iθ})
void phase_inplace(StateVector& s, int q, double theta);

/// Two-outcome projective measurement with a projector on `qubits`
/// (dim 2^k, row-major, qubits[0] least significant). Outcome +1 is the
/// projector's range.
InPlaceMeasurement measure_projector_inplace(StateVector& s, std::span<const int> qubits,
                                             std::span<const Complex> projector, CounterRng& rng);

/// `a` occupies the low qubit indices.
StateVector tensor(const StateVector& a, const StateVector& b);
StateVector tensor(std::initializer_list<StateVector> factors);
Complex inner_product(const StateVector& a, const StateVector& b);
/// |⟨a|b⟩|² after normalizing both.
double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b);

/// Moves qubit `order[k]` of `s` to position k.
StateVector permute_qubits(const StateVector& s, std::span<const int> order);

}  // namespace fqkd
