#include "fqkd/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fqkd {

namespace {

constexpr double kNormTolerance = 1e-12;

std::size_t bit(int q) { return std::size_t{1} << q; }

std::vector<std::size_t> local_offsets(std::span<const int> qubits) {
  std::vector<std::size_t> offsets(std::size_t{1} << qubits.size(), 0);
  for (std::size_t local = 0; local < offsets.size(); ++local)
    for (std::size_t k = 0; k < qubits.size(); ++k)
      if (local & (std::size_t{1} << k)) offsets[local] |= bit(qubits[k]);
  return offsets;
}

std::size_t mask_of(std::span<const int> qubits) {
  std::size_t m = 0;
  for (int q : qubits) m |= bit(q);
  return m;
}

}  // namespace

StateVector::StateVector() : amps_{Complex{1.0, 0.0}} {}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 0 || num_qubits > kMaxQubits)
    throw std::invalid_argument("StateVector::basis: qubit count out of range");
  StateVector s;
  s.num_qubits_ = num_qubits;
  s.amps_.assign(std::size_t{1} << num_qubits, Complex{});
  if (index >= s.amps_.size()) throw std::invalid_argument("StateVector::basis: index out of range");
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("StateVector::from_amplitudes: length must be a power of two");
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  if (q > kMaxQubits) throw std::invalid_argument("StateVector::from_amplitudes: too many qubits");
  StateVector s;
  s.num_qubits_ = q;
  s.amps_ = std::move(amplitudes);
  if (s.renormalize() <= 0.0)
    throw std::invalid_argument("StateVector::from_amplitudes: zero vector");
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

double StateVector::renormalize() {
  const double n = norm();
  if (n > 0.0) {
    const double inv = 1.0 / n;
    for (auto& a : amps_) a *= inv;
  }
  return n;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_)
    throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + "-qubit register");
}

void StateVector::apply(int q, const Op1& op) {
  check_qubit(q);
  const std::size_t b = bit(q);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & b) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | b];
    amps_[i] = op[0] * a0 + op[1] * a1;
    amps_[i | b] = op[2] * a0 + op[3] * a1;
  }
}

void StateVector::apply(int q0, int q1, const Op2& op) {
  check_qubit(q0);
  check_qubit(q1);
  if (q0 == q1) throw std::invalid_argument("two-qubit operator needs distinct qubits");
  const std::size_t b0 = bit(q0), b1 = bit(q1);
  const std::array<std::size_t, 4> off = {0, b0, b1, b0 | b1};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & (b0 | b1)) continue;
    std::array<Complex, 4> in;
    for (int k = 0; k < 4; ++k) in[k] = amps_[i | off[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc{};
      for (int c = 0; c < 4; ++c) acc += op[4 * r + c] * in[c];
      amps_[i | off[r]] = acc;
    }
  }
}

void StateVector::apply_zz_phase(int q0, int q1, Complex same, Complex differ) {
  check_qubit(q0);
  check_qubit(q1);
  if (q0 == q1) throw std::invalid_argument("apply_qfr: control and target must differ");
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const bool z0 = (i >> q0) & 1u;
    const bool z1 = (i >> q1) & 1u;
    amps_[i] *= (z0 == z1) ? same : differ;
  }
}

void StateVector::append(const StateVector& other) {
  if (num_qubits_ + other.num_qubits_ > kMaxQubits)
    throw std::invalid_argument("register would exceed the qubit limit");
  std::vector<Complex> out(amps_.size() * other.amps_.size());
  for (std::size_t j = 0; j < other.amps_.size(); ++j)
    for (std::size_t i = 0; i < amps_.size(); ++i) out[j * amps_.size() + i] = amps_[i] * other.amps_[j];
  amps_ = std::move(out);
  num_qubits_ += other.num_qubits_;
}

double StateVector::probability(int q, std::array<Complex, 2> ket) const {
  check_qubit(q);
  const std::size_t b = bit(q);
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & b) continue;
    p += std::norm(std::conj(ket[0]) * amps_[i] + std::conj(ket[1]) * amps_[i | b]);
  }
  return p;
}

double StateVector::project(int q, std::array<Complex, 2> ket) {
  const Op1 proj = {ket[0] * std::conj(ket[0]), ket[0] * std::conj(ket[1]),
                    ket[1] * std::conj(ket[0]), ket[1] * std::conj(ket[1])};
  apply(q, proj);
  const double n = renormalize();
  return n * n;
}

void StateVector::project_subspace(std::span<const int> qubits, std::span<const Complex> projector) {
  for (int q : qubits) check_qubit(q);
  const auto offsets = local_offsets(qubits);
  const std::size_t d = offsets.size();
  if (projector.size() != d * d) throw std::invalid_argument("projector has wrong dimension");
  const std::size_t mask = mask_of(qubits);
  std::vector<Complex> in(d);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    for (std::size_t k = 0; k < d; ++k) in[k] = amps_[i | offsets[k]];
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < d; ++c) acc += projector[r * d + c] * in[c];
      amps_[i | offsets[r]] = acc;
    }
  }
}

std::array<Complex, 2> equator_ket(EquatorAngle phi) {
  const double h = 1.0 / std::sqrt(2.0);
  return {Complex{h, 0.0}, std::polar(h, phi.radians())};
}

StateVector make_equator_state(EquatorAngle phi) {
  const auto k = equator_ket(phi);
  return StateVector::from_amplitudes({k[0], k[1]});
}

StateVector make_z_state(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("make_z_state: bit must be 0 or 1");
  return StateVector::basis(1, static_cast<std::size_t>(b));
}

void qfr_inplace(StateVector& s, int control, int target) {
  const double h = std::sqrt(0.5);
  s.apply_zz_phase(control, target, Complex{h, -h}, Complex{h, h});
}

void pauli_x_inplace(StateVector& s, int q) { s.apply(q, Op1{0.0, 1.0, 1.0, 0.0}); }

void phase_inplace(StateVector& s, int q, double theta) {
  s.apply(q, Op1{1.0, 0.0, 0.0, std::polar(1.0, theta)});
}

StateVector apply_qfr(StateVector s, int control, int target) {
  qfr_inplace(s, control, target);
  return s;
}

StateVector apply_pauli_x(StateVector s, int q) {
  pauli_x_inplace(s, q);
  return s;
}

namespace {

InPlaceMeasurement measure_two_outcome(StateVector& s, int q, std::array<Complex, 2> plus,
                                       std::array<Complex, 2> minus, CounterRng& rng) {
  const double p_plus = std::min(1.0, std::max(0.0, s.probability(q, plus)));
  const double u = rng.uniform();
  if (u < p_plus) {
    s.project(q, plus);
    return {+1, p_plus};
  }
  s.project(q, minus);
  return {-1, 1.0 - p_plus};
}

}  // namespace

InPlaceMeasurement measure_equator_inplace(StateVector& s, int q, EquatorAngle phi, CounterRng& rng) {
  return measure_two_outcome(s, q, equator_ket(phi), equator_ket(phi.bar()), rng);
}

InPlaceMeasurement measure_z_inplace(StateVector& s, int q, CounterRng& rng) {
  return measure_two_outcome(s, q, {1.0, 0.0}, {0.0, 1.0}, rng);
}

Measurement measure_equator(const StateVector& s, int q, EquatorAngle phi, CounterRng& rng) {
  Measurement m{1, s};
  m.outcome = measure_equator_inplace(m.collapsed, q, phi, rng).outcome;
  return m;
}

Measurement measure_z(const StateVector& s, int q, CounterRng& rng) {
  Measurement m{1, s};
  m.outcome = measure_z_inplace(m.collapsed, q, rng).outcome;
  return m;
}

InPlaceMeasurement measure_projector_inplace(StateVector& s, std::span<const int> qubits,
                                             std::span<const Complex> projector, CounterRng& rng) {
  StateVector plus = s;
  plus.project_subspace(qubits, projector);
  const double n_plus = plus.norm();
  const double p_plus = std::min(1.0, n_plus * n_plus);
  const double u = rng.uniform();
  if (u < p_plus) {
    plus.renormalize();
    s = std::move(plus);
    return {+1, p_plus};
  }
  // complement: amplitudes of s minus those of the projected copy
  const std::size_t d = std::size_t{1} << qubits.size();
  std::vector<Complex> complement(projector.begin(), projector.end());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) complement[r * d + c] = (r == c ? 1.0 : 0.0) - projector[r * d + c];
  s.project_subspace(qubits, complement);
  if (s.renormalize() <= kNormTolerance) throw std::logic_error("measurement branch has zero norm");
  return {-1, 1.0 - p_plus};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out = a;
  out.append(b);
  return out;
}

StateVector tensor(std::initializer_list<StateVector> factors) {
  StateVector out;
  for (const auto& f : factors) out.append(f);
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex acc{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity: zero vector");
  const double f = std::norm(inner_product(a, b)) / (na * na * nb * nb);
  return std::min(1.0, f);
}

StateVector permute_qubits(const StateVector& s, std::span<const int> order) {
  const int n = s.num_qubits();
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("permute_qubits: order size");
  std::vector<bool> seen(n, false);
  for (int q : order) {
    if (q < 0 || q >= n || seen[q]) throw std::invalid_argument("permute_qubits: not a permutation");
    seen[q] = true;
  }
  std::vector<Complex> out(s.dimension());
  const auto in = s.amplitudes();
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::size_t j = 0;
    for (int k = 0; k < n; ++k)
      if ((i >> order[k]) & 1u) j |= bit(k);
    out[j] = in[i];
  }
  return StateVector::from_amplitudes(std::move(out));
}

}  // namespace fqkd
