#include <cmath>
#include <stdexcept>
#include <string>

#include "fqkd/adversary.hpp"

namespace fqkd::adversary {

namespace {

void check_overlap(double c, const char* name) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(c));
}

Eigen::Vector2cd ket2(const StateVector& s) { return {s.amplitude(0), s.amplitude(1)}; }

/// |e⟩_E|f⟩_F with E as the low bit.
Eigen::Vector4cd pair_product(const Eigen::Vector2cd& e, const Eigen::Vector2cd& f) {
  Eigen::Vector4cd v;
  for (int fi = 0; fi < 2; ++fi)
    for (int ei = 0; ei < 2; ++ei) v(ei + 2 * fi) = e(ei) * f(fi);
  return v;
}

std::array<Eigen::Vector4cd, 6> sextet(double rel, double c_x, double c_y) {
  const auto ex = make_ancilla_pair(c_x);
  const auto ey = make_ancilla_pair(c_y);
  const Eigen::Vector2cd e00 = ket2(ex.v0), e11 = ket2(ex.v1);
  const Eigen::Vector2cd h00 = ket2(ey.v0), h11 = ket2(ey.v1);
  const double s2 = std::pow(std::sin(rel / 2.0), 2);
  const double c2 = std::pow(std::cos(rel / 2.0), 2);
  const Eigen::Vector4cd p0000 = pair_product(e00, h00);
  const Eigen::Vector4cd p1111 = pair_product(e11, h11);
  const Eigen::Vector4cd p0011 = pair_product(e00, h11);
  const Eigen::Vector4cd p1100 = pair_product(e11, h00);
  return {
      Eigen::Vector4cd(p0000 - p1111),
      Eigen::Vector4cd(s2 * p0000 + c2 * p1111),
      Eigen::Vector4cd(c2 * p0000 + s2 * p1111),
      Eigen::Vector4cd(p0011 - p1100),
      Eigen::Vector4cd(c2 * p0011 + s2 * p1100),
      Eigen::Vector4cd(s2 * p0011 + c2 * p1100),
  };
}

protocol::HookFn entangling_hook(int travel, int expected_ancilla, EquatorAngle basis, double c) {
  const Op2 u = attack_unitary(basis, c);
  return [=](StateVector& s, CounterRng&, protocol::EveRecord&) {
    if (s.num_qubits() != expected_ancilla)
      throw std::logic_error("general attack: ancilla would land at position " +
                             std::to_string(s.num_qubits()) + ", expected " +
                             std::to_string(expected_ancilla));
    s.append(make_z_state(0));
    s.apply(travel, expected_ancilla, u);
  };
}

}  // namespace

GeneralAttackSpec GeneralAttackSpec::symmetric(EquatorAngle gamma, double c_x, double c_y) {
  GeneralAttackSpec spec{gamma, c_x, c_y, c_x, c_y};
  spec.validate();
  return spec;
}

void GeneralAttackSpec::validate() const {
  check_overlap(overlap_c_x, "overlap_c_x");
  check_overlap(overlap_c_y, "overlap_c_y");
  check_overlap(overlap_c_x_primed, "overlap_c_x_primed");
  check_overlap(overlap_c_y_primed, "overlap_c_y_primed");
}

AncillaPair make_ancilla_pair(double c) {
  check_overlap(c, "ancilla overlap");
  return {make_z_state(0), StateVector::from_amplitudes({c, std::sqrt(std::max(0.0, 1.0 - c * c))})};
}

Op2 attack_unitary(EquatorAngle basis, double c) {
  check_overlap(c, "ancilla overlap");
  const auto k = equator_ket(basis);
  const auto kb = equator_ket(basis.bar());
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Complex rot[2][2] = {{c, -s}, {s, c}};
  Op2 m{};
  for (int ar = 0; ar < 2; ++ar)
    for (int tr = 0; tr < 2; ++tr)
      for (int ac = 0; ac < 2; ++ac)
        for (int tc = 0; tc < 2; ++tc) {
          const Complex p = k[tr] * std::conj(k[tc]);
          const Complex pb = kb[tr] * std::conj(kb[tc]);
          m[(tr + 2 * ar) * 4 + (tc + 2 * ac)] = p * (ar == ac ? 1.0 : 0.0) + pb * rot[ar][ac];
        }
  return m;
}

std::vector<protocol::ChannelHook> general_attack_hooks(const GeneralAttackSpec& spec) {
  spec.validate();
  using protocol::Leg;
  namespace pr = protocol::reg;
  const EquatorAngle ret = spec.gamma.rotated(kPi / 2.0);
  return {
      {Leg::CAliceToBob, entangling_hook(pr::C, reg::E, spec.gamma, spec.overlap_c_x)},
      {Leg::CBobToAlice, entangling_hook(pr::C, reg::F, ret, spec.overlap_c_y)},
      {Leg::DBobToAlice, entangling_hook(pr::D, reg::EPrime, spec.gamma, spec.overlap_c_x_primed)},
      {Leg::DAliceToBob, entangling_hook(pr::D, reg::FPrime, ret, spec.overlap_c_y_primed)},
  };
}

double relative_angle(EquatorAngle travel, EquatorAngle gamma) {
  return travel.radians() - gamma.radians() + kPi / 2.0;
}

Complex EveSubspaceDecomposition::overlap(int i, int j, bool primed) const {
  if (i < 1 || i > 6 || j < 1 || j > 6) throw std::invalid_argument("subspace labels run from 1 to 6");
  const auto& v = primed ? ef_primed : ef;
  return v[static_cast<std::size_t>(i - 1)].dot(v[static_cast<std::size_t>(j - 1)]);
}

Complex EveSubspaceDecomposition::normalized_overlap(int i, int j, bool primed) const {
  const double ni = overlap(i, i, primed).real();
  const double nj = overlap(j, j, primed).real();
  if (ni <= 0.0 || nj <= 0.0) return 0.0;
  return overlap(i, j, primed) / std::sqrt(ni * nj);
}

EveSubspaceDecomposition build_subspace_decomposition(double alpha_rel, double beta_rel,
                                                      const GeneralAttackSpec& spec) {
  spec.validate();
  return {sextet(alpha_rel, spec.overlap_c_x, spec.overlap_c_y),
          sextet(beta_rel, spec.overlap_c_x_primed, spec.overlap_c_y_primed)};
}

}  // namespace fqkd::adversary
