#include <array>
#include <vector>

#include "fqkd/adversary.hpp"
#include "fqkd/density_matrix.hpp"

namespace fqkd::adversary {

namespace {

constexpr double kRankTolerance = 1e-12;

struct Split {
  Eigen::MatrixXcd inside;      ///< orthonormal basis of the span
  Eigen::MatrixXcd complement;  ///< orthonormal basis of its complement
};

Split split_space(const Eigen::MatrixXcd& columns) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > kRankTolerance) ++rank;
  const Eigen::MatrixXcd& u = svd.matrixU();
  return {u.leftCols(rank), u.rightCols(u.cols() - rank)};
}

Eigen::MatrixXcd pure_in(const Eigen::MatrixXcd& basis, const Eigen::Vector4cd& v) {
  const Eigen::VectorXcd w = basis.adjoint() * v;
  const double n = w.norm();
  if (n <= kRankTolerance) return Eigen::MatrixXcd::Zero(basis.cols(), basis.cols());
  return (w / n) * (w / n).adjoint();
}

/// Helstrom between two pure states restricted to `basis`, lifted back.
Eigen::Matrix4cd lifted_guess(const Eigen::MatrixXcd& basis, const Eigen::Vector4cd& up,
                              const Eigen::Vector4cd& down) {
  if (basis.cols() == 0) return Eigen::Matrix4cd::Zero();
  const Helstrom h = helstrom(pure_in(basis, up), pure_in(basis, down));
  return basis * h.guess0 * basis.adjoint();
}

std::vector<Complex> row_major(const Eigen::Matrix4cd& m) {
  std::vector<Complex> out(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(4 * r + c)] = m(r, c);
  return out;
}

std::uint8_t measure_home(StateVector& s, int e, int f, const HomeDiscriminator& d, CounterRng& rng) {
  const std::array<int, 2> qubits = {e, f};
  const auto proj = row_major(d.guess_up);
  return measure_projector_inplace(s, qubits, proj, rng).outcome == +1 ? 0 : 1;
}

}  // namespace

HomeDiscriminator HomeDiscriminator::for_overlaps(double c_x, double c_y) {
  // The split below does not depend on the relative angle; 0 is arbitrary.
  const auto v = build_subspace_decomposition(0.0, 0.0, GeneralAttackSpec::symmetric({}, c_x, c_y)).ef;
  const Eigen::Vector4cd& one = v[0];
  const Eigen::Vector4cd& four = v[3];
  const Eigen::Vector4cd u = v[1] + v[2];
  const Eigen::Vector4cd w = v[4] + v[5];

  Eigen::MatrixXcd cols(4, 2);
  cols << one, four;
  const Split sp = split_space(cols);

  HomeDiscriminator d;
  d.guess_up = lifted_guess(sp.inside, one, four) + lifted_guess(sp.complement, u, w);
  return d;
}

EveStrategy EveStrategy::for_spec(const GeneralAttackSpec& spec) {
  spec.validate();
  return {HomeDiscriminator::for_overlaps(spec.overlap_c_x, spec.overlap_c_y),
          HomeDiscriminator::for_overlaps(spec.overlap_c_x_primed, spec.overlap_c_y_primed)};
}

EveGuess eve_infer_keys(StateVector& s, const EveStrategy& strategy, CounterRng& rng) {
  if (s.num_qubits() < reg::kCount)
    throw std::invalid_argument("eve_infer_keys: register lacks the attack ancillae");
  EveGuess g;
  g.bob_home = measure_home(s, reg::E, reg::F, strategy.ef, rng);
  g.alice_home = measure_home(s, reg::EPrime, reg::FPrime, strategy.ef_primed, rng);
  return g;
}

EveGuess eve_infer_keys(StateVector& s, const GeneralAttackSpec& spec, CounterRng& rng) {
  return eve_infer_keys(s, EveStrategy::for_spec(spec), rng);
}

}  // namespace fqkd::adversary
