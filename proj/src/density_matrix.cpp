#include "fqkd/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace fqkd {

namespace {

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > DensityMatrix::kTolerance)
    throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  require_hermitian(m_, "DensityMatrix");
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kTolerance)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kTolerance)
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
  const auto a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  v /= v.norm();
  return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Eigen::MatrixXcd partial_trace(const StateVector& s, std::span<const int> keep) {
  const int n = s.num_qubits();
  if (keep.empty()) throw std::invalid_argument("reduced_density: keep set is empty");
  std::size_t keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("reduced_density: qubit out of range");
    if (keep_mask & (std::size_t{1} << q)) throw std::invalid_argument("reduced_density: duplicate qubit");
    keep_mask |= std::size_t{1} << q;
  }
  const Eigen::Index d = Eigen::Index{1} << keep.size();
  std::vector<std::size_t> kept_offset(static_cast<std::size_t>(d), 0);
  for (Eigen::Index local = 0; local < d; ++local)
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (local & (Eigen::Index{1} << k)) kept_offset[static_cast<std::size_t>(local)] |= std::size_t{1} << keep[k];

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  const auto a = s.amplitudes();
  for (std::size_t env = 0; env < a.size(); ++env) {
    if (env & keep_mask) continue;
    for (Eigen::Index r = 0; r < d; ++r) {
      const Complex ar = a[env | kept_offset[static_cast<std::size_t>(r)]];
      if (ar == Complex{}) continue;
      for (Eigen::Index c = 0; c < d; ++c)
        rho(r, c) += ar * std::conj(a[env | kept_offset[static_cast<std::size_t>(c)]]);
    }
  }
  return rho;
}

DensityMatrix reduced_density(const StateVector& s, std::span<const int> keep) {
  Eigen::MatrixXcd rho = partial_trace(s, keep);
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

double trace_norm(const Eigen::MatrixXcd& m) {
  require_hermitian(m, "trace_norm");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return std::min(1.0, 0.5 * trace_norm(rho.matrix() - sigma.matrix()));
}

Helstrom helstrom(const Eigen::MatrixXcd& w0, const Eigen::MatrixXcd& w1) {
  if (w0.rows() != w1.rows() || w0.cols() != w1.cols())
    throw std::invalid_argument("helstrom: dimension mismatch");
  const Eigen::MatrixXcd delta = w0 - w1;
  require_hermitian(delta, "helstrom");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(delta);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Helstrom h;
  h.guess0 = Eigen::MatrixXcd::Zero(delta.rows(), delta.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (vals(k) >= -1e-12) h.guess0 += vecs.col(k) * vecs.col(k).adjoint();
  const double total = (w0.trace() + w1.trace()).real();
  h.success = total > 0.0 ? 0.5 * (1.0 + vals.cwiseAbs().sum() / total) : 0.5;
  return h;
}

Eigen::MatrixXcd span_projector(const Eigen::MatrixXcd& columns, double tolerance) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(columns.rows(), columns.rows());
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tolerance) p += svd.matrixU().col(k) * svd.matrixU().col(k).adjoint();
  return p;
}

}  // namespace fqkd
