#pragma once

#include <span>

#include <Eigen/Dense>

#include "fqkd/state_vector.hpp"

namespace fqkd {

/// Normalized, Hermitian, positive semidefinite operator on a small register.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates hermiticity, unit trace and positivity.
  explicit DensityMatrix(Eigen::MatrixXcd m);
  static DensityMatrix pure(const StateVector& s);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  double purity() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Partial trace keeping `keep` in the given order (keep[0] becomes the
/// least significant qubit of the result).
Eigen::MatrixXcd partial_trace(const StateVector& s, std::span<const int> keep);
DensityMatrix reduced_density(const StateVector& s, std::span<const int> keep);

/// ½‖ρ − σ‖₁.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Trace norm of a Hermitian matrix. Throws std::invalid_argument otherwise.
double trace_norm(const Eigen::MatrixXcd& hermitian);

/// Minimum-error discrimination of w0·ρ0 versus w1·ρ1 (weights need not be
/// normalized). `guess0` is the projector onto the nonnegative eigenspace
/// of w0ρ0 − w1ρ1.
struct Helstrom {
  Eigen::MatrixXcd guess0;
  double success = 0.5;
};
Helstrom helstrom(const Eigen::MatrixXcd& weighted0, const Eigen::MatrixXcd& weighted1);

/// Projector onto the span of the given columns, dropping directions with
/// singular values below `tolerance`.
Eigen::MatrixXcd span_projector(const Eigen::MatrixXcd& columns, double tolerance = 1e-12);

}  // namespace fqkd
