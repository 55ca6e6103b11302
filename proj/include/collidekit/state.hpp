// Copyright 2026 The collidekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "collidekit/linalg.hpp"

namespace collidekit {

/// Positive unit-trace operator. Always valid once constructed.
///
/// Validation: Hermitian within tol, trace 1 within tol, smallest eigenvalue
/// >= -tol. Eigenvalues in [-tol, 0) are accepted as roundoff.
class DensityOperator {
 public:
  /// Throws ShapeError (not square / not Hermitian), PositivityError
  /// (eigenvalue below -tolerance) or DomainError (trace off by more than
  /// tolerance).
  static DensityOperator from_matrix(const ComplexMatrix& m, double tolerance = tol::kState);

  /// |psi><psi| for a normalized vector.
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator maximally_mixed(int dim);
  /// |k><k| in the computational basis.
  static DensityOperator basis_state(int dim, int k);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Qubit Bloch vector, |r| <= 1 + tol.
class BlochVector {
 public:
  /// Throws PositivityError when |r| > 1 + tolerance.
  BlochVector(double x, double y, double z, double tolerance = tol::kState);
  explicit BlochVector(const Eigen::Vector3d& r, double tolerance = tol::kState);

  double x() const { return r_.x(); }
  double y() const { return r_.y(); }
  double z() const { return r_.z(); }
  double norm() const { return r_.norm(); }
  const Eigen::Vector3d& vector() const { return r_; }

 private:
  Eigen::Vector3d r_;
};

/// Normalized amplitudes of an n-qubit register (qubit 0 most significant).
class PureStateVector {
 public:
  /// Throws DimensionError unless size is 2^n_qubits, DomainError unless the
  /// norm is 1 within tol::kState.
  PureStateVector(int n_qubits, ComplexVector amplitudes);

  /// Product of single-qubit states, factor 0 first.
  static PureStateVector product(std::span<const Eigen::Vector2cd> factors);

  int n_qubits() const { return n_; }
  const ComplexVector& amplitudes() const { return amps_; }
  std::span<const Complex> span() const { return {amps_.data(), static_cast<std::size_t>(amps_.size())}; }

 private:
  int n_;
  ComplexVector amps_;
};

/// Throws DimensionError for a non-qubit operator.
BlochVector bloch_from_density(const DensityOperator& rho);
DensityOperator density_from_bloch(const BlochVector& r);

/// Unnormalized Hilbert-Schmidt distance ||rho1 - rho2||_2 (no 1/2 factor):
/// orthogonal pure qubit states are sqrt(2) apart.
double hs_distance(const DensityOperator& a, const DensityOperator& b);

struct StateReport {
  double hermiticity_residual;
  double min_eigenvalue;
  double trace_deviation;
  bool valid;
};

/// Diagnostics for an arbitrary square matrix; never throws for square input.
StateReport validate_state(const ComplexMatrix& m, double tolerance = tol::kState);

}  // namespace collidekit
