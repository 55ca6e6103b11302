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

/// @file
/// Qubit channels in the Pauli transfer representation.
///
/// m(j, k) = (1/2) tr[sigma_j E(sigma_k)], j, k in {I, x, y, z}. A
/// trace-preserving channel has first row (1, 0, 0, 0) and acts on Bloch
/// vectors as r' = t + T r with t = m(1:3, 0) and T = m(1:3, 1:3).

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "collidekit/linalg.hpp"
#include "collidekit/state.hpp"

namespace collidekit {

class PauliTransferMatrix {
 public:
  /// Throws TracePreservationError when the first row differs from
  /// (1, 0, 0, 0) by more than `tolerance`; the stored row is then exact.
  explicit PauliTransferMatrix(const Eigen::Matrix4d& m, double tolerance = 1e-10);

  static PauliTransferMatrix identity();
  static PauliTransferMatrix affine(const Eigen::Vector3d& t, const Eigen::Matrix3d& linear);

  const Eigen::Matrix4d& matrix() const { return m_; }
  Eigen::Vector3d translation() const { return m_.block<3, 1>(1, 0); }
  Eigen::Matrix3d linear() const { return m_.block<3, 3>(1, 1); }

 private:
  Eigen::Matrix4d m_;
};

/// System channel rho -> tr_env[U (rho (x) xi) U^dagger]. Throws
/// UnitarityError, or DimensionError unless U is 4x4 and xi a qubit state.
PauliTransferMatrix channel_from_collision(const ComplexMatrix& u, const DensityOperator& xi);

/// Throws TracePreservationError when sum A^dagger A differs from I by more
/// than 1e-10, DimensionError for empty or non-2x2 operators.
PauliTransferMatrix channel_from_kraus(const std::vector<ComplexMatrix>& kraus);

/// Affine Bloch action. Throws PositivityError if the image is not a state.
DensityOperator apply(const PauliTransferMatrix& e, const DensityOperator& rho);
/// Action on an arbitrary 2x2 operator (linear extension).
ComplexMatrix apply_operator(const PauliTransferMatrix& e, const ComplexMatrix& x);

/// outer o inner: apply `inner` first.
PauliTransferMatrix compose(const PauliTransferMatrix& outer, const PauliTransferMatrix& inner);

/// Trace-one Choi matrix (E (x) id)(|Phi+><Phi+|).
ComplexMatrix choi(const PauliTransferMatrix& e);

struct CPReport {
  bool completely_positive;
  double min_eigenvalue;  // of the trace-one Choi matrix
};

/// Threshold: min eigenvalue >= -tol::kCompletePositivity.
CPReport is_completely_positive(const PauliTransferMatrix& e);

double determinant(const PauliTransferMatrix& e);

struct DivisibilityReport {
  double det;
  bool is_unitary;               // T orthogonal with det +1, t = 0
  bool negative_det;             // no real principal logarithm
  bool principal_log_lindblad;   // log E exists and has Lindblad form
};

/// Throws SingularChannelError when det = 0.
DivisibilityReport divisibility_report(const PauliTransferMatrix& e);

namespace channels {
/// rho -> (I + rho^T)/3.
PauliTransferMatrix universal_not();
/// rho -> rho^T; positive but not completely positive.
PauliTransferMatrix transpose();
PauliTransferMatrix identity();
}  // namespace channels

}  // namespace collidekit
