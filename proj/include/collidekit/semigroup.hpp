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
/// Continuous one-parameter families E_t = exp(G t) through the collision
/// channels, generator extraction and Lindblad decomposition.
///
/// Units: hbar = 1, collision time tau (default 1).
///
/// Lindblad form used as ground truth, with Lambda_j = sigma_j / sqrt(2):
///   G[X] = -i [H, X] + sum_jk c_jk (Lambda_j X Lambda_k - {Lambda_k Lambda_j, X} / 2),
///   H = sum_j h_j sigma_j.
/// The generator matrix is g_jk = (1/2) tr[sigma_j G[sigma_k]].

#pragma once

#include <Eigen/Dense>

#include "collidekit/channel.hpp"
#include "collidekit/collision.hpp"
#include "collidekit/linalg.hpp"
#include "collidekit/state.hpp"

namespace collidekit {

class Generator {
 public:
  /// Throws ShapeError when the first row is not zero within `tolerance`.
  explicit Generator(const Eigen::Matrix4d& g, double tolerance = 1e-10);
  static Generator zero();
  const Eigen::Matrix4d& matrix() const { return g_; }

 private:
  Eigen::Matrix4d g_;
};

struct LindbladDecomposition {
  Eigen::Vector3d h = Eigen::Vector3d::Zero();
  Eigen::Matrix3cd c = Eigen::Matrix3cd::Zero();  // Hermitian, in the Lambda basis
};

struct LindbladVerdict {
  bool valid;
  double min_eig_c;
};

struct HomogenizationSemigroupParams {
  double eta, w, tau;
  double theta;   // arctan(w tan eta)
  double q;       // sqrt(c^2 + w^2 s^2)
  double omega;   // theta / tau
  double gamma1;  // -(2 / tau) ln|c|
  double gamma2;  // -(1 / tau) ln(|c| q)

  /// Throws DomainError for |w| > 1 or tau <= 0, SingularChannelError when
  /// cos eta = 0 (the channel is a replacement map with no generator).
  static HomogenizationSemigroupParams make(double eta, double w, double tau = 1.0);
};

/// Single partial-swap collision channel with reservoir Bloch vector (0, 0, w).
/// Throws DomainError for |w| > 1.
PauliTransferMatrix homogenization_ptm(double eta, double w);
/// Closed-form n-th power. Throws DomainError for n < 0 or |w| > 1.
PauliTransferMatrix homogenization_ptm_power(double eta, double w, int n);
/// Closed-form E_t. Throws DomainError for t < 0.
PauliTransferMatrix homogenization_semigroup_map(const HomogenizationSemigroupParams& p, double t);
Generator homogenization_generator(const HomogenizationSemigroupParams& p);

struct DecoherenceParams {
  double lambda;  // |tr(V_1^dagger V_0 xi)|
  double phi;     // arg, in (-pi, pi]; 0 when lambda = 0
};

/// Throws DomainError for lambda outside [0, 1].
PauliTransferMatrix decoherence_ptm(double lambda, double phi);
/// Qubit controlled unitary only. Throws DimensionError otherwise.
DecoherenceParams decoherence_params_from_collision(const ControlledUnitary& cu, const DensityOperator& xi);
/// lambda^{t/tau} rot(phi t / tau). Throws SingularChannelError for lambda = 0,
/// DomainError for t < 0 or tau <= 0.
PauliTransferMatrix decoherence_semigroup_map(const DecoherenceParams& p, double t, double tau = 1.0);
Generator decoherence_generator(const DecoherenceParams& p, double tau = 1.0);

/// Principal log(E) / tau. Throws SingularChannelError for det <= 0 and
/// BranchCutError for an eigenvalue on the negative real axis.
Generator generator_from_log(const PauliTransferMatrix& e, double tau = 1.0);

/// exp(G t). Throws DomainError for t < 0.
PauliTransferMatrix semigroup_map(const Generator& g, double t);

/// Exact inverse of lindblad_compose.
LindbladDecomposition lindblad_decompose(const Generator& g);
Generator lindblad_compose(const LindbladDecomposition& d);

/// Valid when C has min eigenvalue >= -tol::kLindblad.
LindbladVerdict is_lindblad(const Generator& g);
LindbladVerdict is_lindblad(const LindbladDecomposition& d);

/// G[rho] from the operator-sum form. Accepts any 2x2 operator.
ComplexMatrix master_rhs(const LindbladDecomposition& d, const ComplexMatrix& rho);
ComplexMatrix master_rhs(const LindbladDecomposition& d, const DensityOperator& rho);

/// Classical RK4 with ceil(t_end / dt) equal steps of size <= dt. Throws
/// DomainError for dt <= 0 or t_end < 0, PositivityError if the result drifts
/// out of the state space by more than 1e-10.
DensityOperator integrate_master(const LindbladDecomposition& d, const DensityOperator& rho0, double t_end,
                                 double dt);

}  // namespace collidekit
