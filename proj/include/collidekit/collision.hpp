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
/// Collision unitaries and trajectories of the single-ancilla collision model.
///
/// Each step the system meets a fresh reservoir particle in state xi, the pair
/// evolves under U, and the particle is discarded:
///   rho_{n} = tr_env[U (rho_{n-1} (x) xi) U^dagger].
/// The system is always the first tensor factor.

#pragma once

#include <optional>
#include <vector>

#include "collidekit/linalg.hpp"
#include "collidekit/state.hpp"

namespace collidekit {

/// Partial swap U = cos(eta) I + i sin(eta) S on C^d (x) C^d. eta in radians.
struct PartialSwapParams {
  double eta;
  double c;
  double s;
  int dim;

  /// Throws DimensionError for dim < 2.
  static PartialSwapParams make(double eta, int dim = 2);
};

/// U = sum_j |phi_j><phi_j| (x) V_j. Columns of `control_basis` are phi_j.
struct ControlledUnitary {
  ComplexMatrix control_basis;
  std::vector<ComplexMatrix> targets;

  /// Computational control basis.
  static ControlledUnitary computational(std::vector<ComplexMatrix> targets);
  /// Throws UnitarityError for a non-orthonormal basis or non-unitary target,
  /// DimensionError when the counts or target sizes disagree.
  void validate() const;
  int system_dim() const { return static_cast<int>(control_basis.rows()); }
  int environment_dim() const { return targets.empty() ? 0 : static_cast<int>(targets.front().rows()); }
};

/// Swap operator sum_jk |jk><kj| on C^d (x) C^d.
ComplexMatrix swap_operator(int dim);
ComplexMatrix partial_swap_unitary(double eta, int dim);
ComplexMatrix controlled_unitary(const ControlledUnitary& cu);

/// |0><0| (x) I + |1><1| (x) sigma_x.
ControlledUnitary ctrl_not();
/// |0><0| (x) I + |1><1| (x) sigma_z.
ControlledUnitary ctrl_z();

struct CollisionOutcome {
  DensityOperator system;
  DensityOperator reservoir;
};

/// Both marginals of U (rho (x) xi) U^dagger. Throws DimensionError when
/// dim(U) != dim(rho) * dim(xi) and UnitarityError for a non-unitary U.
CollisionOutcome collide(const DensityOperator& rho, const DensityOperator& xi, const ComplexMatrix& u);

/// Closed-form partial-swap collision:
///   rho' = c^2 rho + s^2 xi + i c s [xi, rho]
///   xi'  = s^2 rho + c^2 xi + i c s [rho, xi]
CollisionOutcome partial_swap_step(const DensityOperator& rho, const DensityOperator& xi,
                                   const PartialSwapParams& p);

struct TrajectoryStep {
  int n;
  DensityOperator system;     // rho_S^(n)
  DensityOperator reservoir;  // xi'_n, the particle that just left; xi at n = 0
  double d_sys;               // D(rho_S^(n), xi)
  double d_res;               // D(xi'_n, xi)
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  int stride = 1;
};

inline constexpr int kMaxTrajectorySteps = 1'000'000;

/// Throws DomainError for n_steps outside [0, kMaxTrajectorySteps] or stride < 1.
/// Records steps 0, stride, 2 stride, ... and always the final step.
Trajectory run_homogenization(const DensityOperator& rho0, const DensityOperator& xi, double eta,
                              int n_steps, int stride = 1);

/// Fresh-particle trajectory under an arbitrary collision unitary.
Trajectory run_collisions(const DensityOperator& rho0, const DensityOperator& xi, const ComplexMatrix& u,
                          int n_steps, int stride = 1);

Trajectory run_decoherence(const DensityOperator& rho0, const DensityOperator& xi, const ControlledUnitary& cu,
                           int n_steps, int stride = 1);

struct HomogenizationBounds {
  double delta;    // sqrt(2)(1 + sqrt(2))|s c|
  double n_delta;  // ln[(1 + sqrt(2))|s c|] / ln|c|, clamped at 0
};

/// Throws BoundUndefinedError unless 0 < |cos eta| < 1 (within 1e-15).
HomogenizationBounds homogenization_bounds(double eta);

/// Partial-swap collision between reservoir particles j and k, using the same
/// U_eta as the system-reservoir collisions (j plays the role of the first
/// factor). Other particles are untouched. Throws IndexError for j == k or
/// out-of-range indices.
std::vector<DensityOperator> pairwise_reservoir_collide(const std::vector<DensityOperator>& ensemble, int j,
                                                        int k, const PartialSwapParams& p);

/// Reservoir output of a controlled-unitary collision as a random-unitary
/// channel: sum_j <phi_j|rho|phi_j> V_j xi V_j^dagger.
DensityOperator environment_channel_output(const DensityOperator& rho, const DensityOperator& xi,
                                           const ControlledUnitary& cu);

/// Magnitude of rho_jk in the basis given by the columns of `basis`.
ComplexMatrix in_basis(const DensityOperator& rho, const ComplexMatrix& basis);

struct ProductBases {
  ComplexMatrix system;       // columns phi_j
  ComplexMatrix environment;  // columns psi_k
};

/// Bases {phi_j}, {psi_k} with U diagonal in {phi_j (x) psi_k}, if they exist.
/// Such a U decoheres both collision partners at once. Two-qubit U only.
/// Throws UnitarityError for a non-unitary U, DimensionError unless 4x4.
std::optional<ProductBases> simultaneous_decoherence_bases(const ComplexMatrix& u);

}  // namespace collidekit
