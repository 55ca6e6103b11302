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
/// Pure-state collision registers, concurrence, tangles and CKW residuals.
///
/// Register layout: qubit 0 is the system, qubits 1..N are the reservoir
/// particles in collision order.

#pragma once

#include <Eigen/Dense>

#include "collidekit/collision.hpp"
#include "collidekit/linalg.hpp"
#include "collidekit/state.hpp"

namespace collidekit {

inline constexpr int kDefaultMaxQubits = 20;

/// Qubit cap: COLLIDEKIT_MAX_QUBITS if set, else kDefaultMaxQubits.
/// Throws DomainError when the variable is set but not a positive integer.
int max_qubits();

/// Wootters concurrence of a two-qubit state. Throws DimensionError unless 4x4.
double concurrence(const DensityOperator& rho);
double concurrence(const ComplexMatrix& rho);

/// Concurrence squared.
double tangle(const DensityOperator& rho);

/// 4 det of the reduced state of qubit j. Throws IndexError for a bad j.
double tangle_cut(const PureStateVector& psi, int j);

struct TangleReport {
  int n = 0;                // collision step
  Eigen::MatrixXd tau_pair;  // symmetric, zero diagonal
  Eigen::VectorXd tau_cut;   // qubit j versus the rest
  Eigen::VectorXd delta;     // tau_cut[j] - sum_k tau_pair(j, k)

  int n_qubits() const { return static_cast<int>(tau_cut.size()); }
  double max_abs_delta() const { return delta.size() ? delta.cwiseAbs().maxCoeff() : 0.0; }
};

/// Throws CapacityError when psi has more qubits than max_qubits().
TangleReport ckw_report(const PureStateVector& psi, int step = 0);

/// (N+1)-qubit register psi_s (x) phi^N after U acts on (0, l) for l = 1..n.
/// Throws DomainError unless 0 <= n <= N, CapacityError when N + 1 exceeds
/// max_qubits(), UnitarityError for a non-unitary U.
PureStateVector evolve_pure_collisions(const Eigen::Vector2cd& psi_s, const Eigen::Vector2cd& phi,
                                       const Eigen::Matrix4cd& u, int n, int n_reservoir);

/// Closed-form homogenization register for reservoir |0>^N and system
/// alpha|0> + beta|1>:
///   alpha e^{i eta n}|0...0> + beta c^n |1 0...0>
///     + beta sum_{l<=n} i s c^{l-1} e^{i eta (n-l)} |0 ... 1_l ... 0>.
ComplexVector predict_homogenization_state(Complex alpha, Complex beta, double eta, int n, int n_reservoir);

struct HomogenizationTangles {
  double tau_jk;  // reservoir pair (j, k)
  double tau_0k;  // system with reservoir qubit k
  double tau_j;   // reservoir qubit j versus the rest
  double tau_0;   // system versus the rest
};

/// Closed forms after n collisions; pair/cut entries vanish for indices > n.
/// Throws IndexError for j < 1 or k < 1.
HomogenizationTangles predict_homogenization_tangles(Complex alpha, Complex beta, double eta, int n, int j, int k);

struct DecoherenceTangles {
  double tau_jk;  // always 0
  double tau_0k;
  double tau_k;
  double tau_0;
};

/// Closed forms in terms of the overlap <phi_0|phi_1>, phi_i = V_i phi.
/// Throws DomainError for |overlap| > 1 + 1e-12, IndexError for k < 1.
DecoherenceTangles predict_decoherence_tangles(Complex alpha, Complex beta, Complex overlap, int n, int k);

/// Full predicted reports over an (N+1)-qubit register.
TangleReport predict_homogenization_report(Complex alpha, Complex beta, double eta, int n, int n_reservoir);
TangleReport predict_decoherence_report(Complex alpha, Complex beta, Complex overlap, int n, int n_reservoir);

/// <V_0 phi | V_1 phi> for a qubit controlled unitary.
Complex decoherence_overlap(const ControlledUnitary& cu, const Eigen::Vector2cd& phi);

}  // namespace collidekit
