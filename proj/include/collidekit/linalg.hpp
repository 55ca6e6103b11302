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
/// Dense complex-matrix kernel: Kronecker products, partial traces,
/// Hermitian eigendecomposition, matrix exponential and principal logarithm.
///
/// Subsystem ordering follows the Kronecker convention: in tensor(A, B) the
/// factor A carries the most significant index.

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace collidekit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kReconstruction = 1e-10;
inline constexpr double kState = 1e-12;
inline constexpr double kCompletePositivity = 1e-10;
inline constexpr double kLindblad = 1e-10;
inline constexpr double kUnitarity = 1e-12;
}  // namespace tol

/// Kronecker product, index order (i_A i_B, j_A j_B).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of a list of factors, left to right.
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Reduced operator on the subsystems listed in `keep` (ascending order in
/// the output regardless of the order given). Throws DimensionError when
/// prod(dims) does not match the matrix or `keep` is empty/out of range.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |M - M^dagger|.
double hermiticity_residual(const ComplexMatrix& m);

/// max |U^dagger U - I|.
double unitarity_residual(const ComplexMatrix& u);

struct HermitianEigen {
  Eigen::VectorXd values;  // descending
  ComplexMatrix vectors;   // orthonormal columns, matching `values`
};

/// Throws ShapeError unless `h` is square and Hermitian within tol::kHermiticity.
HermitianEigen hermitian_eig(const ComplexMatrix& h);

ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Principal logarithm: eigenvalue arguments in (-pi, pi].
///
/// Uses the eigendecomposition when it reconstructs `m` within
/// tol::kReconstruction and falls back to Schur-Parlett with inverse
/// scaling-and-squaring otherwise. Throws SingularChannelError for a
/// (numerically) zero eigenvalue and BranchCutError for an eigenvalue on the
/// negative real axis.
ComplexMatrix matrix_log_principal(const ComplexMatrix& m);

/// Pauli matrices, index 0 is the identity.
namespace pauli {
const ComplexMatrix& identity();
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
const std::array<ComplexMatrix, 4>& all();
}  // namespace pauli

}  // namespace collidekit
