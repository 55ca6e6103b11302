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

#include "collidekit/channel.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "collidekit/errors.hpp"
#include "collidekit/semigroup.hpp"

namespace collidekit {
namespace {

Eigen::Matrix4d ptm_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  const auto& sigma = pauli::all();
  Eigen::Matrix4d m;
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix out = map(sigma[k]);
    for (int j = 0; j < 4; ++j) m(j, k) = 0.5 * (sigma[j] * out).trace().real();
  }
  return m;
}

}  // namespace

PauliTransferMatrix::PauliTransferMatrix(const Eigen::Matrix4d& m, double tolerance) : m_(m) {
  if (!m.allFinite()) throw DomainError("transfer matrix has non-finite entries");
  const Eigen::RowVector4d row(1.0, 0.0, 0.0, 0.0);
  const double dev = (m.row(0) - row).cwiseAbs().maxCoeff();
  if (dev > tolerance) {
    throw TracePreservationError("transfer matrix first row must be (1, 0, 0, 0); deviation " +
                                 std::to_string(dev));
  }
  m_.row(0) = row;
}

PauliTransferMatrix PauliTransferMatrix::identity() { return PauliTransferMatrix(Eigen::Matrix4d::Identity()); }

PauliTransferMatrix PauliTransferMatrix::affine(const Eigen::Vector3d& t, const Eigen::Matrix3d& linear) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  m.block<3, 1>(1, 0) = t;
  m.block<3, 3>(1, 1) = linear;
  return PauliTransferMatrix(m);
}

PauliTransferMatrix channel_from_collision(const ComplexMatrix& u, const DensityOperator& xi) {
  if (u.rows() != 4 || u.cols() != 4) throw DimensionError("collision channel needs a 4x4 unitary");
  if (xi.dim() != 2) throw DimensionError("collision channel needs a qubit reservoir state");
  if (unitarity_residual(u) > tol::kUnitarity) throw UnitarityError("collision is not unitary");
  const std::array<int, 2> dims{2, 2};
  const std::array<int, 1> keep{0};
  return PauliTransferMatrix(ptm_of([&](const ComplexMatrix& x) {
    return partial_trace(u * tensor(x, xi.matrix()) * u.adjoint(), dims, keep);
  }));
}

PauliTransferMatrix channel_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw DimensionError("Kraus list is empty");
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& a : kraus) {
    if (a.rows() != 2 || a.cols() != 2) throw DimensionError("Kraus operators must be 2x2");
    sum += a.adjoint() * a;
  }
  const double dev = (sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw TracePreservationError("Kraus operators violate sum A^dagger A = I by " + std::to_string(dev));
  }
  return PauliTransferMatrix(ptm_of([&](const ComplexMatrix& x) {
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (const auto& a : kraus) out += a * x * a.adjoint();
    return out;
  }));
}

ComplexMatrix apply_operator(const PauliTransferMatrix& e, const ComplexMatrix& x) {
  if (x.rows() != 2 || x.cols() != 2) throw DimensionError("qubit channel acts on 2x2 operators");
  const auto& sigma = pauli::all();
  Eigen::Vector4cd coords;
  for (int k = 0; k < 4; ++k) coords(k) = (sigma[k] * x).trace();
  const Eigen::Vector4cd image = e.matrix().cast<Complex>() * coords;
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int j = 0; j < 4; ++j) out += 0.5 * image(j) * sigma[j];
  return out;
}

DensityOperator apply(const PauliTransferMatrix& e, const DensityOperator& rho) {
  if (rho.dim() != 2) throw DimensionError("qubit channel acts on qubit states");
  const ComplexMatrix out = apply_operator(e, rho.matrix());
  return DensityOperator::from_matrix(0.5 * (out + out.adjoint()));
}

PauliTransferMatrix compose(const PauliTransferMatrix& outer, const PauliTransferMatrix& inner) {
  return PauliTransferMatrix(outer.matrix() * inner.matrix());
}

ComplexMatrix choi(const PauliTransferMatrix& e) {
  ComplexMatrix j = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
      unit(a, b) = 1.0;
      j += 0.5 * tensor(apply_operator(e, unit), unit);
    }
  }
  return j;
}

CPReport is_completely_positive(const PauliTransferMatrix& e) {
  const ComplexMatrix j = choi(e);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (j + j.adjoint()), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -tol::kCompletePositivity, min_eig};
}

double determinant(const PauliTransferMatrix& e) { return e.matrix().determinant(); }

DivisibilityReport divisibility_report(const PauliTransferMatrix& e) {
  DivisibilityReport r{};
  r.det = determinant(e);
  if (std::abs(r.det) < 1e-14) throw SingularChannelError("channel determinant is zero; no logarithm exists");
  const Eigen::Matrix3d t = e.linear();
  r.is_unitary = (t.transpose() * t - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-10 &&
                 t.determinant() > 0.0 && e.translation().cwiseAbs().maxCoeff() <= 1e-10;
  r.negative_det = r.det < 0.0;
  r.principal_log_lindblad = false;
  if (!r.negative_det) {
    try {
      r.principal_log_lindblad = is_lindblad(generator_from_log(e)).valid;
    } catch (const BranchCutError&) {
      r.principal_log_lindblad = false;
    }
  }
  return r;
}

namespace channels {

PauliTransferMatrix universal_not() {
  return PauliTransferMatrix(Eigen::Vector4d(1.0, 1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0).asDiagonal().toDenseMatrix());
}

PauliTransferMatrix transpose() {
  return PauliTransferMatrix(Eigen::Vector4d(1.0, 1.0, -1.0, 1.0).asDiagonal().toDenseMatrix());
}

PauliTransferMatrix identity() { return PauliTransferMatrix::identity(); }

}  // namespace channels

}  // namespace collidekit
