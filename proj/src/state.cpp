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

#include "collidekit/state.hpp"

#include <cmath>
#include <string>

#include "collidekit/errors.hpp"

namespace collidekit {

StateReport validate_state(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError("validate_state: matrix is not square");
  }
  StateReport report{};
  report.hermiticity_residual = hermiticity_residual(m);
  report.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.valid = report.hermiticity_residual <= tolerance && report.trace_deviation <= tolerance &&
                 report.min_eigenvalue >= -tolerance;
  return report;
}

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ShapeError("density operator must be square");
  const auto report = validate_state(m, tolerance);
  if (report.hermiticity_residual > tolerance) {
    throw ShapeError("density operator is not Hermitian (residual " +
                     std::to_string(report.hermiticity_residual) + ")");
  }
  if (report.trace_deviation > tolerance) {
    throw DomainError("density operator trace deviates from 1 by " +
                      std::to_string(report.trace_deviation));
  }
  if (report.min_eigenvalue < -tolerance) {
    throw PositivityError("density operator has negative eigenvalue " +
                          std::to_string(report.min_eigenvalue));
  }
  return DensityOperator(m);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > tol::kState) throw DomainError("pure state vector is not normalized");
  return from_matrix(psi * psi.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::basis_state(int dim, int k) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  if (k < 0 || k >= dim) throw IndexError("basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityOperator(std::move(m));
}

BlochVector::BlochVector(double x, double y, double z, double tolerance)
    : BlochVector(Eigen::Vector3d(x, y, z), tolerance) {}

BlochVector::BlochVector(const Eigen::Vector3d& r, double tolerance) : r_(r) {
  if (!r.allFinite()) throw DomainError("Bloch vector has non-finite components");
  if (r.norm() > 1.0 + tolerance) {
    throw PositivityError("Bloch vector length " + std::to_string(r.norm()) + " exceeds 1");
  }
}

PureStateVector::PureStateVector(int n_qubits, ComplexVector amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 62) throw DimensionError("qubit count out of range");
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw DimensionError("amplitude count must be 2^n_qubits");
  }
  if (std::abs(amps_.norm() - 1.0) > tol::kState) throw DomainError("pure state is not normalized");
}

PureStateVector PureStateVector::product(std::span<const Eigen::Vector2cd> factors) {
  if (factors.empty()) throw DimensionError("product state needs at least one factor");
  ComplexVector amps = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    ComplexVector next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next(2 * i) = amps(i) * f(0);
      next(2 * i + 1) = amps(i) * f(1);
    }
    amps = std::move(next);
  }
  return PureStateVector(static_cast<int>(factors.size()), std::move(amps));
}

BlochVector bloch_from_density(const DensityOperator& rho) {
  if (rho.dim() != 2) throw DimensionError("Bloch vector requires a qubit state");
  const auto& m = rho.matrix();
  const double x = (pauli::x() * m).trace().real();
  const double y = (pauli::y() * m).trace().real();
  const double z = (pauli::z() * m).trace().real();
  return BlochVector(x, y, z);
}

DensityOperator density_from_bloch(const BlochVector& r) {
  const ComplexMatrix m =
      0.5 * (pauli::identity() + r.x() * pauli::x() + r.y() * pauli::y() + r.z() * pauli::z());
  return DensityOperator::from_matrix(m);
}

double hs_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("hs_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).norm();
}

}  // namespace collidekit
