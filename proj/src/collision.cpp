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

#include "collidekit/collision.hpp"

#include <array>
#include <cmath>
#include <string>

#include "collidekit/errors.hpp"

namespace collidekit {
namespace {

constexpr Complex kI(0.0, 1.0);

void check_steps(int n_steps, int stride) {
  if (n_steps < 0 || n_steps > kMaxTrajectorySteps) {
    throw DomainError("n_steps must lie in [0, " + std::to_string(kMaxTrajectorySteps) + "]");
  }
  if (stride < 1) throw DomainError("stride must be positive");
}

bool should_record(int n, int n_steps, int stride) { return n % stride == 0 || n == n_steps; }

template <typename Step>
Trajectory run(const DensityOperator& rho0, const DensityOperator& xi, int n_steps, int stride, Step step) {
  check_steps(n_steps, stride);
  Trajectory traj;
  traj.stride = stride;
  traj.steps.reserve(static_cast<std::size_t>(n_steps / stride + 2));
  traj.steps.push_back({0, rho0, xi, rho0.dim() == xi.dim() ? hs_distance(rho0, xi) : 0.0, 0.0});
  DensityOperator rho = rho0;
  for (int n = 1; n <= n_steps; ++n) {
    CollisionOutcome out = step(rho);
    rho = out.system;
    if (should_record(n, n_steps, stride)) {
      const double d_sys = rho.dim() == xi.dim() ? hs_distance(rho, xi) : 0.0;
      const double d_res = hs_distance(out.reservoir, xi);
      traj.steps.push_back({n, rho, std::move(out.reservoir), d_sys, d_res});
    }
  }
  return traj;
}

// Orthonormal eigenbasis shared by a family of commuting normal 2x2
// operators, read off a generic Hermitian combination of them.
ComplexMatrix common_eigenbasis(const std::array<ComplexMatrix, 4>& ops) {
  static constexpr std::array<double, 4> kHerm{1.0, 0.7548776662, 0.5698402910, 0.4301597090};
  static constexpr std::array<double, 4> kAnti{0.3247179572, 0.8793852416, 0.6180339887, 0.2360679775};
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  for (std::size_t m = 0; m < ops.size(); ++m) {
    const ComplexMatrix& op = ops[m];
    h += kHerm[m] * 0.5 * (op + op.adjoint());
    h += kAnti[m] * (op - op.adjoint()) / (2.0 * kI);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
  ComplexMatrix basis = solver.eigenvectors();
  // Phase convention: first non-negligible component real and positive.
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      if (std::abs(basis(i, j)) > 1e-8) {
        basis.col(j) *= std::conj(basis(i, j)) / std::abs(basis(i, j));
        break;
      }
    }
  }
  return basis;
}

}  // namespace

PartialSwapParams PartialSwapParams::make(double eta, int dim) {
  if (dim < 2) throw DimensionError("partial swap needs particle dimension >= 2");
  return {eta, std::cos(eta), std::sin(eta), dim};
}

ControlledUnitary ControlledUnitary::computational(std::vector<ComplexMatrix> targets) {
  const int d = static_cast<int>(targets.size());
  return {ComplexMatrix::Identity(d, d), std::move(targets)};
}

void ControlledUnitary::validate() const {
  const auto d = control_basis.rows();
  if (d < 2 || control_basis.cols() != d) throw DimensionError("control basis must be square with dimension >= 2");
  if (static_cast<Eigen::Index>(targets.size()) != d) {
    throw DimensionError("need one target unitary per control basis vector");
  }
  if (unitarity_residual(control_basis) > tol::kUnitarity) {
    throw UnitarityError("control basis is not orthonormal");
  }
  const auto de = targets.front().rows();
  for (const auto& v : targets) {
    if (v.rows() != de || v.cols() != de) throw DimensionError("target unitaries must share one size");
    if (unitarity_residual(v) > tol::kUnitarity) throw UnitarityError("target V_j is not unitary");
  }
}

ComplexMatrix swap_operator(int dim) {
  if (dim < 1) throw DimensionError("swap needs a positive dimension");
  const int n = dim * dim;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) s(j * dim + k, k * dim + j) = 1.0;
  }
  return s;
}

ComplexMatrix partial_swap_unitary(double eta, int dim) {
  if (dim < 2) throw DimensionError("partial swap needs particle dimension >= 2");
  const int n = dim * dim;
  return std::cos(eta) * ComplexMatrix::Identity(n, n) + kI * std::sin(eta) * swap_operator(dim);
}

ComplexMatrix controlled_unitary(const ControlledUnitary& cu) {
  cu.validate();
  const auto d = cu.system_dim();
  const auto de = cu.environment_dim();
  ComplexMatrix u = ComplexMatrix::Zero(d * de, d * de);
  for (int j = 0; j < d; ++j) {
    const ComplexMatrix proj = cu.control_basis.col(j) * cu.control_basis.col(j).adjoint();
    u += tensor(proj, cu.targets[j]);
  }
  return u;
}

ControlledUnitary ctrl_not() { return ControlledUnitary::computational({pauli::identity(), pauli::x()}); }

ControlledUnitary ctrl_z() { return ControlledUnitary::computational({pauli::identity(), pauli::z()}); }

CollisionOutcome collide(const DensityOperator& rho, const DensityOperator& xi, const ComplexMatrix& u) {
  const int ds = rho.dim();
  const int de = xi.dim();
  if (u.rows() != ds * de || u.cols() != ds * de) {
    throw DimensionError("collide: unitary dimension must be dim(rho) * dim(xi)");
  }
  if (unitarity_residual(u) > tol::kUnitarity) throw UnitarityError("collide: U is not unitary");
  const ComplexMatrix joint = u * tensor(rho.matrix(), xi.matrix()) * u.adjoint();
  const std::array<int, 2> dims{ds, de};
  const std::array<int, 1> sys{0};
  const std::array<int, 1> env{1};
  return {DensityOperator::from_matrix(partial_trace(joint, dims, sys)),
          DensityOperator::from_matrix(partial_trace(joint, dims, env))};
}

CollisionOutcome partial_swap_step(const DensityOperator& rho, const DensityOperator& xi,
                                   const PartialSwapParams& p) {
  if (rho.dim() != xi.dim()) throw DimensionError("partial swap needs equal particle dimensions");
  const double c2 = p.c * p.c;
  const double s2 = p.s * p.s;
  const Complex ics = kI * p.c * p.s;
  const ComplexMatrix comm = commutator(xi.matrix(), rho.matrix());  // [xi, rho]
  return {DensityOperator::from_matrix(c2 * rho.matrix() + s2 * xi.matrix() + ics * comm),
          DensityOperator::from_matrix(s2 * rho.matrix() + c2 * xi.matrix() - ics * comm)};
}

Trajectory run_homogenization(const DensityOperator& rho0, const DensityOperator& xi, double eta, int n_steps,
                              int stride) {
  if (rho0.dim() != xi.dim()) throw DimensionError("homogenization needs equal particle dimensions");
  const auto p = PartialSwapParams::make(eta, xi.dim());
  return run(rho0, xi, n_steps, stride, [&](const DensityOperator& rho) { return partial_swap_step(rho, xi, p); });
}

Trajectory run_collisions(const DensityOperator& rho0, const DensityOperator& xi, const ComplexMatrix& u,
                          int n_steps, int stride) {
  return run(rho0, xi, n_steps, stride, [&](const DensityOperator& rho) { return collide(rho, xi, u); });
}

Trajectory run_decoherence(const DensityOperator& rho0, const DensityOperator& xi, const ControlledUnitary& cu,
                           int n_steps, int stride) {
  const ComplexMatrix u = controlled_unitary(cu);
  if (rho0.dim() != cu.system_dim() || xi.dim() != cu.environment_dim()) {
    throw DimensionError("decoherence: state dimensions do not match the controlled unitary");
  }
  return run_collisions(rho0, xi, u, n_steps, stride);
}

HomogenizationBounds homogenization_bounds(double eta) {
  const double c = std::abs(std::cos(eta));
  const double s = std::abs(std::sin(eta));
  if (c < 1e-15 || s < 1e-15) {
    throw BoundUndefinedError("bounds need 0 < |cos eta| < 1 (eta not a multiple of pi/2)");
  }
  const double root2 = std::sqrt(2.0);
  const double delta = root2 * (1.0 + root2) * s * c;
  const double n_delta = std::log((1.0 + root2) * s * c) / std::log(c);
  return {delta, std::max(0.0, n_delta)};
}

std::vector<DensityOperator> pairwise_reservoir_collide(const std::vector<DensityOperator>& ensemble, int j,
                                                        int k, const PartialSwapParams& p) {
  const int n = static_cast<int>(ensemble.size());
  if (j < 0 || k < 0 || j >= n || k >= n) throw IndexError("pairwise collision index out of range");
  if (j == k) throw IndexError("pairwise collision needs two distinct particles");
  auto out = ensemble;
  auto result = partial_swap_step(ensemble[j], ensemble[k], p);
  out[j] = std::move(result.system);
  out[k] = std::move(result.reservoir);
  return out;
}

DensityOperator environment_channel_output(const DensityOperator& rho, const DensityOperator& xi,
                                           const ControlledUnitary& cu) {
  cu.validate();
  const ComplexMatrix in = in_basis(rho, cu.control_basis);
  ComplexMatrix out = ComplexMatrix::Zero(xi.dim(), xi.dim());
  for (int j = 0; j < cu.system_dim(); ++j) {
    out += in(j, j).real() * cu.targets[j] * xi.matrix() * cu.targets[j].adjoint();
  }
  return DensityOperator::from_matrix(out);
}

ComplexMatrix in_basis(const DensityOperator& rho, const ComplexMatrix& basis) {
  if (basis.rows() != rho.dim() || basis.cols() != rho.dim()) throw DimensionError("basis size mismatch");
  return basis.adjoint() * rho.matrix() * basis;
}

std::optional<ProductBases> simultaneous_decoherence_bases(const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw DimensionError("simultaneous decoherence test is two-qubit only");
  if (unitarity_residual(u) > tol::kUnitarity) throw UnitarityError("collision is not unitary");

  // Slices with the environment (resp. system) indices fixed.
  std::array<ComplexMatrix, 4> sys_slices, env_slices;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ComplexMatrix ls(2, 2), le(2, 2);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          ls(i, j) = u(2 * i + a, 2 * j + b);
          le(i, j) = u(2 * a + i, 2 * b + j);
        }
      }
      sys_slices[2 * a + b] = ls;
      env_slices[2 * a + b] = le;
    }
  }
  ProductBases bases{common_eigenbasis(sys_slices), common_eigenbasis(env_slices)};
  const ComplexMatrix w = tensor(bases.system, bases.environment);
  ComplexMatrix diag = w.adjoint() * u * w;
  diag.diagonal().setZero();
  if (diag.cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;
  return bases;
}

}  // namespace collidekit
