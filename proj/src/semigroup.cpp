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

#include "collidekit/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "collidekit/errors.hpp"

namespace collidekit {
namespace {

constexpr Complex kI(0.0, 1.0);
constexpr int kParams = 12;

using ParamVector = Eigen::Matrix<double, kParams, 1>;

// h1..h3, c11, c22, c33, then (Re, Im) of c12, c13, c23.
LindbladDecomposition from_params(const ParamVector& p) {
  LindbladDecomposition d;
  d.h = p.head<3>();
  for (int j = 0; j < 3; ++j) d.c(j, j) = p(3 + j);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int m = 0; m < 3; ++m) {
    const Complex v(p(6 + 2 * m), p(7 + 2 * m));
    d.c(pairs[m][0], pairs[m][1]) = v;
    d.c(pairs[m][1], pairs[m][0]) = std::conj(v);
  }
  return d;
}

Eigen::Matrix4d forward(const LindbladDecomposition& d) {
  const auto& sigma = pauli::all();
  Eigen::Matrix4d g;
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix out = master_rhs(d, sigma[k]);
    for (int j = 0; j < 4; ++j) g(j, k) = 0.5 * (sigma[j] * out).trace().real();
  }
  return g;
}

ParamVector lower_rows(const Eigen::Matrix4d& g) {
  ParamVector v;
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 4; ++k) v(4 * r + k) = g(r + 1, k);
  }
  return v;
}

const Eigen::FullPivLU<Eigen::Matrix<double, kParams, kParams>>& forward_lu() {
  static const auto lu = [] {
    Eigen::Matrix<double, kParams, kParams> a;
    for (int i = 0; i < kParams; ++i) a.col(i) = lower_rows(forward(from_params(ParamVector::Unit(i))));
    return Eigen::FullPivLU<Eigen::Matrix<double, kParams, kParams>>(a);
  }();
  return lu;
}

Eigen::Matrix2d rot(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
  return r;
}

Eigen::Matrix4d axial_ptm(const Eigen::Matrix2d& block, double z_scale, double z_shift) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  m.block<2, 2>(1, 1) = block;
  m(3, 3) = z_scale;
  m(3, 0) = z_shift;
  return m;
}

void check_w(double w) {
  if (!(std::abs(w) <= 1.0)) throw DomainError("reservoir polarization |w| must not exceed 1");
}

void check_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
}

double ipow(double x, int n) { return n == 0 ? 1.0 : std::pow(x, n); }

}  // namespace

Generator::Generator(const Eigen::Matrix4d& g, double tolerance) : g_(g) {
  if (!g.allFinite()) throw DomainError("generator has non-finite entries");
  const double dev = g.row(0).cwiseAbs().maxCoeff();
  if (dev > tolerance) throw ShapeError("generator first row must vanish; deviation " + std::to_string(dev));
  g_.row(0).setZero();
}

Generator Generator::zero() { return Generator(Eigen::Matrix4d::Zero()); }

HomogenizationSemigroupParams HomogenizationSemigroupParams::make(double eta, double w, double tau) {
  check_w(w);
  if (!(tau > 0.0)) throw DomainError("collision time tau must be positive");
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  if (std::abs(c) < 1e-15) throw SingularChannelError("cos eta = 0: full swap has no generator");
  HomogenizationSemigroupParams p{};
  p.eta = eta;
  p.w = w;
  p.tau = tau;
  p.theta = std::atan2(c * s * w, c * c);
  p.q = std::sqrt(c * c + w * w * s * s);
  p.omega = p.theta / tau;
  p.gamma1 = -2.0 * std::log(std::abs(c)) / tau;
  p.gamma2 = -std::log(std::abs(c) * p.q) / tau;
  return p;
}

PauliTransferMatrix homogenization_ptm(double eta, double w) { return homogenization_ptm_power(eta, w, 1); }

PauliTransferMatrix homogenization_ptm_power(double eta, double w, int n) {
  check_w(w);
  if (n < 0) throw DomainError("channel power must be non-negative");
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  const double radius = std::sqrt(c * c * c * c + c * c * s * s * w * w);  // |c| q
  const double theta = std::atan2(c * s * w, c * c);
  const double c2n = ipow(c * c, n);
  return PauliTransferMatrix(axial_ptm(ipow(radius, n) * rot(n * theta), c2n, w * (1.0 - c2n)));
}

PauliTransferMatrix homogenization_semigroup_map(const HomogenizationSemigroupParams& p, double t) {
  check_time(t);
  const double z = std::exp(-p.gamma1 * t);
  return PauliTransferMatrix(axial_ptm(std::exp(-p.gamma2 * t) * rot(p.omega * t), z, p.w * (1.0 - z)));
}

Generator homogenization_generator(const HomogenizationSemigroupParams& p) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(1, 1) = g(2, 2) = -p.gamma2;
  g(1, 2) = p.omega;
  g(2, 1) = -p.omega;
  g(3, 3) = -p.gamma1;
  g(3, 0) = p.w * p.gamma1;
  return Generator(g);
}

PauliTransferMatrix decoherence_ptm(double lambda, double phi) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("decoherence factor lambda must lie in [0, 1]");
  return PauliTransferMatrix(axial_ptm(lambda * rot(phi), 1.0, 0.0));
}

DecoherenceParams decoherence_params_from_collision(const ControlledUnitary& cu, const DensityOperator& xi) {
  cu.validate();
  if (cu.system_dim() != 2 || cu.environment_dim() != 2 || xi.dim() != 2) {
    throw DimensionError("decoherence parameters are defined for qubit system and reservoir");
  }
  const Complex z = (cu.targets[1].adjoint() * cu.targets[0] * xi.matrix()).trace();
  DecoherenceParams p{std::min(1.0, std::abs(z)), 0.0};
  if (p.lambda > 0.0) {
    p.phi = std::arg(z);
    if (p.phi <= -std::numbers::pi) p.phi = std::numbers::pi;
  }
  return p;
}

PauliTransferMatrix decoherence_semigroup_map(const DecoherenceParams& p, double t, double tau) {
  check_time(t);
  if (!(tau > 0.0)) throw DomainError("collision time tau must be positive");
  if (p.lambda <= 0.0) throw SingularChannelError("lambda = 0: the decoherence channel has no generator");
  return decoherence_ptm(std::pow(p.lambda, t / tau), p.phi * t / tau);
}

Generator decoherence_generator(const DecoherenceParams& p, double tau) {
  if (!(tau > 0.0)) throw DomainError("collision time tau must be positive");
  if (p.lambda <= 0.0) throw SingularChannelError("lambda = 0: the decoherence channel has no generator");
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(1, 1) = g(2, 2) = std::log(p.lambda) / tau;
  g(1, 2) = p.phi / tau;
  g(2, 1) = -p.phi / tau;
  return Generator(g);
}

Generator generator_from_log(const PauliTransferMatrix& e, double tau) {
  if (!(tau > 0.0)) throw DomainError("collision time tau must be positive");
  const double det = e.matrix().determinant();
  if (!(det > 0.0)) {
    throw SingularChannelError("generator needs det E > 0; got " + std::to_string(det));
  }
  const ComplexMatrix log_e = matrix_log_principal(e.matrix().cast<Complex>());
  if (log_e.imag().cwiseAbs().maxCoeff() > 1e-9) {
    throw BranchCutError("principal logarithm of the channel is not real");
  }
  return Generator(log_e.real() / tau);
}

PauliTransferMatrix semigroup_map(const Generator& g, double t) {
  check_time(t);
  const ComplexMatrix m = matrix_exp((g.matrix() * t).cast<Complex>());
  return PauliTransferMatrix(m.real());
}

LindbladDecomposition lindblad_decompose(const Generator& g) {
  const ParamVector p = forward_lu().solve(lower_rows(g.matrix()));
  return from_params(p);
}

Generator lindblad_compose(const LindbladDecomposition& d) { return Generator(forward(d)); }

LindbladVerdict is_lindblad(const LindbladDecomposition& d) {
  const Eigen::Matrix3cd herm = 0.5 * (d.c + d.c.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(herm, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -tol::kLindblad, min_eig};
}

LindbladVerdict is_lindblad(const Generator& g) { return is_lindblad(lindblad_decompose(g)); }

ComplexMatrix master_rhs(const LindbladDecomposition& d, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("master equation acts on qubit operators");
  const auto& sigma = pauli::all();
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  for (int j = 0; j < 3; ++j) h += d.h(j) * sigma[j + 1];
  ComplexMatrix out = -kI * commutator(h, rho);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const Complex cjk = d.c(j, k);
      if (cjk == Complex(0.0, 0.0)) continue;
      const ComplexMatrix lj = sigma[j + 1] / std::sqrt(2.0);
      const ComplexMatrix lk = sigma[k + 1] / std::sqrt(2.0);
      const ComplexMatrix kj = lk * lj;
      out += cjk * (lj * rho * lk - 0.5 * (kj * rho + rho * kj));
    }
  }
  return out;
}

ComplexMatrix master_rhs(const LindbladDecomposition& d, const DensityOperator& rho) {
  return master_rhs(d, rho.matrix());
}

DensityOperator integrate_master(const LindbladDecomposition& d, const DensityOperator& rho0, double t_end,
                                 double dt) {
  if (!(dt > 0.0)) throw DomainError("integration step dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("integration end time must be non-negative");
  if (rho0.dim() != 2) throw DimensionError("master equation acts on qubit states");
  if (t_end == 0.0) return rho0;
  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  ComplexMatrix rho = rho0.matrix();
  for (long i = 0; i < steps; ++i) {
    const ComplexMatrix k1 = master_rhs(d, rho);
    const ComplexMatrix k2 = master_rhs(d, ComplexMatrix(rho + 0.5 * h * k1));
    const ComplexMatrix k3 = master_rhs(d, ComplexMatrix(rho + 0.5 * h * k2));
    const ComplexMatrix k4 = master_rhs(d, ComplexMatrix(rho + h * k3));
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityOperator::from_matrix(0.5 * (rho + rho.adjoint()), 1e-10);
}

}  // namespace collidekit
