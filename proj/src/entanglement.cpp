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

#include "collidekit/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "collidekit/errors.hpp"
#include "collidekit/kernels.hpp"

namespace collidekit {
namespace {

constexpr Complex kI(0.0, 1.0);

void check_capacity(int n_qubits) {
  const int cap = max_qubits();
  if (n_qubits > cap) {
    throw CapacityError("register of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                        std::to_string(cap) + " (set COLLIDEKIT_MAX_QUBITS to raise it)");
  }
}

Eigen::VectorXd delta_of(const Eigen::MatrixXd& pair, const Eigen::VectorXd& cut) {
  return cut - pair.rowwise().sum();
}

double ipow(double x, int n) { return n <= 0 ? 1.0 : std::pow(x, n); }

}  // namespace

int max_qubits() {
  const char* raw = std::getenv("COLLIDEKIT_MAX_QUBITS");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxQubits;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v < 1 || v > 62) {
    throw DomainError(std::string("COLLIDEKIT_MAX_QUBITS must be an integer in [1, 62], got '") + raw + "'");
  }
  return static_cast<int>(v);
}

double concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("concurrence needs a two-qubit state");
  // With rho = W W^dagger, W = U sqrt(Lambda), the square roots of the
  // eigenvalues of rho (Y rho* Y) are the singular values of W^T Y W.
  const auto eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
  ComplexMatrix w = eig.vectors;
  for (int j = 0; j < 4; ++j) w.col(j) *= std::sqrt(std::max(0.0, eig.values(j)));
  const ComplexMatrix yy = tensor(pauli::y(), pauli::y());
  const ComplexMatrix m = w.transpose() * yy * w;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  return std::max(0.0, sv(0) - sv(1) - sv(2) - sv(3));
}

double concurrence(const DensityOperator& rho) { return concurrence(rho.matrix()); }

double tangle(const DensityOperator& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double tangle_cut(const PureStateVector& psi, int j) {
  if (j < 0 || j >= psi.n_qubits()) throw IndexError("tangle_cut: qubit index out of range");
  const Eigen::Matrix2cd r = kernels::reduce_single(psi.span(), psi.n_qubits(), j);
  return 4.0 * (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
}

TangleReport ckw_report(const PureStateVector& psi, int step) {
  const int n = psi.n_qubits();
  check_capacity(n);
  TangleReport report;
  report.n = step;
  report.tau_pair = Eigen::MatrixXd::Zero(n, n);
  report.tau_cut = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) report.tau_cut(j) = tangle_cut(psi, j);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double c = concurrence(ComplexMatrix(kernels::reduce_pair(psi.span(), n, j, k)));
      report.tau_pair(j, k) = report.tau_pair(k, j) = c * c;
    }
  }
  report.delta = delta_of(report.tau_pair, report.tau_cut);
  return report;
}

PureStateVector evolve_pure_collisions(const Eigen::Vector2cd& psi_s, const Eigen::Vector2cd& phi,
                                       const Eigen::Matrix4cd& u, int n, int n_reservoir) {
  if (n_reservoir < 0 || n < 0 || n > n_reservoir) {
    throw DomainError("evolve_pure_collisions needs 0 <= n <= N");
  }
  check_capacity(n_reservoir + 1);
  if (unitarity_residual(u) > tol::kUnitarity) throw UnitarityError("collision gate is not unitary");
  std::vector<Eigen::Vector2cd> factors(static_cast<std::size_t>(n_reservoir) + 1, phi);
  factors[0] = psi_s;
  ComplexVector amps = PureStateVector::product(factors).amplitudes();
  const int total = n_reservoir + 1;
  std::span<Complex> view(amps.data(), static_cast<std::size_t>(amps.size()));
  for (int l = 1; l <= n; ++l) kernels::apply_two_qubit(view, total, u, 0, l);
  return PureStateVector(total, std::move(amps));
}

ComplexVector predict_homogenization_state(Complex alpha, Complex beta, double eta, int n, int n_reservoir) {
  if (n_reservoir < 0 || n < 0 || n > n_reservoir) {
    throw DomainError("predict_homogenization_state needs 0 <= n <= N");
  }
  check_capacity(n_reservoir + 1);
  const int total = n_reservoir + 1;
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << total);
  amps(0) = alpha * std::exp(kI * (eta * n));
  amps(Eigen::Index{1} << (total - 1)) = beta * ipow(c, n);
  for (int l = 1; l <= n; ++l) {
    amps(Eigen::Index{1} << (total - 1 - l)) = beta * kI * s * ipow(c, l - 1) * std::exp(kI * (eta * (n - l)));
  }
  return amps;
}

HomogenizationTangles predict_homogenization_tangles(Complex alpha, Complex beta, double eta, int n, int j,
                                                     int k) {
  (void)alpha;
  if (j < 1 || k < 1) throw IndexError("reservoir qubit indices start at 1");
  const double b4 = std::norm(beta) * std::norm(beta);
  const double c2 = std::cos(eta) * std::cos(eta);
  const double s2 = std::sin(eta) * std::sin(eta);
  HomogenizationTangles t{};
  t.tau_jk = (j <= n && k <= n && j != k) ? 4.0 * b4 * s2 * s2 * ipow(c2, j + k - 2) : 0.0;
  t.tau_0k = k <= n ? 4.0 * b4 * s2 * ipow(c2, n + k - 1) : 0.0;
  if (j <= n) {
    const double p = s2 * ipow(c2, j - 1);
    t.tau_j = 4.0 * b4 * p * (1.0 - p);
  }
  const double c2n = ipow(c2, n);
  t.tau_0 = 4.0 * b4 * c2n * (1.0 - c2n);
  return t;
}

DecoherenceTangles predict_decoherence_tangles(Complex alpha, Complex beta, Complex overlap, int n, int k) {
  if (k < 1) throw IndexError("reservoir qubit indices start at 1");
  const double o2 = std::norm(overlap);
  if (o2 > 1.0 + 1e-12) throw DomainError("overlap magnitude exceeds 1");
  const double ab = 4.0 * std::norm(alpha) * std::norm(beta);
  const double perp = std::max(0.0, 1.0 - o2);
  DecoherenceTangles t{};
  t.tau_jk = 0.0;
  t.tau_0k = k <= n ? ab * ipow(o2, n - 1) * perp : 0.0;
  t.tau_k = k <= n ? ab * perp : 0.0;
  t.tau_0 = ab * (1.0 - ipow(o2, n));
  return t;
}

TangleReport predict_homogenization_report(Complex alpha, Complex beta, double eta, int n, int n_reservoir) {
  if (n_reservoir < 0 || n < 0 || n > n_reservoir) throw DomainError("prediction needs 0 <= n <= N");
  const int total = n_reservoir + 1;
  TangleReport r;
  r.n = n;
  r.tau_pair = Eigen::MatrixXd::Zero(total, total);
  r.tau_cut = Eigen::VectorXd::Zero(total);
  r.tau_cut(0) = predict_homogenization_tangles(alpha, beta, eta, n, 1, 1).tau_0;
  for (int j = 1; j < total; ++j) {
    const auto t = predict_homogenization_tangles(alpha, beta, eta, n, j, j);
    r.tau_cut(j) = t.tau_j;
    r.tau_pair(0, j) = r.tau_pair(j, 0) = t.tau_0k;
    for (int k = j + 1; k < total; ++k) {
      r.tau_pair(j, k) = r.tau_pair(k, j) = predict_homogenization_tangles(alpha, beta, eta, n, j, k).tau_jk;
    }
  }
  r.delta = delta_of(r.tau_pair, r.tau_cut);
  return r;
}

TangleReport predict_decoherence_report(Complex alpha, Complex beta, Complex overlap, int n, int n_reservoir) {
  if (n_reservoir < 0 || n < 0 || n > n_reservoir) throw DomainError("prediction needs 0 <= n <= N");
  const int total = n_reservoir + 1;
  TangleReport r;
  r.n = n;
  r.tau_pair = Eigen::MatrixXd::Zero(total, total);
  r.tau_cut = Eigen::VectorXd::Zero(total);
  r.tau_cut(0) = predict_decoherence_tangles(alpha, beta, overlap, n, 1).tau_0;
  for (int k = 1; k < total; ++k) {
    const auto t = predict_decoherence_tangles(alpha, beta, overlap, n, k);
    r.tau_cut(k) = t.tau_k;
    r.tau_pair(0, k) = r.tau_pair(k, 0) = t.tau_0k;
  }
  r.delta = delta_of(r.tau_pair, r.tau_cut);
  return r;
}

Complex decoherence_overlap(const ControlledUnitary& cu, const Eigen::Vector2cd& phi) {
  cu.validate();
  if (cu.system_dim() != 2 || cu.environment_dim() != 2) {
    throw DimensionError("decoherence overlap is defined for qubit controlled unitaries");
  }
  const ComplexVector v0 = cu.targets[0] * ComplexVector(phi);
  const ComplexVector v1 = cu.targets[1] * ComplexVector(phi);
  return v0.dot(v1);  // conjugates v0
}

}  // namespace collidekit
