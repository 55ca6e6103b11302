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

#include "collidekit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "collidekit/errors.hpp"

namespace collidekit {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial_trace: matrix is not square");
  if (dims.empty()) throw DimensionError("partial_trace: no subsystem dimensions");
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: subsystem dimension must be positive");
    total *= d;
  }
  if (total != m.rows()) {
    throw DimensionError("partial_trace: product of dims " + std::to_string(total) +
                         " != matrix dimension " + std::to_string(m.rows()));
  }
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: keep index out of range");
    kept[k] = true;
  }

  // Row-major strides of each subsystem in the full index.
  std::vector<long> stride(n);
  stride[n - 1] = 1;
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> kept_sys, traced_sys;
  for (int i = 0; i < n; ++i) (kept[i] ? kept_sys : traced_sys).push_back(i);

  long dk = 1, dt = 1;
  for (int i : kept_sys) dk *= dims[i];
  for (int i : traced_sys) dt *= dims[i];

  // Offset in the full index contributed by a multi-index over a subsystem set.
  auto offsets = [&](const std::vector<int>& sys, long count) {
    std::vector<long> off(count, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx;
      long o = 0;
      for (int p = static_cast<int>(sys.size()) - 1; p >= 0; --p) {
        const int s = sys[p];
        o += (rem % dims[s]) * stride[s];
        rem /= dims[s];
      }
      off[idx] = o;
    }
    return off;
  };
  const auto kept_off = offsets(kept_sys, dk);
  const auto traced_off = offsets(traced_sys, dt);

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r) {
    for (long c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (long t = 0; t < dt; ++t) acc += m(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ShapeError("hermitian_eig: matrix is not square");
  if (hermiticity_residual(h) > tol::kHermiticity) {
    throw ShapeError("hermitian_eig: matrix is not Hermitian");
  }
  // Symmetrize away residual anti-Hermitian roundoff before solving.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::Index n = h.rows();
  HermitianEigen out{Eigen::VectorXd(n), ComplexMatrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix_exp: matrix is not square");
  return m.exp();
}

ComplexMatrix matrix_log_principal(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix_log_principal: matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw ShapeError("matrix_log_principal: eigensolver failed");
  const ComplexVector& lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex l = lambda(i);
    if (std::abs(l) < 1e-14 * scale) {
      throw SingularChannelError("matrix_log_principal: matrix is singular");
    }
    if (l.real() < 0.0 && std::abs(l.imag()) <= 1e-12 * std::abs(l)) {
      throw BranchCutError("matrix_log_principal: eigenvalue on the negative real axis");
    }
  }

  const ComplexMatrix& v = solver.eigenvectors();
  Eigen::PartialPivLU<ComplexMatrix> lu(v);
  const double rcond = lu.rcond();
  if (rcond > 1e-8) {
    const ComplexMatrix v_inv = lu.inverse();
    const ComplexMatrix recon = v * lambda.asDiagonal() * v_inv;
    if ((recon - m).cwiseAbs().maxCoeff() <= tol::kReconstruction * scale) {
      ComplexVector log_lambda(n);
      for (Eigen::Index i = 0; i < n; ++i) log_lambda(i) = std::log(lambda(i));
      return v * log_lambda.asDiagonal() * v_inv;
    }
  }
  // Defective or badly conditioned eigenbasis.
  return m.log();
}

namespace pauli {
namespace {
ComplexMatrix make(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix out(2, 2);
  out << a, b, c, d;
  return out;
}
}  // namespace

const ComplexMatrix& identity() {
  static const ComplexMatrix m = make(1.0, 0.0, 0.0, 1.0);
  return m;
}
const ComplexMatrix& x() {
  static const ComplexMatrix m = make(0.0, 1.0, 1.0, 0.0);
  return m;
}
const ComplexMatrix& y() {
  static const ComplexMatrix m = make(0.0, Complex(0, -1), Complex(0, 1), 0.0);
  return m;
}
const ComplexMatrix& z() {
  static const ComplexMatrix m = make(1.0, 0.0, 0.0, -1.0);
  return m;
}
const std::array<ComplexMatrix, 4>& all() {
  static const std::array<ComplexMatrix, 4> basis{identity(), x(), y(), z()};
  return basis;
}
}  // namespace pauli

}  // namespace collidekit
