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

#include "collidekit/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "collidekit/errors.hpp"

namespace collidekit::kernels {
namespace {

using Index = std::uint64_t;

// Reduction blocks, fixed so the summation order is thread-count independent.
constexpr Index kBlocks = 256;

inline Index insert_zero(Index x, int pos) {
  const Index low = x & ((Index{1} << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

struct PairLayout {
  int lo, hi;
  Index bit_a, bit_b;
};

PairLayout pair_layout(std::span<const Complex> amps, int n, int a, int b) {
  if (n < 2 || n > 62) throw DimensionError("kernels: register size out of range");
  if (amps.size() != (Index{1} << n)) throw DimensionError("kernels: amplitude count != 2^n");
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw IndexError("kernels: qubit indices must be distinct and in range");
  }
  const int pa = n - 1 - a;
  const int pb = n - 1 - b;
  return {std::min(pa, pb), std::max(pa, pb), Index{1} << pa, Index{1} << pb};
}

inline std::array<Index, 4> pair_indices(Index k, const PairLayout& l) {
  const Index base = insert_zero(insert_zero(k, l.lo), l.hi);
  return {base, base | l.bit_b, base | l.bit_a, base | l.bit_a | l.bit_b};
}

inline void apply_at(Complex* amps, const Gate4& g, const std::array<Index, 4>& idx) {
  const Complex v0 = amps[idx[0]], v1 = amps[idx[1]], v2 = amps[idx[2]], v3 = amps[idx[3]];
  for (int r = 0; r < 4; ++r) {
    amps[idx[r]] = g(r, 0) * v0 + g(r, 1) * v1 + g(r, 2) * v2 + g(r, 3) * v3;
  }
}

void check_single(std::span<const Complex> amps, int n, int q) {
  if (n < 1 || n > 62) throw DimensionError("kernels: register size out of range");
  if (amps.size() != (Index{1} << n)) throw DimensionError("kernels: amplitude count != 2^n");
  if (q < 0 || q >= n) throw IndexError("kernels: qubit index out of range");
}

inline Index block_begin(Index b, Index count, Index blocks) { return b * count / blocks; }

}  // namespace

namespace serial {

void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b) {
  const auto layout = pair_layout(amps, n_qubits, a, b);
  const Index groups = Index{1} << (n_qubits - 2);
  for (Index k = 0; k < groups; ++k) apply_at(amps.data(), gate, pair_indices(k, layout));
}

Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b) {
  const auto layout = pair_layout(amps, n_qubits, a, b);
  const Index groups = Index{1} << (n_qubits - 2);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (Index k = 0; k < groups; ++k) {
    const auto idx = pair_indices(k, layout);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) rho(r, c) += amps[idx[r]] * std::conj(amps[idx[c]]);
    }
  }
  return rho;
}

Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q) {
  check_single(amps, n_qubits, q);
  const int p = n_qubits - 1 - q;
  const Index bit = Index{1} << p;
  const Index groups = Index{1} << (n_qubits - 1);
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (Index k = 0; k < groups; ++k) {
    const Index i0 = insert_zero(k, p);
    const Complex v0 = amps[i0], v1 = amps[i0 | bit];
    rho(0, 0) += v0 * std::conj(v0);
    rho(0, 1) += v0 * std::conj(v1);
    rho(1, 1) += v1 * std::conj(v1);
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

double norm_squared(std::span<const Complex> amps) {
  double acc = 0.0;
  for (const auto& v : amps) acc += std::norm(v);
  return acc;
}

}  // namespace serial

namespace parallel {

void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b) {
  const auto layout = pair_layout(amps, n_qubits, a, b);
  const std::int64_t groups = std::int64_t{1} << (n_qubits - 2);
  Complex* data = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < groups; ++k) {
    apply_at(data, gate, pair_indices(static_cast<Index>(k), layout));
  }
}

Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b) {
  const auto layout = pair_layout(amps, n_qubits, a, b);
  const Index groups = Index{1} << (n_qubits - 2);
  const Index blocks = std::min(kBlocks, groups);
  std::vector<Eigen::Matrix4cd> partial(blocks, Eigen::Matrix4cd::Zero());
  const Complex* data = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t bl = 0; bl < static_cast<std::int64_t>(blocks); ++bl) {
    Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
    const Index end = block_begin(bl + 1, groups, blocks);
    for (Index k = block_begin(bl, groups, blocks); k < end; ++k) {
      const auto idx = pair_indices(k, layout);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) acc(r, c) += data[idx[r]] * std::conj(data[idx[c]]);
      }
    }
    partial[bl] = acc;
  }
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& p : partial) rho += p;
  return rho;
}

Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q) {
  check_single(amps, n_qubits, q);
  const int p = n_qubits - 1 - q;
  const Index bit = Index{1} << p;
  const Index groups = Index{1} << (n_qubits - 1);
  const Index blocks = std::min(kBlocks, groups);
  std::vector<std::array<Complex, 3>> partial(blocks);
  const Complex* data = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t bl = 0; bl < static_cast<std::int64_t>(blocks); ++bl) {
    Complex r00 = 0.0, r01 = 0.0, r11 = 0.0;
    const Index end = block_begin(bl + 1, groups, blocks);
    for (Index k = block_begin(bl, groups, blocks); k < end; ++k) {
      const Index i0 = insert_zero(k, p);
      const Complex v0 = data[i0], v1 = data[i0 | bit];
      r00 += v0 * std::conj(v0);
      r01 += v0 * std::conj(v1);
      r11 += v1 * std::conj(v1);
    }
    partial[bl] = {r00, r01, r11};
  }
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (const auto& p3 : partial) {
    rho(0, 0) += p3[0];
    rho(0, 1) += p3[1];
    rho(1, 1) += p3[2];
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

double norm_squared(std::span<const Complex> amps) {
  const Index count = amps.size();
  const Index blocks = std::max<Index>(1, std::min(kBlocks, count));
  std::vector<double> partial(blocks, 0.0);
  const Complex* data = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t bl = 0; bl < static_cast<std::int64_t>(blocks); ++bl) {
    double acc = 0.0;
    const Index end = block_begin(bl + 1, count, blocks);
    for (Index k = block_begin(bl, count, blocks); k < end; ++k) acc += std::norm(data[k]);
    partial[bl] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace parallel

void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b) {
  if (n_qubits >= kParallelThreshold) return parallel::apply_two_qubit(amps, n_qubits, gate, a, b);
  serial::apply_two_qubit(amps, n_qubits, gate, a, b);
}

Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b) {
  if (n_qubits >= kParallelThreshold) return parallel::reduce_pair(amps, n_qubits, a, b);
  return serial::reduce_pair(amps, n_qubits, a, b);
}

Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q) {
  if (n_qubits >= kParallelThreshold) return parallel::reduce_single(amps, n_qubits, q);
  return serial::reduce_single(amps, n_qubits, q);
}

double norm_squared(std::span<const Complex> amps) {
  if (amps.size() >= (std::size_t{1} << kParallelThreshold)) return parallel::norm_squared(amps);
  return serial::norm_squared(amps);
}

}  // namespace collidekit::kernels
