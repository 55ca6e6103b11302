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
/// State-vector kernels on an n-qubit register.
///
/// Amplitude index layout: qubit 0 is the most significant bit, so qubit q
/// lives at bit position (n - 1 - q). This matches tensor() ordering.
///
/// `serial` holds the straightforward reference loops; `parallel` holds the
/// OpenMP versions. The unqualified entry points dispatch on register size.
/// Parallel reductions accumulate over a fixed block decomposition that does
/// not depend on the thread count, so results are reproducible run to run.

#pragma once

#include <span>

#include <Eigen/Dense>

#include "collidekit/linalg.hpp"

namespace collidekit::kernels {

using Gate4 = Eigen::Matrix4cd;

/// Registers with at least this many qubits use the OpenMP kernels.
inline constexpr int kParallelThreshold = 14;

namespace serial {
/// Applies a 4x4 gate to qubits (a, b); `a` is the high factor of the gate.
void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b);
/// Two-qubit reduced density matrix, row index (x_a x_b).
Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b);
Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q);
double norm_squared(std::span<const Complex> amps);
}  // namespace serial

namespace parallel {
void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b);
Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b);
Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q);
double norm_squared(std::span<const Complex> amps);
}  // namespace parallel

void apply_two_qubit(std::span<Complex> amps, int n_qubits, const Gate4& gate, int a, int b);
Eigen::Matrix4cd reduce_pair(std::span<const Complex> amps, int n_qubits, int a, int b);
Eigen::Matrix2cd reduce_single(std::span<const Complex> amps, int n_qubits, int q);
double norm_squared(std::span<const Complex> amps);

}  // namespace collidekit::kernels
