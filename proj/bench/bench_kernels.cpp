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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "collidekit/collision.hpp"
#include "collidekit/kernels.hpp"
#include "collidekit/random.hpp"

namespace ck = collidekit;

namespace {

ck::ComplexVector random_register(int n) {
  ck::Rng rng(99);
  return ck::random_pure_vector(1 << n, rng);
}

template <void (*Apply)(std::span<ck::Complex>, int, const ck::kernels::Gate4&, int, int)>
void BM_apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ck::ComplexVector psi = random_register(n);
  const ck::kernels::Gate4 gate = ck::partial_swap_unitary(0.3, 2);
  int a = 0;
  for (auto _ : state) {
    Apply({psi.data(), static_cast<std::size_t>(psi.size())}, n, gate, a, n - 1);
    a = (a + 1) % (n - 1);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * psi.size());
}

template <Eigen::Matrix4cd (*Reduce)(std::span<const ck::Complex>, int, int, int)>
void BM_reduce_pair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ck::ComplexVector psi = random_register(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Reduce({psi.data(), static_cast<std::size_t>(psi.size())}, n, 1, n - 2));
  }
  state.SetItemsProcessed(state.iterations() * psi.size());
}

}  // namespace

BENCHMARK(BM_apply<ck::kernels::serial::apply_two_qubit>)->DenseRange(10, 20, 2);
BENCHMARK(BM_apply<ck::kernels::parallel::apply_two_qubit>)->DenseRange(10, 20, 2);
BENCHMARK(BM_reduce_pair<ck::kernels::serial::reduce_pair>)->DenseRange(10, 20, 2);
BENCHMARK(BM_reduce_pair<ck::kernels::parallel::reduce_pair>)->DenseRange(10, 20, 2);

BENCHMARK_MAIN();
