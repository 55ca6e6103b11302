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

// Seeded samplers for states, unitaries and Bloch vectors.

#pragma once

#include <random>

#include "collidekit/linalg.hpp"
#include "collidekit/state.hpp"

namespace collidekit {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int dim, Rng& rng);
/// Haar-random unit vector.
ComplexVector random_pure_vector(int dim, Rng& rng);
/// Hilbert-Schmidt random mixed state, G G^dagger / tr.
DensityOperator random_density(int dim, Rng& rng);
/// Uniform in the unit ball.
BlochVector random_bloch(Rng& rng);
double random_uniform(double lo, double hi, Rng& rng);

}  // namespace collidekit
