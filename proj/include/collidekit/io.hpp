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

// JSON and CSV serialization. Floats are written with 17 significant digits.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collidekit/channel.hpp"
#include "collidekit/collision.hpp"
#include "collidekit/entanglement.hpp"
#include "collidekit/semigroup.hpp"
#include "collidekit/state.hpp"

namespace collidekit::io {

using nlohmann::json;

/// "%.17g".
std::string format_double(double v);

/// {"re": [[...]], "im": [[...]]}. Throws ShapeError on ragged or missing parts.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

/// Accepts a Bloch array [x, y, z], {"bloch": [x, y, z]}, or
/// {"dim": d, "re": [[...]], "im": [[...]]} (im optional). Throws ShapeError
/// for malformed input, plus the usual state validation errors.
DensityOperator density_from_json(const json& j);
json density_to_json(const DensityOperator& rho);

/// Compact inline form with 17-digit numbers, for CSV cells.
std::string density_inline(const DensityOperator& rho);

PauliTransferMatrix ptm_from_json(const json& j);
json ptm_to_json(const PauliTransferMatrix& e);

/// {"kraus": [{"re":..., "im":...}, ...]} or the bare list.
std::vector<ComplexMatrix> kraus_from_json(const json& j);

json generator_to_json(const Generator& g);

/// RFC 4180 style: fields containing a comma, quote or newline are quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
  std::size_t width_;
};

/// step, D_sys, D_res, rho_S, xi_prime [, coherence]. The coherence column is
/// |rho_01| in `basis` when `basis` is non-empty.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const ComplexMatrix& basis = {});

}  // namespace collidekit::io
