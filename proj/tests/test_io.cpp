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

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <random>
#include <sstream>

#include "collidekit/errors.hpp"
#include "collidekit/io.hpp"
#include "oracles.hpp"

using namespace collidekit;
using io::json;

TEST_CASE("double formatting round trips", "[io]") {
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    REQUIRE(std::strtod(io::format_double(v).c_str(), nullptr) == v);
  }
  REQUIRE(io::format_double(0.0) == "0");
  REQUIRE(io::format_double(1.0) == "1");
  REQUIRE(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("complex matrices", "[io]") {
  std::mt19937_64 rng(71);
  const ComplexMatrix m = oracle::random_unitary(rng, 3);
  const json j = io::matrix_to_json(m);
  REQUIRE(io::matrix_from_json(json::parse(j.dump())) == m);

  const auto real_only = io::matrix_from_json(json::parse(R"({"re": [[1, 2], [3, 4]]})"));
  REQUIRE(real_only.imag().norm() == 0.0);
  REQUIRE(real_only(1, 0) == Complex(3, 0));
  REQUIRE_THROWS_AS(io::matrix_from_json(json::parse(R"({"re": [[1, 2], [3]]})")), ShapeError);
  REQUIRE_THROWS_AS(io::matrix_from_json(json::parse(R"({"re": [[1]], "im": [[1, 2]]})")), ShapeError);
  REQUIRE_THROWS_AS(io::matrix_from_json(json::parse(R"({"re": [["a"]]})")), ShapeError);
  REQUIRE_THROWS_AS(io::matrix_from_json(json::parse("[[1]]")), ShapeError);
}

TEST_CASE("state specifications", "[io]") {
  const auto a = io::density_from_json(json::parse("[0.1, 0.2, -0.3]"));
  const auto b = io::density_from_json(json::parse(R"({"bloch": [0.1, 0.2, -0.3]})"));
  REQUIRE(hs_distance(a, b) == 0.0);
  REQUIRE((bloch_from_density(a).vector() - Eigen::Vector3d(0.1, 0.2, -0.3)).norm() < 1e-16);

  std::mt19937_64 rng(72);
  const auto rho = DensityOperator::from_matrix(oracle::random_state(rng, 3));
  const auto back = io::density_from_json(json::parse(io::density_to_json(rho).dump()));
  REQUIRE(hs_distance(back, rho) == 0.0);

  const auto inl = json::parse(io::density_inline(rho));
  REQUIRE(io::matrix_from_json(inl) == rho.matrix());

  REQUIRE_THROWS_AS(io::density_from_json(json::parse("[0.1, 0.2]")), ShapeError);
  REQUIRE_THROWS_AS(io::density_from_json(json::parse("[0.9, 0.9, 0]")), PositivityError);
  REQUIRE_THROWS_AS(io::density_from_json(json::parse(R"({"dim": 3, "re": [[1, 0], [0, 0]]})")), ShapeError);
  REQUIRE_THROWS_AS(io::density_from_json(json::parse(R"("zero")")), ShapeError);
}

TEST_CASE("channels and generators", "[io]") {
  const auto e = channels::universal_not();
  const auto back = io::ptm_from_json(json::parse(io::ptm_to_json(e).dump()));
  REQUIRE(back.matrix() == e.matrix());
  const auto wrapped = io::ptm_from_json(json{{"ptm", io::ptm_to_json(e)}});
  REQUIRE(wrapped.matrix() == e.matrix());
  REQUIRE_THROWS_AS(io::ptm_from_json(json::parse("[[1, 0], [0, 1]]")), ShapeError);
  REQUIRE_THROWS_AS(io::ptm_from_json(json::parse("[[0,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")),
                    TracePreservationError);

  const auto ks = io::kraus_from_json(json::parse(R"({"kraus": [{"re": [[0, 1], [1, 0]]}]})"));
  REQUIRE(ks.size() == 1);
  REQUIRE(ks[0](0, 1) == Complex(1, 0));
  REQUIRE_THROWS_AS(io::kraus_from_json(json::parse("[]")), ShapeError);

  const json g = io::generator_to_json(Generator::zero());
  REQUIRE(g.at("lindblad_valid").get<bool>());
  REQUIRE(g.at("h").size() == 3);
  REQUIRE(g.at("C_re").size() == 3);
  REQUIRE(g.at("min_eig_C").get<double>() == 0.0);
}

TEST_CASE("CSV writer", "[io]") {
  std::ostringstream os;
  io::CsvWriter csv(os, {"a", "b"});
  csv.row({"1", "x,y"});
  csv.row({"say \"hi\"", "line\nbreak"});
  REQUIRE(os.str() == "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\"line\nbreak\"\n");
  REQUIRE_THROWS_AS(csv.row({"1"}), ShapeError);
}

TEST_CASE("trajectory CSV", "[io]") {
  const auto xi = density_from_bloch(BlochVector(0, 0, 1));
  const auto traj = run_homogenization(density_from_bloch(BlochVector(0, 0, -1)), xi, 0.4, 4, 2);
  std::ostringstream os;
  io::write_trajectory_csv(os, traj);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "step,D_sys,D_res,rho_S,xi_prime");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  REQUIRE(rows == 3);  // steps 0, 2, 4

  std::ostringstream with_basis;
  io::write_trajectory_csv(with_basis, traj, ComplexMatrix::Identity(2, 2));
  REQUIRE(with_basis.str().substr(0, with_basis.str().find('\n')) == "step,D_sys,D_res,rho_S,xi_prime,coherence");
}
