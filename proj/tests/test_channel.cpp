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

#include <cmath>
#include <random>

#include "collidekit/channel.hpp"
#include "collidekit/collision.hpp"
#include "collidekit/errors.hpp"
#include "collidekit/semigroup.hpp"
#include "oracles.hpp"

using namespace collidekit;
using Catch::Matchers::WithinAbs;

namespace {

PauliTransferMatrix random_channel(std::mt19937_64& rng) {
  return channel_from_collision(oracle::random_unitary(rng, 4), DensityOperator::from_matrix(oracle::random_state(rng)));
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

bool tp_row_exact(const PauliTransferMatrix& e) {
  return e.matrix()(0, 0) == 1.0 && e.matrix()(0, 1) == 0.0 && e.matrix()(0, 2) == 0.0 && e.matrix()(0, 3) == 0.0;
}

}  // namespace

TEST_CASE("transfer matrix construction", "[channel]") {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 2) = 1e-3;
  REQUIRE_THROWS_AS(PauliTransferMatrix(m), TracePreservationError);
  m(0, 2) = 1e-13;
  const PauliTransferMatrix e(m);
  REQUIRE(tp_row_exact(e));
  const auto a = PauliTransferMatrix::affine(Eigen::Vector3d(0.1, 0.2, 0.3), 0.5 * Eigen::Matrix3d::Identity());
  REQUIRE((a.translation() - Eigen::Vector3d(0.1, 0.2, 0.3)).norm() == 0.0);
  REQUIRE((a.linear() - 0.5 * Eigen::Matrix3d::Identity()).norm() == 0.0);
}

TEST_CASE("channels from collisions", "[channel]") {
  SECTION("partial swap with a z-polarized particle") {
    const double eta = 0.3, w = 0.8;
    const double c = std::cos(eta), s = std::sin(eta);
    const auto e = channel_from_collision(partial_swap_unitary(eta, 2),
                                          density_from_bloch(BlochVector(0, 0, w)));
    Eigen::Matrix4d want;
    want << 1, 0, 0, 0,
            0, c * c, c * s * w, 0,
            0, -c * s * w, c * c, 0,
            s * s * w, 0, 0, c * c;
    REQUIRE(max_abs(e.matrix() - want) < 1e-15);
  }
  SECTION("CTRL-Z with |+> fully dephases") {
    const auto e = channel_from_collision(controlled_unitary(ctrl_z()), density_from_bloch(BlochVector(1, 0, 0)));
    REQUIRE(max_abs(e.matrix() - Eigen::Vector4d(1, 0, 0, 1).asDiagonal().toDenseMatrix()) < 1e-15);
  }
  SECTION("identity collision") {
    const auto e = channel_from_collision(ComplexMatrix::Identity(4, 4), density_from_bloch(BlochVector(0.2, 0, 0)));
    REQUIRE(max_abs(e.matrix() - Eigen::Matrix4d::Identity()) < 1e-15);
  }
  SECTION("apply agrees with collide") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
      const ComplexMatrix u = oracle::random_unitary(rng, 4);
      const auto xi = DensityOperator::from_matrix(oracle::random_state(rng));
      const auto rho = DensityOperator::from_matrix(oracle::random_state(rng));
      const auto e = channel_from_collision(u, xi);
      REQUIRE(tp_row_exact(e));
      const auto [s, env] = oracle::collide(rho.matrix(), xi.matrix(), u);
      REQUIRE((apply(e, rho).matrix() - s).cwiseAbs().maxCoeff() < 1e-12);
      REQUIRE(is_completely_positive(e).completely_positive);
    }
  }
  REQUIRE_THROWS_AS(channel_from_collision(2.0 * ComplexMatrix::Identity(4, 4), DensityOperator::maximally_mixed(2)),
                    UnitarityError);
  REQUIRE_THROWS_AS(channel_from_collision(ComplexMatrix::Identity(6, 6), DensityOperator::maximally_mixed(3)),
                    DimensionError);
}

TEST_CASE("Kraus channels", "[channel]") {
  const double g = 0.3;
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1 - g);
  a1 << 0, std::sqrt(g), 0, 0;
  const auto e = channel_from_kraus({a0, a1});
  const Eigen::Matrix4d want =
      oracle::ptm([&](const oracle::M& x) { return oracle::M(a0 * x * a0.adjoint() + a1 * x * a1.adjoint()); });
  REQUIRE(max_abs(e.matrix() - want) < 1e-15);
  REQUIRE_THAT(e.matrix()(3, 0), WithinAbs(g, 1e-15));
  REQUIRE_THROWS_AS(channel_from_kraus({a0}), TracePreservationError);
  REQUIRE_THROWS_AS(channel_from_kraus({}), DimensionError);
  REQUIRE_THROWS_AS(channel_from_kraus({ComplexMatrix::Identity(3, 3)}), DimensionError);
}

TEST_CASE("composition", "[channel]") {
  std::mt19937_64 rng(22);
  const auto e = random_channel(rng);
  REQUIRE(max_abs(compose(e, PauliTransferMatrix::identity()).matrix() - e.matrix()) == 0.0);
  REQUIRE(max_abs(compose(PauliTransferMatrix::identity(), e).matrix() - e.matrix()) == 0.0);

  SECTION("two collisions") {
    const ComplexMatrix u = oracle::random_unitary(rng, 4);
    const ComplexMatrix xi = oracle::random_state(rng);
    const auto one = channel_from_collision(u, DensityOperator::from_matrix(xi));
    const Eigen::Matrix4d two = oracle::ptm([&](const oracle::M& x) {
      const oracle::M step = oracle::trace_second(u * oracle::kron(x, xi) * u.adjoint(), 2, 2);
      return oracle::M(oracle::trace_second(u * oracle::kron(step, xi) * u.adjoint(), 2, 2));
    });
    REQUIRE(max_abs(compose(one, one).matrix() - two) < 1e-13);
  }
  SECTION("order: outer after inner") {
    const auto dephase = channel_from_collision(controlled_unitary(ctrl_z()), density_from_bloch(BlochVector(1, 0, 0)));
    const auto rotate = channel_from_kraus({ComplexMatrix(Eigen::Matrix2cd((Eigen::Matrix2cd() << 0, 1, 1, 0).finished()))});
    const auto rho = density_from_bloch(BlochVector(0.6, 0, 0.3));
    const auto direct = apply(dephase, apply(rotate, rho));
    REQUIRE(hs_distance(apply(compose(dephase, rotate), rho), direct) < 1e-15);
  }
  SECTION("fixed point of the homogenization channel") {
    const auto xi = density_from_bloch(BlochVector(0.2, -0.3, 0.5));
    const auto h = channel_from_collision(partial_swap_unitary(0.7, 2), xi);
    REQUIRE(hs_distance(apply(h, xi), xi) < 1e-15);
  }
  SECTION("identity acts trivially") {
    const auto rho = DensityOperator::from_matrix(oracle::random_state(rng));
    REQUIRE(hs_distance(apply(channels::identity(), rho), rho) < 1e-15);
  }
}

TEST_CASE("Choi matrix and complete positivity", "[channel]") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto e = random_channel(rng);
    const ComplexMatrix j = choi(e);
    REQUIRE((j - oracle::choi(e.matrix())).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE_THAT(j.trace().real(), WithinAbs(1.0, 1e-14));
    REQUIRE(hermiticity_residual(j) < 1e-15);
  }
  const auto t = is_completely_positive(channels::transpose());
  REQUIRE_FALSE(t.completely_positive);
  REQUIRE_THAT(t.min_eigenvalue, WithinAbs(-0.5, 1e-15));
  REQUIRE_THAT(oracle::min_eig(oracle::choi(channels::transpose().matrix())), WithinAbs(-0.5, 1e-15));
  REQUIRE(is_completely_positive(channels::universal_not()).completely_positive);
  REQUIRE(is_completely_positive(channels::identity()).completely_positive);

  // The universal NOT preset is rho -> (I + rho^T)/3.
  const auto rho = DensityOperator::from_matrix(oracle::random_state(rng));
  const ComplexMatrix want = (ComplexMatrix::Identity(2, 2) + rho.matrix().transpose()) / 3.0;
  REQUIRE((apply(channels::universal_not(), rho).matrix() - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("determinant", "[channel]") {
  REQUIRE_THAT(determinant(channels::universal_not()), WithinAbs(-1.0 / 27.0, 1e-15));
  std::mt19937_64 rng(24);
  const ComplexMatrix v = oracle::random_unitary(rng, 2);
  const auto unitary = channel_from_kraus({v});
  REQUIRE_THAT(determinant(unitary), WithinAbs(1.0, 1e-14));
  const auto depolarize = PauliTransferMatrix::affine(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero());
  REQUIRE(determinant(depolarize) == 0.0);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_channel(rng), b = random_channel(rng);
    REQUIRE_THAT(determinant(compose(a, b)), WithinAbs(determinant(a) * determinant(b), 1e-12));
    REQUIRE(std::abs(determinant(a)) <= 1.0 + 1e-12);
    REQUIRE(tp_row_exact(compose(a, b)));
  }
}

TEST_CASE("divisibility diagnostics", "[channel]") {
  const auto unot = divisibility_report(channels::universal_not());
  REQUIRE(unot.negative_det);
  REQUIRE_FALSE(unot.principal_log_lindblad);
  REQUIRE_THAT(unot.det, WithinAbs(-1.0 / 27.0, 1e-15));

  const auto hom = divisibility_report(channel_from_collision(partial_swap_unitary(0.3, 2),
                                                              density_from_bloch(BlochVector(0, 0, 0.8))));
  REQUIRE_FALSE(hom.negative_det);
  REQUIRE(hom.principal_log_lindblad);
  REQUIRE_FALSE(hom.is_unitary);

  const auto id = divisibility_report(channels::identity());
  REQUIRE(id.is_unitary);
  REQUIRE(id.principal_log_lindblad);
  REQUIRE_THAT(id.det, WithinAbs(1.0, 1e-15));

  // Rotation by pi about z: unitary, but the principal log sits on the cut.
  const auto flip = divisibility_report(PauliTransferMatrix(Eigen::Vector4d(1, -1, -1, 1).asDiagonal().toDenseMatrix()));
  REQUIRE(flip.is_unitary);
  REQUIRE_FALSE(flip.principal_log_lindblad);

  REQUIRE_THROWS_AS(divisibility_report(PauliTransferMatrix::affine(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero())),
                    SingularChannelError);
}
