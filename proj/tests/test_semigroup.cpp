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
#include <numbers>
#include <random>

#include "collidekit/channel.hpp"
#include "collidekit/errors.hpp"
#include "collidekit/random.hpp"
#include "collidekit/semigroup.hpp"
#include "oracles.hpp"

using namespace collidekit;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::Matrix4d power(const Eigen::Matrix4d& m, int n) {
  Eigen::Matrix4d out = Eigen::Matrix4d::Identity();
  for (int i = 0; i < n; ++i) out = out * m;
  return out;
}

LindbladDecomposition random_decomposition(std::mt19937_64& rng, bool positive) {
  std::normal_distribution<double> n(0.0, 1.0);
  LindbladDecomposition d;
  d.h = Eigen::Vector3d(n(rng), n(rng), n(rng));
  Eigen::Matrix3cd a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(n(rng), n(rng));
  d.c = positive ? Eigen::Matrix3cd(a * a.adjoint()) : Eigen::Matrix3cd(a + a.adjoint());
  return d;
}

}  // namespace

TEST_CASE("homogenization channel powers", "[semigroup]") {
  REQUIRE(max_abs(homogenization_ptm_power(0.4, 0.5, 0).matrix() - Eigen::Matrix4d::Identity()) == 0.0);
  const double eta = 0.3, w = 0.7;
  const double c = std::cos(eta), s = std::sin(eta);
  Eigen::Matrix4d one;
  one << 1, 0, 0, 0,
         0, c * c, c * s * w, 0,
         0, -c * s * w, c * c, 0,
         s * s * w, 0, 0, c * c;
  REQUIRE(max_abs(homogenization_ptm(eta, w).matrix() - one) < 1e-15);
  REQUIRE(max_abs(homogenization_ptm_power(eta, w, 5).matrix() - power(one, 5)) < 1e-12);

  Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const double e = random_uniform(-kPi, kPi, rng), ww = random_uniform(-1, 1, rng);
    const auto single = homogenization_ptm(e, ww).matrix();
    for (int n = 0; n <= 10; ++n) {
      REQUIRE(max_abs(homogenization_ptm_power(e, ww, n).matrix() - power(single, n)) < 1e-12);
    }
  }
  REQUIRE_THROWS_AS(homogenization_ptm_power(0.3, 0.5, -1), DomainError);
  REQUIRE_THROWS_AS(homogenization_ptm(0.3, 1.5), DomainError);
}

TEST_CASE("homogenization semigroup", "[semigroup]") {
  const auto p = HomogenizationSemigroupParams::make(0.3, 0.8);
  REQUIRE_THAT(p.theta, WithinAbs(std::atan(0.8 * std::tan(0.3)), 1e-15));
  REQUIRE(p.gamma1 >= 0.0);
  REQUIRE(p.gamma2 >= p.gamma1 / 2 - 1e-15);
  REQUIRE(max_abs(homogenization_semigroup_map(p, 0).matrix() - Eigen::Matrix4d::Identity()) == 0.0);
  REQUIRE(max_abs(homogenization_semigroup_map(p, 1).matrix() - homogenization_ptm(0.3, 0.8).matrix()) < 1e-15);

  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const double eta = random_uniform(-kPi, kPi, rng);
    const double w = random_uniform(-1, 1, rng), tau = random_uniform(0.2, 3, rng);
    if (std::abs(std::cos(eta)) < 0.05) continue;
    const auto q = HomogenizationSemigroupParams::make(eta, w, tau);
    const auto e = homogenization_ptm(eta, w);
    for (int n = 1; n <= 10; ++n) {
      REQUIRE(max_abs(homogenization_semigroup_map(q, n * tau).matrix() - homogenization_ptm_power(eta, w, n).matrix()) <
              1e-11);
    }
    const double t = random_uniform(0, 5, rng), s = random_uniform(0, 5, rng);
    REQUIRE(max_abs(compose(homogenization_semigroup_map(q, t), homogenization_semigroup_map(q, s)).matrix() -
                    homogenization_semigroup_map(q, t + s).matrix()) < 1e-11);
    for (double tt : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      REQUIRE(is_completely_positive(homogenization_semigroup_map(q, tt * tau)).completely_positive);
    }
    REQUIRE(max_abs(semigroup_map(homogenization_generator(q), 2.5).matrix() -
                    homogenization_semigroup_map(q, 2.5).matrix()) < 1e-12);
    REQUIRE(max_abs(generator_from_log(e, tau).matrix() - homogenization_generator(q).matrix()) < 1e-10);
  }
  REQUIRE_THROWS_AS(homogenization_semigroup_map(p, -1), DomainError);
  REQUIRE_THROWS_AS(HomogenizationSemigroupParams::make(kPi / 2, 0.5), SingularChannelError);
  REQUIRE_THROWS_AS(HomogenizationSemigroupParams::make(0.3, 0.5, 0.0), DomainError);
}

TEST_CASE("decoherence channels", "[semigroup]") {
  REQUIRE(max_abs(decoherence_ptm(1.0, 0.0).matrix() - Eigen::Matrix4d::Identity()) == 0.0);
  REQUIRE_THROWS_AS(decoherence_ptm(1.2, 0.0), DomainError);

  SECTION("parameters from collisions") {
    const auto p = decoherence_params_from_collision(ctrl_z(), density_from_bloch(BlochVector(0.5, 0, 0)));
    REQUIRE(p.lambda < 1e-16);  // tr(sigma_z xi) = 0 for an x-polarized particle
    REQUIRE(p.phi == 0.0);
    const double theta = 0.4;
    const ComplexMatrix v1 = matrix_exp(Complex(0, theta) * pauli::z());
    const auto q = decoherence_params_from_collision(ControlledUnitary::computational({pauli::identity(), v1}),
                                                     density_from_bloch(BlochVector(0, 0, 1)));
    REQUIRE_THAT(q.lambda, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(q.phi, WithinAbs(-theta, 1e-15));
  }
  SECTION("matches the collision channel") {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 50; ++trial) {
      const auto cu = ControlledUnitary::computational({oracle::random_unitary(rng, 2), oracle::random_unitary(rng, 2)});
      const auto xi = DensityOperator::from_matrix(oracle::random_state(rng));
      const auto p = decoherence_params_from_collision(cu, xi);
      REQUIRE(p.phi > -kPi);
      REQUIRE(p.phi <= kPi);
      const auto e = decoherence_ptm(p.lambda, p.phi);
      REQUIRE(max_abs(e.matrix() - channel_from_collision(controlled_unitary(cu), xi).matrix()) < 1e-14);
      for (int n = 1; n <= 10; ++n) {
        REQUIRE(max_abs(decoherence_semigroup_map(p, n).matrix() - power(e.matrix(), n)) < 1e-11);
      }
      const Generator g = generator_from_log(e);
      REQUIRE(max_abs(g.matrix() - decoherence_generator(p).matrix()) < 1e-10);
      REQUIRE(max_abs(semigroup_map(g, 1.0).matrix() - e.matrix()) < 1e-10);
      REQUIRE(max_abs(compose(decoherence_semigroup_map(p, 0.7), decoherence_semigroup_map(p, 1.9)).matrix() -
                      decoherence_semigroup_map(p, 2.6).matrix()) < 1e-11);
    }
  }
  REQUIRE_THROWS_AS(decoherence_semigroup_map({0.0, 0.0}, 1.0), SingularChannelError);
  REQUIRE_THROWS_AS(decoherence_semigroup_map({0.5, 0.0}, -1.0), DomainError);
}

TEST_CASE("generator extraction", "[semigroup]") {
  REQUIRE(max_abs(generator_from_log(channels::identity()).matrix()) < 1e-15);
  SECTION("decoherence log block") {
    const double lambda = 0.6, phi = 0.9;
    const Eigen::Matrix4d g = generator_from_log(decoherence_ptm(lambda, phi)).matrix();
    REQUIRE_THAT(g(1, 1), WithinAbs(std::log(lambda), 1e-12));
    REQUIRE_THAT(g(2, 2), WithinAbs(std::log(lambda), 1e-12));
    REQUIRE_THAT(g(1, 2), WithinAbs(phi, 1e-12));
    REQUIRE_THAT(g(2, 1), WithinAbs(-phi, 1e-12));
    REQUIRE(std::abs(g(3, 3)) < 1e-14);
  }
  SECTION("homogenization generator entries") {
    const auto p = HomogenizationSemigroupParams::make(0.3, 0.8);
    const Eigen::Matrix4d g = generator_from_log(homogenization_ptm(0.3, 0.8)).matrix();
    REQUIRE_THAT(g(1, 1), WithinAbs(-p.gamma2, 1e-12));
    REQUIRE_THAT(g(1, 2), WithinAbs(p.omega, 1e-12));
    REQUIRE_THAT(g(2, 1), WithinAbs(-p.omega, 1e-12));
    REQUIRE_THAT(g(3, 0), WithinAbs(0.8 * p.gamma1, 1e-12));
    REQUIRE_THAT(g(3, 3), WithinAbs(-p.gamma1, 1e-12));
  }
  SECTION("exp(log E) = E for random invertible channels") {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const auto e = channel_from_collision(oracle::random_unitary(rng, 4),
                                            DensityOperator::from_matrix(oracle::random_state(rng)));
      if (determinant(e) <= 1e-6) continue;
      try {
        const Generator g = generator_from_log(e);
        REQUIRE(max_abs(oracle::expm(g.matrix()) - e.matrix()) < 1e-10);
        ++checked;
      } catch (const BranchCutError&) {
      }
    }
    REQUIRE(checked > 10);
  }
  REQUIRE_THROWS_AS(generator_from_log(channels::universal_not()), SingularChannelError);
  REQUIRE_THROWS_AS(generator_from_log(decoherence_ptm(0.5, kPi)), BranchCutError);
  REQUIRE_THROWS_AS(Generator(Eigen::Matrix4d::Identity()), ShapeError);
}

TEST_CASE("Lindblad decomposition", "[semigroup]") {
  const auto zero = lindblad_decompose(Generator::zero());
  REQUIRE(zero.h.norm() < 1e-15);
  REQUIRE(zero.c.norm() < 1e-15);

  SECTION("linear round trips") {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 50; ++trial) {
      const auto d = random_decomposition(rng, trial % 2 == 0);
      const Generator g = lindblad_compose(d);
      const auto back = lindblad_decompose(g);
      REQUIRE((back.h - d.h).norm() < 1e-12);
      REQUIRE((back.c - d.c).norm() < 1e-12);
      REQUIRE(max_abs(lindblad_compose(back).matrix() - g.matrix()) < 1e-12);
    }
  }
  SECTION("decoherence: dephasing along z only") {
    const double lambda = 0.7, phi = 0.5;
    const auto d = lindblad_decompose(decoherence_generator({lambda, phi}));
    REQUIRE((d.h - Eigen::Vector3d(0, 0, -phi / 2)).norm() < 1e-12);
    REQUIRE_THAT(d.c(2, 2).real(), WithinAbs(-std::log(lambda), 1e-12));
    Eigen::Matrix3cd rest = d.c;
    rest(2, 2) = 0.0;
    REQUIRE(rest.norm() < 1e-12);
    REQUIRE(is_lindblad(d).valid);
  }
  SECTION("homogenization generators are valid for all eta and |w| <= 1") {
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
      const double eta = random_uniform(-kPi, kPi, rng);
      if (std::abs(std::cos(eta)) < 1e-3) continue;
      const auto p = HomogenizationSemigroupParams::make(eta, random_uniform(-1, 1, rng));
      const auto d = lindblad_decompose(homogenization_generator(p));
      REQUIRE_THAT(d.h(2), WithinAbs(-p.omega / 2, 1e-12));
      const auto v = is_lindblad(d);
      REQUIRE(v.valid);
      REQUIRE(v.min_eig_c >= -1e-10);
    }
  }
  SECTION("validity agrees with complete positivity of exp(G t)") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = random_decomposition(rng, trial % 2 == 0);
      const Generator g = lindblad_compose(d);
      const auto verdict = is_lindblad(g);
      double worst = 1.0;
      for (double t : {0.01, 0.1, 1.0, 10.0}) {
        worst = std::min(worst, oracle::min_eig(oracle::choi(oracle::expm(g.matrix() * t))));
      }
      if (verdict.valid) {
        REQUIRE(worst >= -1e-10);
      } else {
        REQUIRE(worst < -1e-8);
      }
    }
  }
  SECTION("amplifying instead of damping breaks validity") {
    const Generator bad(-decoherence_generator({0.6, 0.2}).matrix());
    const auto verdict = is_lindblad(bad);
    REQUIRE_FALSE(verdict.valid);
    REQUIRE(verdict.min_eig_c < 0.0);
    REQUIRE(oracle::min_eig(oracle::choi(oracle::expm(bad.matrix() * 0.01))) < -1e-8);
  }
}

TEST_CASE("master equation right-hand side", "[semigroup]") {
  SECTION("traceless and equal to the generator action") {
    std::mt19937_64 rng(60);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = random_decomposition(rng, true);
      const Eigen::Matrix4d g = lindblad_compose(d).matrix();
      const ComplexMatrix rho = oracle::random_state(rng);
      const ComplexMatrix rhs = master_rhs(d, rho);
      REQUIRE(std::abs(rhs.trace()) < 1e-13);
      REQUIRE(hermiticity_residual(rhs) < 1e-13);
      REQUIRE((rhs - oracle::apply_ptm(g, rho)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("fixed points") {
    const auto p = HomogenizationSemigroupParams::make(0.6, -0.4);
    const auto d = lindblad_decompose(homogenization_generator(p));
    REQUIRE(master_rhs(d, density_from_bloch(BlochVector(0, 0, -0.4))).cwiseAbs().maxCoeff() < 1e-14);
    const auto dd = lindblad_decompose(decoherence_generator({0.3, 1.1}));
    REQUIRE(master_rhs(dd, density_from_bloch(BlochVector(0, 0, 0.7))).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("spontaneous decay") {
    // w = 1 gives Gamma_1 = 2 Gamma_2 and amplitude damping towards |0>.
    const auto p = HomogenizationSemigroupParams::make(0.5, 1.0);
    REQUIRE_THAT(p.gamma1, WithinAbs(2 * p.gamma2, 1e-15));
    const auto d = lindblad_decompose(homogenization_generator(p));
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);  // |0><1|
    lower(0, 1) = 1.0;
    const ComplexMatrix raise = lower.adjoint();
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix rho = oracle::random_state(rng);
      const ComplexMatrix want = Complex(0, p.omega / 2) * commutator(pauli::z(), rho) +
                                 p.gamma1 * (lower * rho * raise - 0.5 * (raise * lower * rho + rho * raise * lower));
      REQUIRE((master_rhs(d, rho) - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("decoherence double-commutator form") {
    const double lambda = 0.45, phi = 0.8;
    const auto d = lindblad_decompose(decoherence_generator({lambda, phi}));
    const ComplexMatrix h = -(phi / 2) * pauli::z();
    const double gamma = -2 * std::log(lambda) / (phi * phi);
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix rho = oracle::random_state(rng);
      const ComplexMatrix want = Complex(0, -1) * commutator(h, rho) - (gamma / 2) * commutator(h, commutator(h, rho));
      REQUIRE((master_rhs(d, rho) - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  REQUIRE_THROWS_AS(master_rhs(LindbladDecomposition{}, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("RK4 integration", "[semigroup]") {
  const auto p = HomogenizationSemigroupParams::make(0.4, 0.6);
  const auto d = lindblad_decompose(homogenization_generator(p));
  const auto rho0 = density_from_bloch(BlochVector(0.3, -0.5, 0.2));
  REQUIRE(hs_distance(integrate_master(d, rho0, 0.0, 1e-3), rho0) == 0.0);
  const auto got = integrate_master(d, rho0, 2.0, 1e-3);
  REQUIRE(hs_distance(got, apply(homogenization_semigroup_map(p, 2.0), rho0)) < 1e-10);
  REQUIRE(std::abs(got.matrix().trace() - Complex(1, 0)) < 1e-12);

  SECTION("decoherence coherence decay and rotation") {
    const DecoherenceParams q{0.5, 0.7};
    const auto dd = lindblad_decompose(decoherence_generator(q));
    const auto start = density_from_bloch(BlochVector(0.8, 0.0, 0.1));
    const double t = 3.0;
    const auto end = integrate_master(dd, start, t, 1e-3);
    const Complex r0 = start.matrix()(0, 1), rt = end.matrix()(0, 1);
    REQUIRE_THAT(std::abs(rt), WithinAbs(std::abs(r0) * std::pow(q.lambda, t), 1e-10));
    // rho_01 = (x - i y)/2 picks up e^{i phi t}.
    REQUIRE_THAT(std::arg(rt / r0), WithinAbs(std::remainder(q.phi * t, 2 * kPi), 1e-9));
  }
  REQUIRE_THROWS_AS(integrate_master(d, rho0, 1.0, 0.0), DomainError);
  REQUIRE_THROWS_AS(integrate_master(d, rho0, -1.0, 1e-3), DomainError);
}
