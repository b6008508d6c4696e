// Copyright 2026 The sysid Authors.
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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sysid/identify.hpp"
#include "sysid/metrics.hpp"
#include "sysid/systems.hpp"

namespace sysid {
namespace {

using testing::modal_markov;

TEST(RandomSystem, RadiusCapAndShapes) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomSystemOptions o;
    o.n = 1 + static_cast<Index>(seed % 12);
    o.m = 1 + static_cast<Index>(seed % 3);
    o.l = 1 + static_cast<Index>(seed % 4);
    o.rho_max = 0.5 + 0.015 * static_cast<double>(seed);
    o.seed = seed;
    const LtiSystem sys = random_stable_system(o);
    EXPECT_NO_THROW(sys.ss.validate());
    EXPECT_EQ(sys.ss.order(), o.n);
    EXPECT_EQ(sys.ss.inputs(), o.m);
    EXPECT_EQ(sys.ss.outputs(), o.l);
    EXPECT_LE(spectral_radius(sys.ss.A), o.rho_max * (1 + 1e-12));
    EXPECT_EQ(sys.ss.D, Matrix::Zero(o.l, o.m));
    EXPECT_LE(eigenvector_condition(sys.ss.A), 1e4);
    EXPECT_EQ(sys.generator.kind, "random");
  }
}

TEST(RandomSystem, SeedDeterminism) {
  RandomSystemOptions o;
  o.seed = 99;
  const LtiSystem a = random_stable_system(o), b = random_stable_system(o);
  EXPECT_EQ(a.ss.A, b.ss.A);
  EXPECT_EQ(a.ss.B, b.ss.B);
  EXPECT_EQ(a.ss.C, b.ss.C);
  o.seed = 100;
  EXPECT_NE(random_stable_system(o).ss.A, a.ss.A);
}

TEST(RandomSystem, Validation) {
  RandomSystemOptions o;
  o.n = 0;
  EXPECT_THROW(random_stable_system(o), Error);
  o.n = 3;
  o.rho_max = 1.0;
  EXPECT_THROW(random_stable_system(o), Error);
}

TEST(RandomSystem, PassesAuditAtDecayDepth) {
  const double tol = 1e-3, rho = 0.9;
  const auto s = static_cast<Index>(std::ceil(3.0 * std::log(tol) / std::log(rho)));
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    RandomSystemOptions o;
    o.n = 8, o.m = 2, o.l = 3, o.rho_max = rho, o.seed = seed;
    const LtiSystem sys = random_stable_system(o);
    IdentifyOptions opt;
    opt.method = SvdMethod::full_svd;
    opt.rank = o.n;
    opt.depth = s;
    const Identification id = identify(simulate_impulse(sys, 2 * s), opt);
    EXPECT_TRUE(id.diagnostics.assumptions.a1) << seed;
    EXPECT_TRUE(id.diagnostics.assumptions.a2) << seed;
    EXPECT_TRUE(id.diagnostics.assumptions.a3) << seed << " tail " << id.diagnostics.assumptions.tail_ratio;
    EXPECT_LE(hausdorff(eig(sys.ss.A).values, eig(id.model.ss.A).values), 1e-7);
  }
}

TEST(Heat, SymmetricPositiveDefiniteWithKnownRadius) {
  HeatOptions o;
  o.grid_n = 40;
  o.dt = 1e-4;
  const LtiSystem sys = heat1d_system(o);
  const Matrix& a = sys.ss.A;
  EXPECT_LE((a - a.transpose()).norm(), 1e-13);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  const Vector lam = heat1d_continuous_eigenvalues(o.grid_n, o.diffusivity);
  EXPECT_NEAR(spectral_radius(a), std::exp(lam(0) * o.dt), 1e-12);
  EXPECT_LT(spectral_radius(a), 1.0);
  EXPECT_EQ(sys.ss.B.cols(), 7);
  EXPECT_EQ(sys.ss.C.rows(), 6);
  EXPECT_EQ(sys.ss.B.colwise().sum(), Matrix::Ones(1, 7));
}

TEST(Heat, ZeroStepIsIdentity) {
  HeatOptions o;
  o.grid_n = 25;
  o.dt = 0.0;
  EXPECT_LE((heat1d_system(o).ss.A - Matrix::Identity(25, 25)).norm(), 1e-13);
}

TEST(Heat, FirstEigenpair) {
  HeatOptions o;
  o.grid_n = 60;
  o.dt = 2e-5;
  const Matrix a = heat1d_system(o).ss.A;
  const Index n = o.grid_n;
  Vector v1(n);
  for (Index i = 0; i < n; ++i)
    v1(i) = std::sqrt(2.0 / (n + 1)) * std::sin(static_cast<double>(i + 1) * std::numbers::pi / (n + 1));
  const double mu = std::exp(heat1d_continuous_eigenvalues(n, o.diffusivity)(0) * o.dt);
  EXPECT_LE((a * v1 - mu * v1).norm(), 1e-10);
}

TEST(Heat, GeneratorEigenvaluesMatchClosedForm) {
  const Matrix ac = heat1d_generator(15, 0.7);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(ac);
  Vector expected = heat1d_continuous_eigenvalues(15, 0.7);
  std::sort(expected.begin(), expected.end());
  EXPECT_LE((es.eigenvalues() - expected).norm(), 1e-9 * expected.norm());
}

TEST(Heat, MatchesTaylorSeries) {
  for (Index n : {8, 20, 50}) {
    HeatOptions o;
    o.grid_n = n;
    const Matrix ac = heat1d_generator(n, 1.0);
    o.dt = 0.9 / norm2(ac);
    const Matrix step = ac * o.dt;
    Matrix term = Matrix::Identity(n, n), series = term;
    for (int k = 1; k <= 20; ++k) {
      term = term * step / static_cast<double>(k);
      series += term;
    }
    EXPECT_LE((heat1d_system(o).ss.A - series).norm(), 1e-9) << n;
  }
}

TEST(Heat, Validation) {
  HeatOptions o;
  o.grid_n = 1;
  EXPECT_THROW(heat1d_system(o), Error);
  o.grid_n = 10;
  o.dt = -1.0;
  EXPECT_THROW(heat1d_system(o), Error);
}

TEST(Oscillatory, EigenvaluesInAnnulus) {
  OscillatoryOptions o;
  o.n_pairs = 10, o.m = 3, o.l = 4, o.seed = 5;
  const LtiSystem sys = oscillatory_system(o);
  const ComplexVector ev = eig(sys.ss.A).values;
  ASSERT_EQ(ev.size(), 20);
  for (Index i = 0; i < ev.size(); ++i) {
    EXPECT_GE(std::abs(ev(i)), o.radius_min - 1e-12);
    EXPECT_LE(std::abs(ev(i)), o.radius_max + 1e-12);
    EXPECT_GT(std::abs(ev(i).imag()), 0.0);
  }
  EXPECT_EQ(sys.ss.C.rows(), 4);
}

TEST(Oscillatory, IdentityOutput) {
  OscillatoryOptions o;
  o.n_pairs = 4, o.m = 2, o.identity_output = true;
  const LtiSystem sys = oscillatory_system(o);
  EXPECT_EQ(sys.ss.C, Matrix::Identity(8, 8));
  EXPECT_EQ(sys.ss.outputs(), 8);
}

TEST(Oscillatory, RoundTripRecoversAnnulus) {
  OscillatoryOptions o;
  o.n_pairs = 3, o.m = 2, o.l = 3, o.radius_min = 0.9, o.radius_max = 0.95, o.seed = 8;
  const LtiSystem sys = oscillatory_system(o);
  IdentifyOptions opt;
  opt.method = SvdMethod::full_svd;
  opt.rank = 6;
  const Identification id = identify(simulate_impulse(sys, 600), opt);
  EXPECT_LE(hausdorff(eig(sys.ss.A).values, eig(id.model.ss.A).values), 1e-6);
}

TEST(Oscillatory, Validation) {
  OscillatoryOptions o;
  o.radius_max = 1.0;
  EXPECT_THROW(oscillatory_system(o), Error);
  o = {};
  o.channel_decay = 0.0;
  EXPECT_THROW(oscillatory_system(o), Error);
}

TEST(SimulateImpulse, FirstBlocks) {
  RandomSystemOptions o;
  o.seed = 3;
  LtiSystem sys = random_stable_system(o);
  sys.ss.D = Matrix::Constant(3, 2, 0.5);
  const MarkovSequence seq = simulate_impulse(sys, 4);
  EXPECT_EQ(seq[0], sys.ss.D);
  EXPECT_LE((seq[1] - sys.ss.C * sys.ss.B).norm(), 1e-15 * seq[1].norm());
  EXPECT_LE((seq[3] - sys.ss.C * sys.ss.A * sys.ss.A * sys.ss.B).norm(), 1e-13 * seq[3].norm());
  EXPECT_THROW(simulate_impulse(sys, 1), Error);
}

TEST(SimulateImpulse, ScalarGeometric) {
  StateSpace ss{Matrix::Constant(1, 1, 0.5), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  const MarkovSequence seq = simulate_impulse(ss, 5);
  for (Index k = 1; k < 5; ++k) EXPECT_EQ(seq[k](0, 0), std::pow(0.5, k - 1));
}

TEST(SimulateImpulse, MatchesModalOracle) {
  RandomSystemOptions o;
  o.n = 7, o.m = 3, o.l = 2, o.seed = 4;
  const LtiSystem sys = random_stable_system(o);
  const MarkovSequence seq = simulate_impulse(sys, 50);
  const std::vector<Matrix> oracle = modal_markov(sys.ss, 50);
  for (Index k = 0; k < 50; ++k) EXPECT_LE((seq[k] - oracle[k]).norm(), 1e-10) << k;
}

TEST(SimulateImpulse, DecayBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomSystemOptions o;
    o.n = 9, o.seed = seed, o.rho_max = 0.85;
    const LtiSystem sys = random_stable_system(o);
    const double kappa = eigenvector_condition(sys.ss.A);
    const double rho = spectral_radius(sys.ss.A);
    const double scale = norm2(sys.ss.C) * norm2(sys.ss.B);
    const MarkovSequence seq = simulate_impulse(sys, 80);
    for (Index k = 1; k < 80; ++k)
      EXPECT_LE(norm2(seq[k]), kappa * std::pow(rho, k - 1) * scale * (1 + 1e-10)) << k;
  }
}

}  // namespace
}  // namespace sysid
