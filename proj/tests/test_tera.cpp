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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sysid/metrics.hpp"
#include "sysid/tera.hpp"

namespace sysid {
namespace {

using testing::brute_hausdorff;
using testing::random_blocks;

LtiSystem small_system(std::uint64_t seed) {
  RandomSystemOptions o;
  o.n = 6, o.m = 4, o.l = 5, o.seed = seed;
  return random_stable_system(o);
}

TEST(SideMatrices, Shapes) {
  RngStream rng(1);
  const MarkovSequence one(2, 3, random_blocks(rng, 2, 3, 2));
  const SideMatrices s1 = build_side_matrices(one, 1);
  EXPECT_EQ(s1.wide, one[1]);
  EXPECT_EQ(s1.tall, one[1]);
  const MarkovSequence seq(2, 3, random_blocks(rng, 2, 3, 4));
  const SideMatrices s2 = build_side_matrices(seq, 2);
  EXPECT_EQ(s2.wide.rows(), 2);
  EXPECT_EQ(s2.wide.cols(), 9);
  EXPECT_EQ(s2.tall.rows(), 6);
  EXPECT_EQ(s2.tall.cols(), 3);
}

TEST(SideMatrices, IndexLayout) {
  RngStream rng(2);
  const Index ell = 3, m = 2, s = 4;
  const MarkovSequence seq(ell, m, random_blocks(rng, ell, m, 2 * s));
  const SideMatrices side = build_side_matrices(seq, s);
  for (Index k = 1; k <= 2 * s - 1; ++k)
    for (Index i = 0; i < ell; ++i)
      for (Index j = 0; j < m; ++j) {
        EXPECT_EQ(side.wide(i, (k - 1) * m + j), seq[k](i, j));
        EXPECT_EQ(side.tall((k - 1) * ell + i, j), seq[k](i, j));
      }
}

TEST(ChooseRanks, CountsAboveThreshold) {
  EXPECT_EQ(choose_ranks(Vector{{1.0, 0.5, 0.05}}, 0.1), 2);
  EXPECT_EQ(choose_ranks(Vector{{1.0, 1.0, 0.5}}, 1.0), 2);
  EXPECT_EQ(choose_ranks(Vector{{1.0, 0.9}}, 1.0), 1);
  EXPECT_EQ(choose_ranks(Vector{{2.0, 0.2, 0.1}}, 0.1), 2);  // tie at 0.2 kept
  std::vector<std::string> warnings;
  EXPECT_EQ(choose_ranks(Vector::Zero(3), 0.1, &warnings), 1);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(choose_ranks(Vector(), 0.1), Error);
  EXPECT_THROW(choose_ranks(Vector::Ones(2), 0.0), Error);
  EXPECT_THROW(choose_ranks(Vector::Ones(2), 1.5), Error);
}

TEST(Projectors, FullRankIsExact) {
  const MarkovSequence seq = simulate_impulse(small_system(3), 30);
  const TangentialProjectors p = build_projectors(seq, {std::nullopt, 5, 4});
  EXPECT_LE((p.W1.transpose() * p.W1 - Matrix::Identity(5, 5)).norm(), 1e-10);
  EXPECT_LE((p.W2.transpose() * p.W2 - Matrix::Identity(4, 4)).norm(), 1e-10);
  for (Index k = 0; k < seq.size(); ++k)
    EXPECT_LE((p.W1 * p.W1.transpose() * seq[k] * p.W2 * p.W2.transpose() - seq[k]).norm(), 1e-10);
}

TEST(Projectors, SharedDirectionsNeedOneEach) {
  RngStream rng(5);
  const Vector u = orthonormalize(gaussian_matrix(rng, 4, 1)).col(0);
  const Vector v = orthonormalize(gaussian_matrix(rng, 3, 1)).col(0);
  std::vector<Matrix> blocks;
  for (Index k = 0; k < 12; ++k) blocks.push_back(std::pow(0.7, k) * u * v.transpose());
  const MarkovSequence seq(4, 3, blocks);
  const TangentialProjectors p = build_projectors(seq, {0.01, std::nullopt, std::nullopt});
  EXPECT_EQ(p.lp(), 1);
  EXPECT_EQ(p.mp(), 1);
  const MarkovSequence proj = project_markov(seq, p);
  for (Index k = 0; k < 12; ++k)
    EXPECT_LE((p.W1 * proj[k] * p.W2.transpose() - seq[k]).norm(), 1e-12);
}

TEST(Projectors, EckartYoungResidual) {
  RngStream rng(6);
  const MarkovSequence seq(6, 5, random_blocks(rng, 6, 5, 10));
  const TangentialProjectors p = build_projectors(seq, {std::nullopt, 3, 2});
  const SideMatrices side = build_side_matrices(seq);
  const Matrix residual = p.W1 * (p.W1.transpose() * side.wide) - side.wide;
  const double tail = p.sigma_w.tail(p.sigma_w.size() - 3).squaredNorm();
  EXPECT_NEAR(residual.squaredNorm(), tail, 1e-10 * side.wide.squaredNorm());
  // Random rank-3 projectors never do better.
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix q = orthonormalize(gaussian_matrix(rng, 6, 3));
    EXPECT_GE((q * (q.transpose() * side.wide) - side.wide).squaredNorm(), residual.squaredNorm() - 1e-10);
    const Matrix q2 = orthonormalize(gaussian_matrix(rng, 5, 2));
    const Matrix res2 = side.tall * p.W2 * p.W2.transpose() - side.tall;
    EXPECT_GE((side.tall * q2 * q2.transpose() - side.tall).squaredNorm(), res2.squaredNorm() - 1e-10);
  }
}

TEST(Projectors, Validation) {
  RngStream rng(7);
  const MarkovSequence seq(3, 2, random_blocks(rng, 3, 2, 6));
  EXPECT_THROW(build_projectors(seq, {std::nullopt, 4, 1}), Error);
  EXPECT_THROW(build_projectors(seq, {std::nullopt, 1, 3}), Error);
  EXPECT_THROW(build_projectors(seq, {std::nullopt, 1, std::nullopt}), Error);
}

TEST(ProjectMarkov, IdentityAndContraction) {
  RngStream rng(8);
  const MarkovSequence seq(4, 3, random_blocks(rng, 4, 3, 10));
  TangentialProjectors id;
  id.W1 = Matrix::Identity(4, 4);
  id.W2 = Matrix::Identity(3, 3);
  const MarkovSequence same = project_markov(seq, id);
  for (Index k = 0; k < 10; ++k) EXPECT_EQ(same[k], seq[k]);

  const TangentialProjectors p = build_projectors(seq, {std::nullopt, 1, 1});
  const MarkovSequence scalar = project_markov(seq, p);
  EXPECT_EQ(scalar.ell(), 1);
  EXPECT_EQ(scalar.m(), 1);
  for (Index k = 0; k < 10; ++k) EXPECT_LE(scalar[k].norm(), seq[k].norm() + 1e-14);
}

TEST(ProjectedHankel, KeepsBlockStructure) {
  RngStream rng(9);
  const Index s = 5;
  const MarkovSequence seq(4, 3, random_blocks(rng, 4, 3, 2 * s));
  const TangentialProjectors p = build_projectors(seq, {std::nullopt, 2, 2});
  const Matrix projected = dense_assembly(project_markov(seq, p), s);
  Matrix left = Matrix::Zero(s * 2, s * 4), right = Matrix::Zero(s * 3, s * 2);
  for (Index a = 0; a < s; ++a) {
    left.block(a * 2, a * 4, 2, 4) = p.W1.transpose();
    right.block(a * 3, a * 2, 3, 2) = p.W2;
  }
  const Matrix expected = left * dense_assembly(seq, s) * right;
  EXPECT_LE((projected - expected).norm(), 1e-11 * expected.norm());
}

TEST(Randtera, DegenerateProjectionMatchesEra) {
  const LtiSystem sys = small_system(12);
  const MarkovSequence seq = simulate_impulse(sys, 60);
  TeraOptions opt;
  opt.projectors = {std::nullopt, 5, 4};
  opt.backend = TeraBackend::full;
  opt.rank = 6;
  const TeraIdentification tera = randtera(seq, opt);
  IdentifyOptions era;
  era.method = SvdMethod::full_svd;
  era.rank = 6;
  const Identification plain = identify(seq, era);
  EXPECT_LE(markov_relative_error(plain.model.ss, tera.model.ss, 58).maxCoeff(), 1e-9);
  EXPECT_EQ(tera.model.provenance.method, "tera");
  ASSERT_TRUE(tera.model.tangential.has_value());
  EXPECT_EQ(tera.model.tangential->lp, 5);
  EXPECT_EQ(tera.model.ss.D, seq[0]);
}

TEST(Randtera, FactorsLieInProjectorRanges) {
  OscillatoryOptions o;
  o.n_pairs = 4, o.m = 6, o.l = 7, o.seed = 2, o.channel_decay = 0.5;
  const MarkovSequence seq = simulate_impulse(oscillatory_system(o), 200);
  TeraOptions opt;
  opt.projectors = {0.05, std::nullopt, std::nullopt};
  opt.rank = 6;
  opt.oversampling = 10;
  const TeraIdentification res = randtera(seq, opt);
  const Matrix& w1 = res.projectors.W1;
  const Matrix& w2 = res.projectors.W2;
  EXPECT_LT(w1.cols(), 7);
  EXPECT_LE((w1 * w1.transpose() * res.model.ss.C - res.model.ss.C).norm(), 1e-10 * res.model.ss.C.norm());
  EXPECT_LE((res.model.ss.B * w2 * w2.transpose() - res.model.ss.B).norm(), 1e-10 * res.model.ss.B.norm());
  EXPECT_EQ(res.model.provenance.method, "randtera");
}

TEST(Randtera, RandomizedBackendTracksFullBackend) {
  OscillatoryOptions o;
  o.n_pairs = 5, o.m = 8, o.l = 8, o.seed = 4, o.channel_decay = 0.5;
  const LtiSystem sys = oscillatory_system(o);
  const MarkovSequence seq = simulate_impulse(sys, 300);
  TeraOptions opt;
  opt.projectors = {0.01, std::nullopt, std::nullopt};
  opt.rank = 8;
  opt.backend = TeraBackend::full;
  const TeraIdentification full = randtera(seq, opt);
  opt.backend = TeraBackend::randomized;
  const TeraIdentification rnd = randtera(seq, opt);
  const Vector a = markov_relative_error(sys.ss, full.model.ss, 298);
  const Vector b = markov_relative_error(sys.ss, rnd.model.ss, 298);
  for (Index k = 0; k < a.size(); ++k) EXPECT_LE(std::abs(a(k) - b(k)), 0.1 * a(k) + 1e-12) << "k=" << k + 1;
}

}  // namespace
}  // namespace sysid
