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
#include "sysid/hankel.hpp"
#include "sysid/rsvd.hpp"

namespace sysid {
namespace {

// M x N with singular values decay^i and random singular vectors.
Matrix geometric_matrix(RngStream& rng, Index rows, Index cols, double decay) {
  const Index k = std::min(rows, cols);
  const Matrix u = orthonormalize(gaussian_matrix(rng, rows, k));
  const Matrix v = orthonormalize(gaussian_matrix(rng, cols, k));
  Vector s(k);
  for (Index i = 0; i < k; ++i) s(i) = std::pow(decay, static_cast<double>(i));
  return u * s.asDiagonal() * v.transpose();
}

TEST(Randsvd, ExactRankRecovered) {
  RngStream rng(1);
  const Matrix x = gaussian_matrix(rng, 60, 5) * gaussian_matrix(rng, 5, 45);
  const DenseOperator op(x);
  const TruncatedSvd t = randsvd(op, {5, 2, 0, 9});
  const Vector ref = full_svd(x).sigma.head(5);
  EXPECT_LE((t.sigma - ref).cwiseAbs().maxCoeff(), 1e-9 * ref(0));
  EXPECT_LE((x - t.U * t.sigma.asDiagonal() * t.V.transpose()).norm(), 1e-9 * x.norm());
  EXPECT_EQ(t.rank(), 5);
  EXPECT_EQ(t.sketch_sigma.size(), 7);
}

TEST(Randsvd, ZeroOperator) {
  const Matrix z = Matrix::Zero(20, 15);
  const TruncatedSvd t = randsvd(DenseOperator(z), {3, 2, 1, 0});
  EXPECT_EQ(t.sigma.norm(), 0.0);
}

TEST(Randsvd, FullSamplingIsExact) {
  Matrix d = Matrix::Zero(10, 10);
  for (Index i = 0; i < 10; ++i) d(i, i) = std::pow(0.5, static_cast<double>(i));
  const TruncatedSvd t = randsvd(DenseOperator(d), {3, 7, 1, 4});
  EXPECT_NEAR(t.sigma(0), 1.0, 1e-10);
  EXPECT_NEAR(t.sigma(1), 0.5, 1e-10);
  EXPECT_NEAR(t.sigma(2), 0.25, 1e-10);
}

TEST(Randsvd, FactorsOrthonormalAndSorted) {
  RngStream rng(2);
  const Matrix x = geometric_matrix(rng, 80, 50, 0.7);
  const TruncatedSvd t = randsvd(DenseOperator(x), {8, 10, 1, 3});
  EXPECT_LE((t.U.transpose() * t.U - Matrix::Identity(8, 8)).norm(), 1e-10 * std::sqrt(8.0));
  EXPECT_LE((t.V.transpose() * t.V - Matrix::Identity(8, 8)).norm(), 1e-10 * std::sqrt(8.0));
  for (Index i = 1; i < 8; ++i) EXPECT_GE(t.sigma(i - 1), t.sigma(i));
}

TEST(Randsvd, SigmaNeverExceedsTruth) {
  RngStream rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = geometric_matrix(rng, 70, 40, 0.8);
    const Vector truth = full_svd(x).sigma;
    const TruncatedSvd t = randsvd(DenseOperator(x), {6, 4, 0, static_cast<std::uint64_t>(trial)});
    for (Index i = 0; i < 6; ++i) EXPECT_LE(t.sigma(i), truth(i) + 1e-9 * truth(0));
  }
}

TEST(Randsvd, ErrorWithinFactorTenOfTail) {
  RngStream rng(4);
  const Matrix x = geometric_matrix(rng, 120, 100, 0.5);
  const Index r = 10;
  const double tail = full_svd(x).sigma(r);
  int pass = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TruncatedSvd t = randsvd(DenseOperator(x), {r, 5, 1, seed});
    const double err = norm2(x - t.U * t.sigma.asDiagonal() * t.V.transpose());
    if (err <= 10.0 * tail) ++pass;
  }
  EXPECT_GE(pass, 18);
}

TEST(Randsvd, MedianErrorNonincreasingInPowerIterations) {
  RngStream rng(5);
  const Matrix x = geometric_matrix(rng, 100, 90, 0.9);
  std::vector<double> medians;
  for (Index q = 0; q <= 2; ++q) {
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const TruncatedSvd t = randsvd(DenseOperator(x), {10, 2, q, seed});
      errs.push_back(norm2(x - t.U * t.sigma.asDiagonal() * t.V.transpose()));
    }
    std::nth_element(errs.begin(), errs.begin() + 7, errs.end());
    medians.push_back(errs[7]);
  }
  EXPECT_LE(medians[1], medians[0]);
  EXPECT_LE(medians[2], medians[1]);
}

TEST(Randsvd, DeterministicForFixedSeed) {
  RngStream rng(6);
  const Matrix x = geometric_matrix(rng, 50, 40, 0.6);
  const TruncatedSvd a = randsvd(DenseOperator(x), {5, 5, 2, 77});
  const TruncatedSvd b = randsvd(DenseOperator(x), {5, 5, 2, 77});
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(a.V, b.V);
}

TEST(Randsvd, ConfigValidation) {
  const Matrix x = Matrix::Ones(10, 8);
  EXPECT_THROW(randsvd(DenseOperator(x), {0, 2, 1, 0}), Error);
  EXPECT_THROW(randsvd(DenseOperator(x), {5, 4, 1, 0}), Error);
  EXPECT_THROW(randsvd(DenseOperator(x), {2, -1, 1, 0}), Error);
  EXPECT_THROW(randsvd(DenseOperator(x), {2, 1, -1, 0}), Error);
}

TEST(RangeFinder, CapturesExactRange) {
  RngStream rng(7);
  const Matrix x = gaussian_matrix(rng, 40, 4) * gaussian_matrix(rng, 4, 30);
  const Matrix q = range_finder(DenseOperator(x), 4, 0, 1);
  EXPECT_LE((q.transpose() * q - Matrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_LE((x - q * (q.transpose() * x)).norm(), 1e-9 * x.norm());
  const Matrix full = gaussian_matrix(rng, 12, 9);
  const Matrix qf = range_finder(DenseOperator(full), 9, 1, 2);
  EXPECT_LE((full - qf * (qf.transpose() * full)).norm(), 1e-10 * full.norm());
}

TEST(Randsvd, HankelOperatorMatchesDenseOperator) {
  RngStream rng(8);
  RandomSystemOptions o;
  o.n = 6, o.m = 2, o.l = 3, o.seed = 4;
  const MarkovSequence seq = simulate_impulse(random_stable_system(o), 60);
  const Matrix dense = dense_assembly(seq, 30);
  const RsvdConfig cfg{6, 10, 1, 123};
  const TruncatedSvd a = randsvd(DenseOperator(dense), cfg);
  const TruncatedSvd b = randsvd(BlockHankelOperator(seq, 30), cfg);
  EXPECT_LE((a.sigma - b.sigma).norm(), 1e-10 * a.sigma(0));
  // Same subspaces: projectors agree.
  EXPECT_LE((a.U * a.U.transpose() - b.U * b.U.transpose()).norm(), 1e-10);
}

}  // namespace
}  // namespace sysid
