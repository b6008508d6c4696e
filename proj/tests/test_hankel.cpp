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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sysid/hankel.hpp"

namespace sysid {
namespace {

using testing::naive_block_hankel;
using testing::random_blocks;

HankelSymbol symbol_from(const Vector& h) {
  // h = (h_1 .. h_{2s-1})
  const Index s = (h.size() + 1) / 2;
  return {h.head(s), h.segment(s - 1, s)};
}

Matrix naive_scalar_hankel(const Vector& h) {
  const Index s = (h.size() + 1) / 2;
  Matrix out(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j) out(i, j) = h(i + j);
  return out;
}

TEST(CirculantSymbol, SmallCases) {
  const Vector x = circulant_symbol({Vector{{1.0, 2.0}}, Vector{{2.0, 3.0}}});
  EXPECT_EQ(x, (Vector{{2.0, 3.0, 0.0, 1.0}}));
  EXPECT_EQ(circulant_symbol({Vector{{7.0}}, Vector{{7.0}}}), (Vector{{7.0, 0.0}}));
  EXPECT_EQ(circulant_symbol({Vector::Zero(3), Vector::Zero(3)}), Vector::Zero(6));
}

TEST(HankelSymbol, CornerMustAgree) {
  EXPECT_THROW((HankelSymbol{Vector{{1.0, 2.0}}, Vector{{5.0, 3.0}}}.validate()), Error);
}

TEST(HankelMatvec, HandExample) {
  const Vector y = hankel_matvec({Vector{{1.0, 2.0}}, Vector{{2.0, 3.0}}}, Vector{{1.0, 1.0}});
  EXPECT_NEAR(y(0), 3.0, 1e-14);
  EXPECT_NEAR(y(1), 5.0, 1e-14);
}

TEST(HankelMatvec, MatchesDenseOnRandomSymbols) {
  RngStream rng(17);
  for (Index s : {1, 2, 3, 5, 16, 33}) {
    const Vector h = gaussian_matrix(rng, 2 * s - 1, 1).col(0);
    const HankelSymbol sym = symbol_from(h);
    const Matrix dense = naive_scalar_hankel(h);
    EXPECT_LE((hankel_dense(sym) - dense).norm(), 0.0);
    const Vector v = gaussian_matrix(rng, s, 1).col(0);
    const Vector ref = dense * v;
    EXPECT_LE((hankel_matvec(sym, v) - ref).norm(), 1e-12 * ref.norm()) << "s=" << s;
    EXPECT_LE((hankel_matvec(sym, Vector::Unit(s, 0)) - dense.col(0)).norm(), 1e-12 * dense.norm());
    EXPECT_EQ(hankel_matvec(sym, Vector::Zero(s)).norm(), 0.0);
  }
}

TEST(HankelMatvec, RejectsLengthMismatch) {
  EXPECT_THROW(hankel_matvec({Vector{{1.0, 2.0}}, Vector{{2.0, 3.0}}}, Vector::Ones(3)), Error);
}

TEST(MarkovSequence, Validation) {
  EXPECT_THROW(MarkovSequence(2, 2, {Matrix::Zero(2, 2), Matrix::Zero(2, 3)}), Error);
  Matrix bad = Matrix::Zero(1, 1);
  bad(0, 0) = INFINITY;
  EXPECT_THROW(MarkovSequence(1, 1, {Matrix::Zero(1, 1), bad}), Error);
  EXPECT_THROW(MarkovSequence(1, 1, {Matrix::Zero(1, 1)}, -1.0), Error);
  const MarkovSequence seq(1, 1, std::vector<Matrix>(8, Matrix::Ones(1, 1)), 0.5);
  EXPECT_EQ(seq.max_depth(), 4);
  EXPECT_EQ(*seq.dt(), 0.5);
  EXPECT_TRUE(seq.has_feedthrough());
  const auto from1 = MarkovSequence::from_h1(1, 1, {Matrix::Ones(1, 1), Matrix::Ones(1, 1)});
  EXPECT_FALSE(from1.has_feedthrough());
  EXPECT_EQ(from1.size(), 3);
  EXPECT_EQ(from1[0](0, 0), 0.0);
}

TEST(DenseAssembly, LayoutAndCap) {
  const MarkovSequence seq(1, 1, {Matrix::Constant(1, 1, 9.0), Matrix::Constant(1, 1, 1.0),
                                  Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 3.0)});
  EXPECT_EQ(dense_assembly(seq, 1), Matrix::Constant(1, 1, 1.0));
  EXPECT_EQ(dense_assembly(seq, 2), (Matrix{{1.0, 2.0}, {2.0, 3.0}}));
  EXPECT_THROW(dense_assembly(seq, 3), Error);
  EXPECT_THROW(dense_assembly(seq, 2, 1), Error);
  try {
    dense_assembly(seq, 2, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_cap);
  }
}

TEST(DenseAssembly, StrideBlocksAreHankel) {
  RngStream rng(2);
  const Index ell = 2, m = 3, s = 5;
  const MarkovSequence seq(ell, m, random_blocks(rng, ell, m, 2 * s));
  const Matrix h = dense_assembly(seq, s);
  EXPECT_EQ(h, naive_block_hankel(seq.blocks(), s));
  for (Index i = 0; i < ell; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index a = 0; a + 1 < s; ++a)
        for (Index b = 0; b + 1 < s; ++b)
          EXPECT_EQ(h(a * ell + i, (b + 1) * m + j), h((a + 1) * ell + i, b * m + j));
}

struct BlockCase {
  Index ell, m, s;
};

class BlockHankelOracle : public ::testing::TestWithParam<BlockCase> {};

TEST_P(BlockHankelOracle, MatvecBothDirections) {
  const auto [ell, m, s] = GetParam();
  RngStream rng(static_cast<std::uint64_t>(100 * ell + 10 * m + s));
  const MarkovSequence seq(ell, m, random_blocks(rng, ell, m, 2 * s));
  const Matrix dense = naive_block_hankel(seq.blocks(), s);
  for (FftLength mode : {FftLength::exact, FftLength::padded}) {
    const BlockHankelOperator op(seq, s, {mode, 1});
    ASSERT_EQ(op.rows(), s * ell);
    ASSERT_EQ(op.cols(), s * m);
    const Matrix x = gaussian_matrix(rng, s * m, 3);
    const Matrix y = gaussian_matrix(rng, s * ell, 3);
    const Matrix hx = dense * x, hty = dense.transpose() * y;
    EXPECT_LE((op.matmat(x) - hx).norm(), 1e-11 * hx.norm());
    EXPECT_LE((op.rmatmat(y) - hty).norm(), 1e-11 * hty.norm());
    // columns of matmat equal individual matvecs
    for (Index c = 0; c < 3; ++c)
      EXPECT_LE((op.matvec(x.col(c)) - op.matmat(x).col(c)).norm(), 1e-12 * hx.norm());
    // adjoint identity
    const double lhs = op.matvec(x.col(0)).dot(y.col(0));
    const double rhs = x.col(0).dot(op.rmatvec(y.col(0)));
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::abs(lhs) + 1e-11 * hx.norm() * y.norm());
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, BlockHankelOracle,
                         ::testing::Values(BlockCase{1, 1, 1}, BlockCase{1, 1, 7}, BlockCase{2, 3, 4},
                                           BlockCase{3, 2, 4}, BlockCase{5, 5, 64}, BlockCase{4, 1, 17},
                                           BlockCase{1, 4, 30}));

TEST(BlockHankelOperator, IdentityReconstructsDense) {
  RngStream rng(6);
  const MarkovSequence seq(2, 3, random_blocks(rng, 2, 3, 12));
  const BlockHankelOperator op(seq, 6);
  const Matrix dense = dense_assembly(seq, 6);
  EXPECT_LE((op.matmat(Matrix::Identity(18, 18)) - dense).norm(), 1e-12 * dense.norm());
  EXPECT_LE((op.rmatmat(Matrix::Identity(12, 12)) - dense.transpose()).norm(), 1e-12 * dense.norm());
}

TEST(BlockHankelOperator, ScalarCaseMatchesHankelMatvec) {
  RngStream rng(7);
  const Index s = 9;
  const MarkovSequence seq(1, 1, random_blocks(rng, 1, 1, 2 * s));
  Vector h(2 * s - 1);
  for (Index k = 1; k < 2 * s; ++k) h(k - 1) = seq[k](0, 0);
  const Vector v = gaussian_matrix(rng, s, 1).col(0);
  const BlockHankelOperator op(seq, s);
  EXPECT_LE((op.matvec(v) - hankel_matvec(symbol_from(h), v)).norm(), 1e-12 * v.norm() * h.norm());
  // SISO Hankel matrices are symmetric.
  EXPECT_LE((op.matvec(v) - op.rmatvec(v)).norm(), 1e-12 * v.norm() * h.norm());
}

TEST(BlockHankelOperator, LinearityAndZero) {
  RngStream rng(8);
  const MarkovSequence seq(3, 2, random_blocks(rng, 3, 2, 20));
  const BlockHankelOperator op(seq, 10);
  const Vector x = gaussian_matrix(rng, 20, 1).col(0), z = gaussian_matrix(rng, 20, 1).col(0);
  const Vector lhs = op.matvec(2.5 * x - 0.75 * z);
  const Vector rhs = 2.5 * op.matvec(x) - 0.75 * op.matvec(z);
  EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
  EXPECT_EQ(op.matvec(Vector::Zero(20)).norm(), 0.0);
  EXPECT_EQ(op.rmatvec(Vector::Zero(30)).norm(), 0.0);
}

TEST(BlockHankelOperator, ThreadPartitionDoesNotChangeResult) {
  RngStream rng(10);
  const MarkovSequence seq(2, 2, random_blocks(rng, 2, 2, 40));
  const BlockHankelOperator one(seq, 20, {FftLength::exact, 1});
  const BlockHankelOperator four(seq, 20, {FftLength::exact, 4});
  const Matrix x = gaussian_matrix(rng, 40, 7);
  const Matrix a = one.matmat(x), b = four.matmat(x);
  EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
  const Matrix y = gaussian_matrix(rng, 40, 5);
  EXPECT_LE((one.rmatmat(y) - four.rmatmat(y)).norm(), 1e-12 * a.norm());
}

TEST(BlockHankelOperator, ShapeErrors) {
  RngStream rng(1);
  const MarkovSequence seq(2, 3, random_blocks(rng, 2, 3, 8));
  EXPECT_THROW(BlockHankelOperator(seq, 5), Error);
  const BlockHankelOperator op(seq, 4);
  EXPECT_THROW(op.matmat(Matrix::Zero(5, 1)), Error);
  EXPECT_THROW(op.rmatmat(Matrix::Zero(5, 1)), Error);
}

TEST(BlockHankelOperator, PaddedLengthIsSmooth) {
  EXPECT_EQ(fast_fft_length(1), 1);
  EXPECT_EQ(fast_fft_length(11), 12);
  EXPECT_EQ(fast_fft_length(127), 128);
  EXPECT_EQ(fast_fft_length(1999), 2000);
  RngStream rng(3);
  const MarkovSequence seq(1, 1, random_blocks(rng, 1, 1, 2 * 61));
  EXPECT_EQ(BlockHankelOperator(seq, 61, {FftLength::exact, 1}).fft_length(), 122);
  EXPECT_GE(BlockHankelOperator(seq, 61, {FftLength::padded, 1}).fft_length(), 121);
}

TEST(BlockHankelOperator, CopiesShareSpectra) {
  RngStream rng(4);
  const MarkovSequence seq(2, 2, random_blocks(rng, 2, 2, 10));
  const BlockHankelOperator op(seq, 5);
  BlockHankelOperator copy = op;
  BlockHankelOperator moved = std::move(copy);
  const Matrix x = gaussian_matrix(rng, 10, 2);
  EXPECT_EQ(op.matmat(x), moved.matmat(x));
}

}  // namespace
}  // namespace sysid
