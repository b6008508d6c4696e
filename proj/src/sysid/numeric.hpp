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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "sysid/error.hpp"

namespace sysid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Reduced SVD, X = U * diag(sigma) * V^T with k = min(rows, cols).
///
/// Column signs are whatever the LAPACK kernel returns; callers must only
/// rely on sign-invariant quantities.
struct SvdFactors {
  Matrix U;
  Vector sigma;
  Matrix V;
};

struct QrFactors {
  Matrix Q;  // rows x cols, orthonormal columns
  Matrix R;  // cols x cols, upper triangular
};

struct EigenDecomposition {
  ComplexVector values;   // descending modulus, conjugate pairs adjacent
  ComplexMatrix vectors;  // columns unit 2-norm
};

bool all_finite(const Matrix& m);

SvdFactors full_svd(const Matrix& x);

/// Singular values only.
Vector singular_values(const Matrix& x);

QrFactors thin_qr(const Matrix& y);

/// Orthonormal basis from a thin QR, without forming R.
Matrix orthonormalize(const Matrix& y);

/// Moore-Penrose pseudoinverse. Singular values <= tol * sigma_1 are treated
/// as zero; the default tol is max(rows, cols) * machine epsilon.
Matrix pinv(const Matrix& m, std::optional<double> tol = std::nullopt);

EigenDecomposition eig(const Matrix& a);

/// Largest singular value.
double norm2(const Matrix& m);

/// Counter-based normal stream.
///
/// Normal number i of a stream is a pure function of (seed, i): uniforms are
/// produced by the SplitMix64 finalizer applied to seed-mixed counters, and
/// pairs of uniforms are mapped to normals by the Box-Muller transform
/// (even index takes the cosine branch, odd the sine branch). The output is
/// therefore identical regardless of how draws are batched.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return next_; }

  double normal() { return normal_at(next_++); }
  double normal_at(std::uint64_t index) const;

  /// Uniform in [0, 1).
  double uniform();

  /// Independent stream for parallel or nested consumers.
  RngStream split(std::uint64_t stream_id) const;

 private:
  std::uint64_t bits_at(std::uint64_t counter) const;

  std::uint64_t seed_;
  std::uint64_t next_ = 0;
  std::uint64_t uniform_next_ = 0;
};

/// i.i.d. N(0,1) entries, drawn in row-major order from the stream.
Matrix gaussian_matrix(RngStream& rng, Index rows, Index cols);

}  // namespace sysid
