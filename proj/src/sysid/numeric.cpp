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

#include "sysid/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include <lapacke.h>

namespace sysid {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// 53 random bits mapped to [0, 1).
double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t kUniformDomain = 0xD1B54A32D192ED03ULL;

SvdFactors svd_lapack(Matrix a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  SvdFactors out;
  out.U.resize(m, k);
  out.sigma.resize(k);
  Matrix vt(k, n);
  if (k == 0) {
    out.V.resize(n, 0);
    return out;
  }
  Matrix backup = a;
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, a.data(), m,
                                   out.sigma.data(), out.U.data(), m,
                                   vt.data(), k);
  if (info > 0) {
    // Divide and conquer occasionally fails to converge; QR iteration is the
    // slower but more robust fallback.
    std::vector<double> superb(static_cast<std::size_t>(k));
    info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, backup.data(), m,
                          out.sigma.data(), out.U.data(), m, vt.data(), k,
                          superb.data());
  }
  require(info == 0, ErrorCode::numerical,
          "SVD failed to converge (LAPACK info " + std::to_string(info) + ")");
  out.V = vt.transpose();
  return out;
}

}  // namespace

bool all_finite(const Matrix& m) { return m.allFinite(); }

SvdFactors full_svd(const Matrix& x) {
  require(x.allFinite(), ErrorCode::invalid_input,
          "full_svd: matrix has non-finite entries");
  return svd_lapack(x);
}

Vector singular_values(const Matrix& x) {
  require(x.allFinite(), ErrorCode::invalid_input,
          "singular_values: matrix has non-finite entries");
  const lapack_int m = static_cast<lapack_int>(x.rows());
  const lapack_int n = static_cast<lapack_int>(x.cols());
  const lapack_int k = std::min(m, n);
  Vector s(k);
  if (k == 0) return s;
  Matrix a = x;
  double dummy = 0.0;
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m,
                                   s.data(), &dummy, 1, &dummy, 1);
  require(info == 0, ErrorCode::numerical, "singular value computation failed");
  return s;
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

QrFactors thin_qr(const Matrix& y) {
  require(y.rows() >= y.cols(), ErrorCode::dimension,
          "thin_qr: needs rows >= cols, got " + std::to_string(y.rows()) +
              "x" + std::to_string(y.cols()));
  require(y.allFinite(), ErrorCode::invalid_input,
          "thin_qr: matrix has non-finite entries");
  Eigen::HouseholderQR<Matrix> qr(y);
  QrFactors out;
  out.Q = qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
  out.R = qr.matrixQR().topRows(y.cols()).triangularView<Eigen::Upper>();
  return out;
}

Matrix orthonormalize(const Matrix& y) {
  require(y.rows() >= y.cols(), ErrorCode::dimension,
          "orthonormalize: needs rows >= cols");
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
}

Matrix pinv(const Matrix& m, std::optional<double> tol) {
  require(m.allFinite(), ErrorCode::invalid_input,
          "pinv: matrix has non-finite entries");
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  const SvdFactors f = svd_lapack(m);
  const double rel = tol.value_or(static_cast<double>(std::max(m.rows(), m.cols())) *
                                  std::numeric_limits<double>::epsilon());
  const double cutoff = rel * f.sigma(0);
  Vector inv = Vector::Zero(f.sigma.size());
  for (Index i = 0; i < f.sigma.size(); ++i)
    if (f.sigma(i) > cutoff) inv(i) = 1.0 / f.sigma(i);
  return f.V * inv.asDiagonal() * f.U.transpose();
}

EigenDecomposition eig(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::dimension, "eig: matrix must be square");
  require(a.allFinite(), ErrorCode::invalid_input, "eig: matrix has non-finite entries");
  EigenDecomposition out;
  const Index n = a.rows();
  if (n == 0) return out;
  Eigen::EigenSolver<Matrix> solver(a, true);
  require(solver.info() == Eigen::Success, ErrorCode::numerical,
          "eig: eigenvalue iteration did not converge");
  const ComplexVector values = solver.eigenvalues();
  const ComplexMatrix vectors = solver.eigenvectors();

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    const double ai = std::abs(values(i)), aj = std::abs(values(j));
    if (ai != aj) return ai > aj;
    if (values(i).real() != values(j).real()) return values(i).real() > values(j).real();
    return values(i).imag() > values(j).imag();
  });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    auto col = vectors.col(order[static_cast<std::size_t>(k)]);
    const double nrm = col.norm();
    out.vectors.col(k) = nrm > 0.0 ? ComplexVector(col / nrm) : ComplexVector(col);
  }
  return out;
}

std::uint64_t RngStream::bits_at(std::uint64_t counter) const {
  return splitmix64(splitmix64(seed_) + counter * 0x9E3779B97F4A7C15ULL);
}

double RngStream::normal_at(std::uint64_t index) const {
  const std::uint64_t pair = index & ~std::uint64_t{1};
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - to_unit(bits_at(pair));
  const double u2 = to_unit(bits_at(pair + 1));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1) ? radius * std::sin(angle) : radius * std::cos(angle);
}

double RngStream::uniform() {
  return to_unit(splitmix64(bits_at(uniform_next_++) ^ kUniformDomain));
}

RngStream RngStream::split(std::uint64_t stream_id) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL)));
}

Matrix gaussian_matrix(RngStream& rng, Index rows, Index cols) {
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.normal();
  return out;
}

}  // namespace sysid
