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

#include "sysid/rsvd.hpp"

#include <algorithm>
#include <string>

namespace sysid {

void RsvdConfig::validate(Index rows, Index cols) const {
  require(target_rank >= 1, ErrorCode::config, "randsvd: target rank must be >= 1");
  require(oversampling >= 0, ErrorCode::config, "randsvd: oversampling must be >= 0");
  require(power_iters >= 0, ErrorCode::config, "randsvd: power iterations must be >= 0");
  require(target_rank + oversampling <= std::min(rows, cols), ErrorCode::config,
          "randsvd: rank + oversampling = " + std::to_string(target_rank + oversampling) +
              " exceeds min dimension " + std::to_string(std::min(rows, cols)));
}

TruncatedSvd truncate(const SvdFactors& full, Index r) {
  require(r >= 0 && r <= full.sigma.size(), ErrorCode::config,
          "truncate: rank " + std::to_string(r) + " out of range");
  TruncatedSvd out;
  out.U = full.U.leftCols(r);
  out.sigma = full.sigma.head(r);
  out.V = full.V.leftCols(r);
  return out;
}

Matrix range_finder(const LinearOperator& op, Index k, Index power_iters, std::uint64_t seed) {
  require(k >= 1 && k <= std::min(op.rows(), op.cols()), ErrorCode::config,
          "range_finder: sketch width out of range");
  require(power_iters >= 0, ErrorCode::config, "range_finder: power iterations must be >= 0");
  RngStream rng(seed);
  const Matrix omega = gaussian_matrix(rng, op.cols(), k);
  Matrix q = orthonormalize(op.matmat(omega));
  for (Index it = 0; it < power_iters; ++it) {
    const Matrix w = orthonormalize(op.rmatmat(q));
    q = orthonormalize(op.matmat(w));
  }
  return q;
}

TruncatedSvd randsvd(const LinearOperator& op, const RsvdConfig& cfg) {
  cfg.validate(op.rows(), op.cols());
  const Index k = cfg.target_rank + cfg.oversampling;
  const Matrix q = range_finder(op, k, cfg.power_iters, cfg.seed);

  // B = Q^T X is formed as (X^T Q)^T, so only the transpose product is needed.
  // SVD of the tall N x k matrix B^T = U_t S V_t^T gives B = V_t S U_t^T.
  const Matrix bt = op.rmatmat(q);
  const SvdFactors f = full_svd(bt);

  TruncatedSvd out;
  const Index r = cfg.target_rank;
  out.U = q * f.V.leftCols(r);
  out.sigma = f.sigma.head(r);
  out.V = f.U.leftCols(r);
  out.sketch_sigma = f.sigma;
  return out;
}

}  // namespace sysid
