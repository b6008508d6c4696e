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

#include <cstdint>

#include "sysid/linear_operator.hpp"
#include "sysid/numeric.hpp"

namespace sysid {

struct RsvdConfig {
  Index target_rank = 1;
  Index oversampling = 20;
  Index power_iters = 1;
  std::uint64_t seed = 0;

  void validate(Index rows, Index cols) const;
};

/// Rank-r factors U (M x r), sigma (r, nonincreasing), V (N x r).
struct TruncatedSvd {
  Matrix U;
  Vector sigma;
  Matrix V;
  /// All r + oversampling singular values of the projected matrix Q^T X,
  /// when produced by randsvd; empty otherwise.
  Vector sketch_sigma;

  Index rank() const { return sigma.size(); }
};

/// Leading r columns of a full SVD.
TruncatedSvd truncate(const SvdFactors& full, Index r);

/// Randomized SVD with q steps of subspace iteration. Draws the Gaussian test
/// matrix from RngStream(seed) in row-major order and re-orthonormalizes after
/// every operator application.
TruncatedSvd randsvd(const LinearOperator& op, const RsvdConfig& cfg);

/// The sketch-and-iterate stage alone: an M x k orthonormal Q with
/// range(Q) approximating range(op).
Matrix range_finder(const LinearOperator& op, Index k, Index power_iters, std::uint64_t seed);

}  // namespace sysid
