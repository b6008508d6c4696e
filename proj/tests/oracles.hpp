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

// Reference implementations used only as test oracles. They follow the
// textbook definitions directly and share no code with the library paths
// they check.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sysid/hankel.hpp"
#include "sysid/numeric.hpp"
#include "sysid/systems.hpp"

namespace sysid::testing {

/// H_s entry by entry: block (a, b) is h_{a+b+1}.
inline Matrix naive_block_hankel(const std::vector<Matrix>& h, Index s) {
  const Index ell = h[0].rows(), m = h[0].cols();
  Matrix out(s * ell, s * m);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b)
      for (Index i = 0; i < ell; ++i)
        for (Index j = 0; j < m; ++j) out(a * ell + i, b * m + j) = h[static_cast<std::size_t>(a + b + 1)](i, j);
  return out;
}

/// Markov blocks h_k = C W diag(lambda)^{k-1} W^-1 B from the eigendecomposition.
inline std::vector<Matrix> modal_markov(const StateSpace& ss, Index count) {
  Eigen::EigenSolver<Matrix> es(ss.A);
  const ComplexMatrix w = es.eigenvectors();
  const ComplexVector lam = es.eigenvalues();
  const ComplexMatrix cw = ss.C.cast<std::complex<double>>() * w;
  const ComplexMatrix wib = w.inverse() * ss.B.cast<std::complex<double>>();
  std::vector<Matrix> out{ss.D};
  for (Index k = 1; k < count; ++k) {
    ComplexVector p(lam.size());
    for (Index i = 0; i < lam.size(); ++i) p(i) = std::pow(lam(i), static_cast<double>(k - 1));
    out.push_back((cw * p.asDiagonal() * wib).real());
  }
  return out;
}

inline std::vector<Matrix> random_blocks(RngStream& rng, Index ell, Index m, Index count) {
  std::vector<Matrix> out;
  for (Index k = 0; k < count; ++k) out.push_back(gaussian_matrix(rng, ell, m));
  return out;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  const double denom = b.norm();
  return denom == 0.0 ? a.norm() : (a - b).norm() / denom;
}

/// Hausdorff distance by brute force over both directions.
inline double brute_hausdorff(const ComplexVector& a, const ComplexVector& b) {
  double worst = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const ComplexVector& x = pass == 0 ? a : b;
    const ComplexVector& y = pass == 0 ? b : a;
    for (Index i = 0; i < x.size(); ++i) {
      double best = INFINITY;
      for (Index j = 0; j < y.size(); ++j) best = std::min(best, std::abs(x(i) - y(j)));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace sysid::testing
