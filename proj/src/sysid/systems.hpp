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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sysid/hankel.hpp"
#include "sysid/numeric.hpp"

namespace sysid {

/// x_{k+1} = A x_k + B u_k,  y_k = C x_k + D u_k.
struct StateSpace {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix D;

  Index order() const { return A.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return C.rows(); }
  void validate() const;
};

struct GeneratorInfo {
  std::string kind;  // "random", "heat", "oscillatory", or "" for external data
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> params;
};

struct LtiSystem {
  StateSpace ss;
  std::optional<double> dt;
  GeneratorInfo generator;
};

/// D, CB, CAB, ..., CA^{count-2}B by propagating the n x m state block.
std::vector<Matrix> impulse_blocks(const StateSpace& ss, Index count);

/// Impulse response h_0 = D, h_k = C A^{k-1} B for k < count, by propagating
/// the n x m state block.
MarkovSequence simulate_impulse(const StateSpace& ss, Index count,
                                std::optional<double> dt = std::nullopt);
MarkovSequence simulate_impulse(const LtiSystem& sys, Index count);

double spectral_radius(const Matrix& a);

struct RandomSystemOptions {
  Index n = 10;
  Index m = 2;
  Index l = 3;
  double rho_max = 0.9;
  /// Lower bound on eigenvalue moduli; negative selects rho_max / 2.
  double rho_min = -1.0;
  /// Probability that a draw produces a conjugate pair rather than a real pole.
  double complex_fraction = 0.5;
  std::uint64_t seed = 0;
};

/// A = V diag-blocks(Lambda) V^-1 with kappa_2(V) <= 100, B and C Gaussian,
/// D = 0. Draws are repeated until the pair (A, B) is reachable and (A, C)
/// observable by the PBH rank test.
LtiSystem random_stable_system(const RandomSystemOptions& opt);

struct HeatOptions {
  Index grid_n = 200;
  double diffusivity = 1.0;
  double dt = 1e-3;
  Index inputs = 7;
  Index outputs = 6;
};

/// Continuous-time eigenvalues of the Dirichlet Laplacian on (0, 1) with
/// grid_n interior nodes, ascending in magnitude.
Vector heat1d_continuous_eigenvalues(Index grid_n, double diffusivity);

/// Continuous generator (kappa / h^2) tridiag(1, -2, 1).
Matrix heat1d_generator(Index grid_n, double diffusivity);

/// 1D heat rod discretized exactly in time through the closed-form sine
/// eigenbasis. B holds unit point sources at interior nodes, C point sensors.
LtiSystem heat1d_system(const HeatOptions& opt);

struct OscillatoryOptions {
  Index n_pairs = 20;
  Index m = 20;
  Index l = 40;
  double radius_min = 0.9;
  double radius_max = 0.99;
  /// Frequency range (radians per sample) of the modes.
  double angle_min = 0.02;
  double angle_max = 1.0;
  /// Input column j is scaled by channel_decay^j and output row i by
  /// channel_decay^i, so a few channels dominate.
  double channel_decay = 1.0;
  /// C = I; forces l = 2 * n_pairs.
  bool identity_output = false;
  std::uint64_t seed = 0;
};

/// Lightly damped system whose poles are conjugate pairs r e^{+-i theta}
/// with r in [radius_min, radius_max]; A = Q blockdiag Q^T, Q orthogonal.
LtiSystem oscillatory_system(const OscillatoryOptions& opt);

}  // namespace sysid
