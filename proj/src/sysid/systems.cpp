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

#include "sysid/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sysid {

void StateSpace::validate() const {
  require(A.rows() == A.cols(), ErrorCode::dimension, "StateSpace: A must be square");
  require(B.rows() == A.rows(), ErrorCode::dimension, "StateSpace: B rows must match A");
  require(C.cols() == A.rows(), ErrorCode::dimension, "StateSpace: C cols must match A");
  require(D.rows() == C.rows() && D.cols() == B.cols(), ErrorCode::dimension,
          "StateSpace: D must be outputs x inputs");
  require(A.allFinite() && B.allFinite() && C.allFinite() && D.allFinite(),
          ErrorCode::invalid_input, "StateSpace: non-finite entries");
}

std::vector<Matrix> impulse_blocks(const StateSpace& ss, Index count) {
  require(count >= 1, ErrorCode::config, "impulse_blocks: count must be >= 1");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(count));
  blocks.push_back(ss.D);
  Matrix state = ss.B;
  for (Index k = 1; k < count; ++k) {
    blocks.push_back(ss.C * state);
    if (k + 1 < count) state = ss.A * state;
  }
  return blocks;
}

MarkovSequence simulate_impulse(const StateSpace& ss, Index count, std::optional<double> dt) {
  ss.validate();
  require(count >= 2, ErrorCode::config, "simulate_impulse: need at least 2 Markov parameters");
  return MarkovSequence(ss.outputs(), ss.inputs(), impulse_blocks(ss, count), dt);
}

MarkovSequence simulate_impulse(const LtiSystem& sys, Index count) {
  return simulate_impulse(sys.ss, count, sys.dt);
}

double spectral_radius(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const auto e = eig(a);
  return std::abs(e.values(0));
}

namespace {

Matrix random_orthogonal(RngStream& rng, Index n) {
  return orthonormalize(gaussian_matrix(rng, n, n));
}

// PBH: (A, B) reachable iff [A - lambda I, B] has full row rank for every
// eigenvalue lambda.
bool pbh_full_rank(const Matrix& a, const Matrix& b, const ComplexVector& eigenvalues) {
  const Index n = a.rows();
  const double scale = std::max(a.norm(), b.norm());
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    ComplexMatrix m(n, n + b.cols());
    m.leftCols(n) = a.cast<std::complex<double>>() -
                    eigenvalues(k) * ComplexMatrix::Identity(n, n);
    m.rightCols(b.cols()) = b.cast<std::complex<double>>();
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-8 * scale) return false;
  }
  return true;
}

}  // namespace

LtiSystem random_stable_system(const RandomSystemOptions& opt) {
  require(opt.n >= 1 && opt.m >= 1 && opt.l >= 1, ErrorCode::config,
          "random_stable_system: n, m, l must be >= 1");
  require(opt.rho_max > 0.0 && opt.rho_max < 1.0, ErrorCode::config,
          "random_stable_system: rho_max must lie in (0, 1)");
  const double rho_min = opt.rho_min < 0.0 ? 0.5 * opt.rho_max : opt.rho_min;
  require(rho_min <= opt.rho_max, ErrorCode::config,
          "random_stable_system: rho_min exceeds rho_max");

  RngStream rng(opt.seed);
  const Index n = opt.n;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix lambda = Matrix::Zero(n, n);
    Index i = 0;
    while (i < n) {
      const double radius = rho_min + (opt.rho_max - rho_min) * rng.uniform();
      if (n - i >= 2 && rng.uniform() < opt.complex_fraction) {
        const double angle = std::numbers::pi * (0.05 + 0.9 * rng.uniform());
        const double re = radius * std::cos(angle), im = radius * std::sin(angle);
        lambda(i, i) = re;
        lambda(i, i + 1) = im;
        lambda(i + 1, i) = -im;
        lambda(i + 1, i + 1) = re;
        i += 2;
      } else {
        lambda(i, i) = rng.uniform() < 0.5 ? -radius : radius;
        i += 1;
      }
    }

    // V = Q1 diag(s) Q2^T with s in [1, 10].
    Vector sv(n);
    for (Index k = 0; k < n; ++k) sv(k) = std::pow(10.0, rng.uniform());
    const Matrix v = random_orthogonal(rng, n) * sv.asDiagonal() * random_orthogonal(rng, n).transpose();
    const double kappa = sv.maxCoeff() / sv.minCoeff();
    if (kappa > 100.0) continue;

    LtiSystem sys;
    sys.ss.A = v * lambda * v.inverse();
    sys.ss.B = gaussian_matrix(rng, n, opt.m);
    sys.ss.C = gaussian_matrix(rng, opt.l, n);
    sys.ss.D = Matrix::Zero(opt.l, opt.m);

    const ComplexVector poles = eig(sys.ss.A).values;
    if (!pbh_full_rank(sys.ss.A, sys.ss.B, poles) ||
        !pbh_full_rank(sys.ss.A.transpose(), sys.ss.C.transpose(), poles))
      continue;

    sys.generator.kind = "random";
    sys.generator.seed = opt.seed;
    sys.generator.params = {{"rho_max", opt.rho_max},
                            {"rho_min", rho_min},
                            {"complex_fraction", opt.complex_fraction},
                            {"attempts", static_cast<double>(attempt + 1)}};
    return sys;
  }
  fail(ErrorCode::numerical, "random_stable_system: no admissible draw after 100 attempts");
}

Vector heat1d_continuous_eigenvalues(Index grid_n, double diffusivity) {
  const double h = 1.0 / static_cast<double>(grid_n + 1);
  Vector out(grid_n);
  for (Index j = 0; j < grid_n; ++j) {
    const double s = std::sin(static_cast<double>(j + 1) * std::numbers::pi /
                              (2.0 * static_cast<double>(grid_n + 1)));
    out(j) = -4.0 * diffusivity / (h * h) * s * s;
  }
  return out;
}

Matrix heat1d_generator(Index grid_n, double diffusivity) {
  const double h = 1.0 / static_cast<double>(grid_n + 1);
  const double c = diffusivity / (h * h);
  Matrix a = Matrix::Zero(grid_n, grid_n);
  for (Index i = 0; i < grid_n; ++i) {
    a(i, i) = -2.0 * c;
    if (i > 0) a(i, i - 1) = c;
    if (i + 1 < grid_n) a(i, i + 1) = c;
  }
  return a;
}

namespace {

// Interior node for channel j of count, spread evenly with a phase shift so
// sources and sensors need not coincide.
Index node_for(Index j, Index count, Index grid_n, double phase) {
  const double pos = (static_cast<double>(j) + phase) / static_cast<double>(count);
  const auto idx = static_cast<Index>(std::floor(pos * static_cast<double>(grid_n)));
  return std::clamp<Index>(idx, 0, grid_n - 1);
}

}  // namespace

LtiSystem heat1d_system(const HeatOptions& opt) {
  require(opt.grid_n >= 2, ErrorCode::config, "heat1d_system: grid_n must be >= 2");
  require(opt.diffusivity > 0.0, ErrorCode::config, "heat1d_system: diffusivity must be positive");
  require(opt.dt >= 0.0, ErrorCode::config, "heat1d_system: dt must be non-negative");
  require(opt.inputs >= 1 && opt.outputs >= 1, ErrorCode::config,
          "heat1d_system: need at least one input and one output");
  const Index n = opt.grid_n;
  const Vector lam = heat1d_continuous_eigenvalues(n, opt.diffusivity);

  Matrix v(n, n);
  const double norm = std::sqrt(2.0 / static_cast<double>(n + 1));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      v(i, j) = norm * std::sin(static_cast<double>((i + 1) * (j + 1)) * std::numbers::pi /
                                static_cast<double>(n + 1));

  Vector decay(n);
  for (Index j = 0; j < n; ++j) decay(j) = std::exp(lam(j) * opt.dt);

  LtiSystem sys;
  sys.ss.A = v * decay.asDiagonal() * v.transpose();
  sys.ss.B = Matrix::Zero(n, opt.inputs);
  for (Index j = 0; j < opt.inputs; ++j) sys.ss.B(node_for(j, opt.inputs, n, 0.5), j) = 1.0;
  sys.ss.C = Matrix::Zero(opt.outputs, n);
  for (Index i = 0; i < opt.outputs; ++i) sys.ss.C(i, node_for(i, opt.outputs, n, 0.25)) = 1.0;
  sys.ss.D = Matrix::Zero(opt.outputs, opt.inputs);
  if (opt.dt > 0.0) sys.dt = opt.dt;
  sys.generator.kind = "heat";
  sys.generator.params = {{"grid_n", static_cast<double>(n)},
                          {"diffusivity", opt.diffusivity},
                          {"dt", opt.dt}};
  return sys;
}

LtiSystem oscillatory_system(const OscillatoryOptions& opt) {
  require(opt.n_pairs >= 1 && opt.m >= 1, ErrorCode::config,
          "oscillatory_system: n_pairs and m must be >= 1");
  require(opt.radius_min > 0.0 && opt.radius_min <= opt.radius_max && opt.radius_max < 1.0,
          ErrorCode::config, "oscillatory_system: need 0 < radius_min <= radius_max < 1");
  require(opt.angle_min > 0.0 && opt.angle_min <= opt.angle_max && opt.angle_max < std::numbers::pi,
          ErrorCode::config, "oscillatory_system: need 0 < angle_min <= angle_max < pi");
  require(opt.channel_decay > 0.0 && opt.channel_decay <= 1.0, ErrorCode::config,
          "oscillatory_system: channel_decay must lie in (0, 1]");
  const Index n = 2 * opt.n_pairs;
  const Index l = opt.identity_output ? n : opt.l;
  require(l >= 1, ErrorCode::config, "oscillatory_system: l must be >= 1");

  RngStream rng(opt.seed);
  Matrix blocks = Matrix::Zero(n, n);
  for (Index p = 0; p < opt.n_pairs; ++p) {
    const double r = opt.radius_min + (opt.radius_max - opt.radius_min) * rng.uniform();
    const double th = opt.angle_min + (opt.angle_max - opt.angle_min) * rng.uniform();
    const Index i = 2 * p;
    blocks(i, i) = r * std::cos(th);
    blocks(i, i + 1) = r * std::sin(th);
    blocks(i + 1, i) = -r * std::sin(th);
    blocks(i + 1, i + 1) = r * std::cos(th);
  }
  const Matrix q = random_orthogonal(rng, n);

  LtiSystem sys;
  sys.ss.A = q * blocks * q.transpose();
  sys.ss.B = gaussian_matrix(rng, n, opt.m);
  for (Index j = 0; j < opt.m; ++j) sys.ss.B.col(j) *= std::pow(opt.channel_decay, static_cast<double>(j));
  if (opt.identity_output) {
    sys.ss.C = Matrix::Identity(n, n);
  } else {
    sys.ss.C = gaussian_matrix(rng, l, n);
    for (Index i = 0; i < l; ++i) sys.ss.C.row(i) *= std::pow(opt.channel_decay, static_cast<double>(i));
  }
  sys.ss.D = Matrix::Zero(l, opt.m);
  sys.generator.kind = "oscillatory";
  sys.generator.seed = opt.seed;
  sys.generator.params = {{"n_pairs", static_cast<double>(opt.n_pairs)},
                          {"radius_min", opt.radius_min},
                          {"radius_max", opt.radius_max},
                          {"angle_min", opt.angle_min},
                          {"angle_max", opt.angle_max},
                          {"channel_decay", opt.channel_decay},
                          {"identity_output", opt.identity_output ? 1.0 : 0.0}};
  return sys;
}

}  // namespace sysid
