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

#include "sysid/tera.hpp"

#include <chrono>

namespace sysid {

SideMatrices build_side_matrices(const MarkovSequence& markov, Index s) {
  if (s == 0) s = markov.max_depth();
  require(s >= 1, ErrorCode::config, "build_side_matrices: need at least h_1");
  require(2 * s <= markov.size(), ErrorCode::dimension,
          "build_side_matrices: sequence too short for depth s");
  const Index ell = markov.ell(), m = markov.m(), count = 2 * s - 1;
  SideMatrices out{Matrix(ell, m * count), Matrix(ell * count, m)};
  for (Index k = 1; k <= count; ++k) {
    out.wide.middleCols((k - 1) * m, m) = markov[k];
    out.tall.middleRows((k - 1) * ell, ell) = markov[k];
  }
  return out;
}

Index choose_ranks(const Vector& sigma, double epsilon, std::vector<std::string>* warnings) {
  require(sigma.size() > 0, ErrorCode::invalid_input, "choose_ranks: empty singular values");
  require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::config, "choose_ranks: epsilon must lie in (0, 1]");
  if (sigma(0) == 0.0) {
    if (warnings) warnings->push_back("choose_ranks: zero matrix, keeping one direction");
    return 1;
  }
  const double threshold = epsilon * sigma(0);
  Index count = 0;
  while (count < sigma.size() && sigma(count) >= threshold) ++count;
  return std::max<Index>(count, 1);
}

TangentialProjectors build_projectors(const MarkovSequence& markov, const ProjectorSpec& spec,
                                      Index s) {
  require(spec.epsilon || (spec.lp && spec.mp), ErrorCode::config,
          "build_projectors: give epsilon or both lp and mp");
  const SideMatrices side = build_side_matrices(markov, s);
  const SvdFactors w = full_svd(side.wide);
  const SvdFactors e = full_svd(side.tall);

  TangentialProjectors out;
  out.sigma_w = w.sigma;
  out.sigma_e = e.sigma;
  out.epsilon = spec.epsilon;
  const Index lp = spec.lp ? *spec.lp : choose_ranks(w.sigma, *spec.epsilon, &out.warnings);
  const Index mp = spec.mp ? *spec.mp : choose_ranks(e.sigma, *spec.epsilon, &out.warnings);
  require(lp >= 1 && lp <= markov.ell(), ErrorCode::config, "build_projectors: lp must lie in [1, ell]");
  require(mp >= 1 && mp <= markov.m(), ErrorCode::config, "build_projectors: mp must lie in [1, m]");
  out.W1 = w.U.leftCols(lp);
  out.W2 = e.V.leftCols(mp);
  return out;
}

MarkovSequence project_markov(const MarkovSequence& markov, const TangentialProjectors& proj) {
  require(proj.W1.rows() == markov.ell() && proj.W2.rows() == markov.m(), ErrorCode::dimension,
          "project_markov: projectors do not match the sequence");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(markov.size()));
  for (const Matrix& h : markov.blocks()) blocks.push_back(proj.W1.transpose() * h * proj.W2);
  return MarkovSequence(proj.lp(), proj.mp(), std::move(blocks), markov.dt());
}

TeraIdentification randtera(const MarkovSequence& markov, const TeraOptions& opt) {
  using Clock = std::chrono::steady_clock;
  const Index s = resolve_depth(markov, opt.depth);

  TeraIdentification out;
  auto t0 = Clock::now();
  out.projectors = build_projectors(markov, opt.projectors, s);
  const MarkovSequence projected = project_markov(markov, out.projectors);
  const double projection_time = std::chrono::duration<double>(Clock::now() - t0).count();

  IdentifyOptions inner;
  inner.method = opt.backend == TeraBackend::full ? SvdMethod::full_svd : SvdMethod::rsvd_hankel;
  inner.rank = opt.rank;
  inner.depth = s;
  inner.oversampling = opt.oversampling;
  inner.power_iters = opt.power_iters;
  inner.seed = opt.seed;
  inner.formulation = opt.formulation;
  inner.max_dense_entries = opt.max_dense_entries;
  inner.op = opt.op;
  inner.thresholds = opt.thresholds;

  Identification id = identify(projected, inner);
  out.svd = std::move(id.svd);
  out.diagnostics = std::move(id.diagnostics);
  out.diagnostics.timings.operator_build += projection_time;

  t0 = Clock::now();
  out.model = std::move(id.model);
  out.model.ss.C = out.projectors.W1 * out.model.ss.C;
  out.model.ss.B = out.model.ss.B * out.projectors.W2.transpose();
  out.model.ss.D = markov[0];
  out.diagnostics.timings.recovery += std::chrono::duration<double>(Clock::now() - t0).count();

  out.model.provenance.method = opt.backend == TeraBackend::full ? "tera" : "randtera";
  out.model.tangential = TangentialInfo{out.projectors.epsilon, out.projectors.lp(),
                                        out.projectors.mp(), out.projectors.sigma_w,
                                        out.projectors.sigma_e};
  for (const auto& w : out.projectors.warnings) {
    out.model.warnings.push_back(w);
    out.diagnostics.warnings.push_back(w);
  }
  return out;
}

}  // namespace sysid
