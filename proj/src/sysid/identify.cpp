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

#include "sysid/identify.hpp"

#include <algorithm>
#include <chrono>

namespace sysid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_dense_cap(const MarkovSequence& markov, Index s, double cap) {
  const double entries = static_cast<double>(s * markov.ell()) * static_cast<double>(s * markov.m());
  require(entries <= cap, ErrorCode::size_cap,
          "H_s has " + std::to_string(static_cast<long long>(entries)) +
              " entries, above the dense cap of " + std::to_string(static_cast<long long>(cap)) +
              "; use the rsvd-h method");
}

}  // namespace

const char* to_string(SvdMethod m) {
  switch (m) {
    case SvdMethod::full_svd: return "full";
    case SvdMethod::rsvd_dense: return "rsvd";
    case SvdMethod::rsvd_hankel: return "rsvd-h";
  }
  return "?";
}

SvdMethod svd_method_from_string(const std::string& name) {
  if (name == "full" || name == "full-svd") return SvdMethod::full_svd;
  if (name == "rsvd" || name == "rsvd-dense") return SvdMethod::rsvd_dense;
  if (name == "rsvd-h" || name == "rsvd-hankel") return SvdMethod::rsvd_hankel;
  fail(ErrorCode::config, "unknown SVD method '" + name + "'");
}

Index resolve_depth(const MarkovSequence& markov, Index depth) {
  const Index s = depth == 0 ? markov.max_depth() : depth;
  require(s >= 2, ErrorCode::config, "identification needs s >= 2 (at least 4 Markov blocks)");
  require(2 * s <= markov.size(), ErrorCode::dimension,
          "depth s = " + std::to_string(s) + " needs " + std::to_string(2 * s) +
              " Markov blocks, have " + std::to_string(markov.size()));
  return s;
}

TruncatedSvd hankel_svd(const MarkovSequence& markov, Index s, const IdentifyOptions& opt,
                        StageTimings* timings) {
  RsvdConfig cfg{opt.rank, opt.oversampling, opt.power_iters, opt.seed};
  StageTimings local;
  TruncatedSvd out;
  switch (opt.method) {
    case SvdMethod::full_svd: {
      require(opt.rank >= 1 && opt.rank <= s * std::min(markov.ell(), markov.m()), ErrorCode::config,
              "rank must lie in [1, s * min(ell, m)]");
      check_dense_cap(markov, s, opt.max_dense_entries);
      auto t0 = Clock::now();
      const Matrix h = dense_assembly(markov, s, std::nullopt);
      local.operator_build = seconds_since(t0);
      t0 = Clock::now();
      out = truncate(full_svd(h), opt.rank);
      local.svd = seconds_since(t0);
      break;
    }
    case SvdMethod::rsvd_dense: {
      check_dense_cap(markov, s, opt.max_dense_entries);
      auto t0 = Clock::now();
      const Matrix h = dense_assembly(markov, s, std::nullopt);
      local.operator_build = seconds_since(t0);
      t0 = Clock::now();
      out = randsvd(DenseOperator(h), cfg);
      local.svd = seconds_since(t0);
      break;
    }
    case SvdMethod::rsvd_hankel: {
      auto t0 = Clock::now();
      const BlockHankelOperator op(markov, s, opt.op);
      local.operator_build = seconds_since(t0);
      t0 = Clock::now();
      out = randsvd(op, cfg);
      local.svd = seconds_since(t0);
      break;
    }
  }
  if (timings) *timings = local;
  return out;
}

std::optional<double> estimate_sin_theta(const MarkovSequence& markov, Index s,
                                         const TruncatedSvd& svd, const IdentifyOptions& opt,
                                         double* residual_bound, double* gap) {
  const Index r = svd.rank();
  if (svd.sketch_sigma.size() <= r) return std::nullopt;
  const double delta = svd.sketch_sigma(r - 1) - svd.sketch_sigma(r);
  if (!(delta > 0.0)) return std::nullopt;
  double bound;
  if (opt.method == SvdMethod::rsvd_hankel) {
    bound = residual_sin_theta_bound(BlockHankelOperator(markov, s, opt.op), svd, delta);
  } else {
    const Matrix h = dense_assembly(markov, s, std::nullopt);
    bound = residual_sin_theta_bound(DenseOperator(h), svd, delta);
  }
  if (residual_bound) *residual_bound = bound;
  if (gap) *gap = delta;
  return std::min(1.0, bound);
}

Identification identify(const MarkovSequence& markov, const IdentifyOptions& opt) {
  const Index s = resolve_depth(markov, opt.depth);
  Identification out;
  StageTimings timings;
  out.svd = hankel_svd(markov, s, opt, &timings);

  auto t0 = Clock::now();
  out.model = recover(out.svd, markov, s, opt.formulation);
  timings.recovery = seconds_since(t0);

  out.model.provenance.method = to_string(opt.method);
  if (opt.method != SvdMethod::full_svd) {
    out.model.provenance.seed = opt.seed;
    out.model.provenance.rho = opt.oversampling;
    out.model.provenance.q = opt.power_iters;
  }

  std::optional<double> sin_theta;
  std::string source;
  double residual = 0.0, gap = 0.0;
  if (opt.method == SvdMethod::full_svd) {
    sin_theta = 0.0;
    source = "exact";
  } else {
    sin_theta = estimate_sin_theta(markov, s, out.svd, opt, &residual, &gap);
    source = "residual-estimate";
  }
  out.diagnostics = diagnose(out.model, out.svd, markov, s, sin_theta, source, opt.thresholds);
  if (opt.method != SvdMethod::full_svd && sin_theta) {
    out.diagnostics.residual_bound = residual;
    out.diagnostics.gap = gap;
  }
  out.diagnostics.timings = timings;
  for (const auto& w : out.model.warnings) out.diagnostics.warnings.push_back(w);
  return out;
}

}  // namespace sysid
