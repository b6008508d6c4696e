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

#include <string>

#include "sysid/era.hpp"
#include "sysid/metrics.hpp"
#include "sysid/rsvd.hpp"

namespace sysid {

enum class SvdMethod {
  full_svd,     // dense assembly + LAPACK SVD
  rsvd_dense,   // randomized SVD over the assembled matrix
  rsvd_hankel,  // randomized SVD over the FFT operator, nothing assembled
};

const char* to_string(SvdMethod m);
SvdMethod svd_method_from_string(const std::string& name);

inline constexpr double kDefaultMaxDenseEntries = 1e8;

struct IdentifyOptions {
  SvdMethod method = SvdMethod::full_svd;
  Index rank = 1;
  /// Hankel depth; 0 selects the largest depth the sequence supports.
  Index depth = 0;
  Index oversampling = 20;
  Index power_iters = 1;
  std::uint64_t seed = 0;
  Formulation formulation = Formulation::standard;
  /// Dense paths refuse H_s with more entries than this.
  double max_dense_entries = kDefaultMaxDenseEntries;
  HankelOperatorOptions op;
  AssumptionThresholds thresholds;
};

struct Identification {
  IdentifiedModel model;
  DiagnosticsReport diagnostics;
  TruncatedSvd svd;
};

Index resolve_depth(const MarkovSequence& markov, Index depth);

/// Truncated SVD of H_s with the selected method; timings go to *timings.
TruncatedSvd hankel_svd(const MarkovSequence& markov, Index s, const IdentifyOptions& opt,
                        StageTimings* timings = nullptr);

Identification identify(const MarkovSequence& markov, const IdentifyOptions& opt);

/// sin(theta_max) proxy for randomized factors: the residual bound with the
/// gap sigma_r - sigma_{r+1} of the sketch, capped at 1. Absent without a gap.
std::optional<double> estimate_sin_theta(const MarkovSequence& markov, Index s,
                                         const TruncatedSvd& svd, const IdentifyOptions& opt,
                                         double* residual_bound, double* gap);

}  // namespace sysid
