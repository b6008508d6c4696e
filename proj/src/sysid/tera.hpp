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

#include <optional>
#include <string>
#include <vector>

#include "sysid/identify.hpp"

namespace sysid {

struct SideMatrices {
  Matrix wide;  // H_w = [h_1 ... h_{2s-1}], ell x m(2s-1)
  Matrix tall;  // H_e = [h_1; ...; h_{2s-1}], ell(2s-1) x m
};

/// Concatenations of h_1..h_{2s-1}; depth 0 selects markov.max_depth().
SideMatrices build_side_matrices(const MarkovSequence& markov, Index s = 0);

/// #{k : sigma_k >= epsilon * sigma_1}, at least 1. Ties are kept.
Index choose_ranks(const Vector& sigma, double epsilon, std::vector<std::string>* warnings = nullptr);

struct TangentialProjectors {
  Matrix W1;  // ell x ell', orthonormal columns
  Matrix W2;  // m x m', orthonormal columns
  Vector sigma_w;
  Vector sigma_e;
  std::optional<double> epsilon;
  std::vector<std::string> warnings;

  Index lp() const { return W1.cols(); }
  Index mp() const { return W2.cols(); }
};

struct ProjectorSpec {
  std::optional<double> epsilon;
  std::optional<Index> lp;
  std::optional<Index> mp;
};

/// W1 = leading left singular vectors of H_w, W2 = leading right singular
/// vectors of H_e. Explicit lp/mp take precedence over epsilon per side.
TangentialProjectors build_projectors(const MarkovSequence& markov, const ProjectorSpec& spec,
                                      Index s = 0);

/// h~_k = W1^T h_k W2 for every stored block.
MarkovSequence project_markov(const MarkovSequence& markov, const TangentialProjectors& proj);

enum class TeraBackend {
  full,        // TERA
  randomized,  // RandTERA
};

struct TeraOptions {
  ProjectorSpec projectors{0.01, std::nullopt, std::nullopt};
  TeraBackend backend = TeraBackend::randomized;
  Index rank = 1;
  Index depth = 0;
  Index oversampling = 20;
  Index power_iters = 1;
  std::uint64_t seed = 0;
  Formulation formulation = Formulation::standard;
  double max_dense_entries = kDefaultMaxDenseEntries;
  HankelOperatorOptions op;
  AssumptionThresholds thresholds;
};

struct TeraIdentification {
  IdentifiedModel model;
  DiagnosticsReport diagnostics;
  TruncatedSvd svd;  // of the projected Hankel matrix
  TangentialProjectors projectors;
};

TeraIdentification randtera(const MarkovSequence& markov, const TeraOptions& opt);

}  // namespace sysid
