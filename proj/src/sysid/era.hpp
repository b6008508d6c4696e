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
#include <optional>
#include <string>
#include <vector>

#include "sysid/hankel.hpp"
#include "sysid/numeric.hpp"
#include "sysid/rsvd.hpp"
#include "sysid/systems.hpp"

namespace sysid {

enum class Formulation { standard, balanced };

const char* to_string(Formulation f);
Formulation formulation_from_string(const std::string& name);

struct ModelProvenance {
  std::string method;
  std::optional<std::uint64_t> seed;
  Index r = 0;
  Index rho = 0;
  Index q = 0;
  Index s = 0;
};

/// Input/output compression used by tangential identification.
struct TangentialInfo {
  std::optional<double> epsilon;
  Index lp = 0;
  Index mp = 0;
  Vector sigma_w;
  Vector sigma_e;
};

struct IdentifiedModel {
  StateSpace ss;
  Vector sigma;
  Formulation formulation = Formulation::standard;
  /// False when the source sequence started at h_1 and D was set to zero.
  bool feedthrough_known = true;
  ModelProvenance provenance;
  std::optional<TangentialInfo> tangential;
  std::vector<std::string> warnings;

  Index order() const { return ss.order(); }
};

/// Shifted row blocks of U_r: first drops the last ell rows, last drops the
/// first ell rows.
struct UpsilonPair {
  Matrix first;
  Matrix last;
};

UpsilonPair partition_singular_vectors(const Matrix& u, Index ell, Index s);

/// A_r = pinv(Upsilon_f) Upsilon_l, C_r = first ell rows of U_r,
/// B_r = first m columns of Sigma_r V_r^T, D_r = h_0.
IdentifiedModel recover_system(const TruncatedSvd& svd, const MarkovSequence& markov, Index s);

/// The same realization in the Sigma^{1/2}-balanced coordinates.
IdentifiedModel recover_system_balanced(const TruncatedSvd& svd, const MarkovSequence& markov,
                                        Index s);

IdentifiedModel recover(const TruncatedSvd& svd, const MarkovSequence& markov, Index s,
                        Formulation formulation);

/// D, CB, CAB, ..., CA^{K-2}B.
MarkovSequence impulse_response(const IdentifiedModel& model, Index count);

}  // namespace sysid
