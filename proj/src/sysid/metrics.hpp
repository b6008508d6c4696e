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

#include "sysid/era.hpp"
#include "sysid/hankel.hpp"
#include "sysid/linear_operator.hpp"
#include "sysid/numeric.hpp"
#include "sysid/rsvd.hpp"

namespace sysid {

struct SpectrumSet {
  ComplexVector values;
  std::string label;
};

SpectrumSet spectrum_of(const Matrix& a, std::string label = {});

/// sv(psi(B), psi(A)) = max over lambda in B of min over mu in A |lambda - mu|.
/// Note the argument order: the first set is the one being measured.
double spectral_variation(const ComplexVector& b, const ComplexVector& a);
double spectral_variation(const SpectrumSet& b, const SpectrumSet& a);

double hausdorff(const ComplexVector& a, const ComplexVector& b);
double hausdorff(const SpectrumSet& a, const SpectrumSet& b);

/// M_k = ||C A^k B - C' A'^k B'||_2 / ||C A^k B||_2 for k = 1..K. A zero
/// reference block yields NaN and a message in *warnings.
Vector markov_relative_error(const StateSpace& ref, const StateSpace& test, Index count,
                             std::vector<std::string>* warnings = nullptr);

struct CanonicalAngles {
  Vector sin_theta;  // descending
  double sin_theta_max = 0.0;
  /// Orthogonal Procrustes factor Z = P Q^T from U^T U_hat = P cos(Theta) Q^T.
  Matrix Z;
};

CanonicalAngles canonical_angles(const Matrix& u, const Matrix& u_hat);

/// 2 sin(theta_max) ||Upsilon_f^+||_2.
double eta(double sin_theta_max, double upsilon_pinv_norm);

/// kappa eta (1 + sqrt(2) ||Upsilon_f^+|| / (1 - eta)), absent when eta >= 1.
std::optional<double> theorem_bound(double kappa_w, double upsilon_pinv_norm,
                                    double sin_theta_max);

/// max(||H V - U Sigma||_2, ||H^T U - V Sigma||_2) / delta.
double residual_sin_theta_bound(const LinearOperator& op, const TruncatedSvd& svd, double delta);

/// ||W||_2 ||W^-1||_2 for the unit-column eigenvector matrix of a. Infinite
/// when W is numerically singular.
double eigenvector_condition(const Matrix& a);

/// 1 / sigma_min(Upsilon_f); infinite for a singular block.
double upsilon_pinv_norm(const Matrix& upsilon_f);

struct AssumptionThresholds {
  double kappa_max = 1e8;
  double tail_ratio_max = 1e-3;
};

struct AssumptionReport {
  bool a1 = false;  // kappa_2(W) finite and below kappa_max
  double kappa_w = 0.0;
  double kappa_max = 0.0;
  bool a2 = false;  // sigma_min(Upsilon_f) above the pinv cutoff
  double upsilon_sigma_min = 0.0;
  double upsilon_cutoff = 0.0;
  bool a3 = false;  // ||h_{2s-1}||_F / max_k ||h_k||_F below tail_ratio_max
  double tail_ratio = 0.0;
  double tail_ratio_max = 0.0;
  bool a4 = false;  // eta < 1
  bool a4_evaluated = false;
  double eta = 0.0;

  bool all() const { return a1 && a2 && a3 && a4; }
};

AssumptionReport assumption_audit(const UpsilonPair& upsilon, const Matrix& a_r,
                                  const MarkovSequence& markov, Index s,
                                  std::optional<double> sin_theta_max,
                                  const AssumptionThresholds& thresholds = {});

struct StageTimings {
  double operator_build = 0.0;
  double svd = 0.0;
  double recovery = 0.0;
};

struct DiagnosticsReport {
  Vector sigma;
  std::optional<double> sin_theta_max;
  /// "exact" (full SVD), "residual-estimate", "supplied", or "unavailable".
  std::string sin_theta_source = "unavailable";
  std::optional<double> eta;
  double upsilon_pinv_norm = 0.0;
  double kappa_w = 0.0;
  std::optional<double> theorem_bound;
  double spectral_radius = 0.0;
  /// 1 - rho(A_r) - theorem_bound, or 1 - rho(A_r) without a bound.
  double stability_margin = 0.0;
  std::optional<double> residual_bound;
  std::optional<double> gap;
  AssumptionReport assumptions;
  StageTimings timings;
  std::vector<std::string> warnings;
};

/// Fills every field of the report except the timings.
DiagnosticsReport diagnose(const IdentifiedModel& model, const TruncatedSvd& svd,
                           const MarkovSequence& markov, Index s,
                           std::optional<double> sin_theta_max, std::string sin_theta_source,
                           const AssumptionThresholds& thresholds = {});

struct StabilityResult {
  bool stable_identified = false;
  double margin = 0.0;
  bool certified = false;
  /// False when the identified radius stood in for the reference one.
  bool reference_used = false;
};

StabilityResult stability_check(const Matrix& a_hat, const DiagnosticsReport& diagnostics,
                                std::optional<double> reference_radius = std::nullopt);

}  // namespace sysid
