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

#include "sysid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sysid {

SpectrumSet spectrum_of(const Matrix& a, std::string label) {
  return {eig(a).values, std::move(label)};
}

double spectral_variation(const ComplexVector& b, const ComplexVector& a) {
  require(a.size() > 0 && b.size() > 0, ErrorCode::invalid_input,
          "spectral_variation: empty spectrum");
  require(a.allFinite() && b.allFinite(), ErrorCode::invalid_input,
          "spectral_variation: non-finite eigenvalue");
  double worst = 0.0;
  for (Index j = 0; j < b.size(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < a.size(); ++i) nearest = std::min(nearest, std::abs(a(i) - b(j)));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double spectral_variation(const SpectrumSet& b, const SpectrumSet& a) {
  return spectral_variation(b.values, a.values);
}

double hausdorff(const ComplexVector& a, const ComplexVector& b) {
  return std::max(spectral_variation(a, b), spectral_variation(b, a));
}

double hausdorff(const SpectrumSet& a, const SpectrumSet& b) { return hausdorff(a.values, b.values); }

Vector markov_relative_error(const StateSpace& ref, const StateSpace& test, Index count,
                             std::vector<std::string>* warnings) {
  ref.validate();
  test.validate();
  require(count >= 1, ErrorCode::config, "markov_relative_error: K must be >= 1");
  require(ref.inputs() == test.inputs() && ref.outputs() == test.outputs(), ErrorCode::dimension,
          "markov_relative_error: models have different input/output dimensions");
  Vector out(count);
  Matrix x_ref = ref.A * ref.B;
  Matrix x_test = test.A * test.B;
  Index zero_blocks = 0;
  for (Index k = 1; k <= count; ++k) {
    const Matrix h_ref = ref.C * x_ref;
    const double denom = norm2(h_ref);
    if (denom == 0.0) {
      out(k - 1) = std::numeric_limits<double>::quiet_NaN();
      ++zero_blocks;
    } else {
      out(k - 1) = norm2(h_ref - test.C * x_test) / denom;
    }
    if (k < count) {
      x_ref = ref.A * x_ref;
      x_test = test.A * x_test;
    }
  }
  if (zero_blocks > 0 && warnings)
    warnings->push_back("markov_relative_error: " + std::to_string(zero_blocks) +
                        " reference block(s) have zero norm; entries set to NaN");
  return out;
}

CanonicalAngles canonical_angles(const Matrix& u, const Matrix& u_hat) {
  require(u.rows() == u_hat.rows() && u.cols() == u_hat.cols(), ErrorCode::dimension,
          "canonical_angles: subspace bases must have equal shapes");
  require(u.cols() >= 1, ErrorCode::dimension, "canonical_angles: empty basis");
  const Index r = u.cols();
  const Matrix eye = Matrix::Identity(r, r);
  require((u.transpose() * u - eye).norm() <= 1e-8 && (u_hat.transpose() * u_hat - eye).norm() <= 1e-8,
          ErrorCode::invalid_input, "canonical_angles: bases must be orthonormal");
  const Matrix cross = u.transpose() * u_hat;
  const SvdFactors f = full_svd(cross);
  CanonicalAngles out;
  // Sines from the component of U_hat outside range(U); sqrt(1 - cos^2)
  // loses everything below sqrt(machine epsilon).
  const Vector sines = singular_values(u_hat - u * cross);
  out.sin_theta = Vector::Zero(r);
  for (Index i = 0; i < std::min(r, sines.size()); ++i) out.sin_theta(i) = std::min(1.0, sines(i));
  out.sin_theta_max = out.sin_theta(0);
  out.Z = f.U * f.V.transpose();
  return out;
}

double eta(double sin_theta_max, double upsilon_pinv_norm) {
  require(sin_theta_max >= 0.0 && upsilon_pinv_norm >= 0.0, ErrorCode::invalid_input,
          "eta: inputs must be nonnegative");
  return 2.0 * sin_theta_max * upsilon_pinv_norm;
}

std::optional<double> theorem_bound(double kappa_w, double upsilon_pinv_norm,
                                    double sin_theta_max) {
  require(kappa_w >= 0.0, ErrorCode::invalid_input, "theorem_bound: kappa must be nonnegative");
  const double e = eta(sin_theta_max, upsilon_pinv_norm);
  if (!(e < 1.0) || !std::isfinite(kappa_w)) return std::nullopt;
  return kappa_w * e * (1.0 + std::numbers::sqrt2 * upsilon_pinv_norm / (1.0 - e));
}

double residual_sin_theta_bound(const LinearOperator& op, const TruncatedSvd& svd, double delta) {
  require(delta > 0.0, ErrorCode::invalid_input, "residual_sin_theta_bound: delta must be positive");
  require(svd.U.rows() == op.rows() && svd.V.rows() == op.cols(), ErrorCode::dimension,
          "residual_sin_theta_bound: factors do not match the operator");
  const Matrix right = op.matmat(svd.V) - svd.U * svd.sigma.asDiagonal();
  const Matrix left = op.rmatmat(svd.U) - svd.V * svd.sigma.asDiagonal();
  return std::max(norm2(right), norm2(left)) / delta;
}

double eigenvector_condition(const Matrix& a) {
  if (a.rows() == 0) return 1.0;
  const ComplexMatrix w = eig(a).vectors;
  Eigen::JacobiSVD<ComplexMatrix> svd(w);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

double upsilon_pinv_norm(const Matrix& upsilon_f) {
  const Vector sv = singular_values(upsilon_f);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / smin;
}

AssumptionReport assumption_audit(const UpsilonPair& upsilon, const Matrix& a_r,
                                  const MarkovSequence& markov, Index s,
                                  std::optional<double> sin_theta_max,
                                  const AssumptionThresholds& thresholds) {
  require(2 * s <= markov.size(), ErrorCode::dimension,
          "assumption_audit: sequence too short for depth s");
  AssumptionReport rep;
  rep.kappa_max = thresholds.kappa_max;
  rep.kappa_w = eigenvector_condition(a_r);
  rep.a1 = std::isfinite(rep.kappa_w) && rep.kappa_w < thresholds.kappa_max;

  const Vector sv = singular_values(upsilon.first);
  rep.upsilon_sigma_min = sv(sv.size() - 1);
  rep.upsilon_cutoff = static_cast<double>(std::max(upsilon.first.rows(), upsilon.first.cols())) *
                       std::numeric_limits<double>::epsilon() * sv(0);
  rep.a2 = rep.upsilon_sigma_min > rep.upsilon_cutoff;

  double peak = 0.0;
  for (Index k = 1; k <= 2 * s - 1; ++k) peak = std::max(peak, markov[k].norm());
  rep.tail_ratio_max = thresholds.tail_ratio_max;
  rep.tail_ratio = peak > 0.0 ? markov[2 * s - 1].norm() / peak
                              : std::numeric_limits<double>::quiet_NaN();
  rep.a3 = peak > 0.0 && rep.tail_ratio < thresholds.tail_ratio_max;

  if (sin_theta_max) {
    rep.a4_evaluated = true;
    rep.eta = eta(*sin_theta_max, rep.a2 ? 1.0 / rep.upsilon_sigma_min
                                         : std::numeric_limits<double>::infinity());
    rep.a4 = rep.eta < 1.0;
  }
  return rep;
}

DiagnosticsReport diagnose(const IdentifiedModel& model, const TruncatedSvd& svd,
                           const MarkovSequence& markov, Index s,
                           std::optional<double> sin_theta_max, std::string sin_theta_source,
                           const AssumptionThresholds& thresholds) {
  DiagnosticsReport d;
  d.sigma = svd.sigma;
  d.sin_theta_max = sin_theta_max;
  d.sin_theta_source = sin_theta_max ? std::move(sin_theta_source) : "unavailable";

  const UpsilonPair ups = partition_singular_vectors(svd.U, markov.ell(), s);
  d.upsilon_pinv_norm = upsilon_pinv_norm(ups.first);
  d.kappa_w = eigenvector_condition(model.ss.A);
  d.spectral_radius = spectral_radius(model.ss.A);
  if (sin_theta_max && std::isfinite(d.upsilon_pinv_norm)) {
    d.eta = eta(*sin_theta_max, d.upsilon_pinv_norm);
    d.theorem_bound = theorem_bound(d.kappa_w, d.upsilon_pinv_norm, *sin_theta_max);
  }
  d.stability_margin = 1.0 - d.spectral_radius - d.theorem_bound.value_or(0.0);
  d.assumptions = assumption_audit(ups, model.ss.A, markov, s, sin_theta_max, thresholds);

  if (!d.assumptions.a1) d.warnings.push_back("A1: eigenvector matrix of A_r is ill-conditioned");
  if (!d.assumptions.a2) d.warnings.push_back("A2: Upsilon_f is rank deficient");
  if (!d.assumptions.a3) d.warnings.push_back("A3: Markov parameters have not decayed by h_{2s-1}");
  if (d.assumptions.a4_evaluated && !d.assumptions.a4) d.warnings.push_back("A4: eta >= 1, no bound");
  if (!d.assumptions.a4_evaluated) d.warnings.push_back("A4: sin(theta_max) unavailable");
  if (d.spectral_radius >= 1.0) d.warnings.push_back("identified model is not stable");
  return d;
}

StabilityResult stability_check(const Matrix& a_hat, const DiagnosticsReport& diagnostics,
                                std::optional<double> reference_radius) {
  StabilityResult out;
  const double rho_hat = spectral_radius(a_hat);
  out.stable_identified = rho_hat < 1.0;
  out.margin = 1.0 - rho_hat;
  out.reference_used = reference_radius.has_value();
  const double rho_ref = reference_radius.value_or(rho_hat);
  out.certified = diagnostics.theorem_bound.has_value() && *diagnostics.theorem_bound < 1.0 - rho_ref;
  return out;
}

}  // namespace sysid
