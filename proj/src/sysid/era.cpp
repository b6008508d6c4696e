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

#include "sysid/era.hpp"

#include <cmath>
#include <limits>

namespace sysid {

const char* to_string(Formulation f) {
  return f == Formulation::balanced ? "balanced" : "standard";
}

Formulation formulation_from_string(const std::string& name) {
  if (name == "standard") return Formulation::standard;
  if (name == "balanced") return Formulation::balanced;
  fail(ErrorCode::config, "unknown formulation '" + name + "'");
}

UpsilonPair partition_singular_vectors(const Matrix& u, Index ell, Index s) {
  require(s >= 2, ErrorCode::config, "partition_singular_vectors: s must be >= 2");
  require(ell >= 1, ErrorCode::config, "partition_singular_vectors: ell must be >= 1");
  require(u.rows() == s * ell, ErrorCode::dimension,
          "partition_singular_vectors: U must have s * ell rows");
  const Index rows = (s - 1) * ell;
  return {u.topRows(rows), u.middleRows(ell, rows)};
}

namespace {

void check_svd(const TruncatedSvd& svd, const MarkovSequence& markov, Index s) {
  require(svd.rank() >= 1, ErrorCode::config, "recover_system: rank must be >= 1");
  require(s >= 2, ErrorCode::config, "recover_system: s must be >= 2");
  require(svd.U.rows() == s * markov.ell() && svd.V.rows() == s * markov.m(), ErrorCode::dimension,
          "recover_system: SVD factors do not match the s * ell x s * m Hankel matrix");
  require(svd.U.cols() == svd.rank() && svd.V.cols() == svd.rank(), ErrorCode::dimension,
          "recover_system: inconsistent SVD factor widths");
  require(svd.rank() <= std::min((s - 1) * markov.ell(), s * markov.m()), ErrorCode::config,
          "recover_system: rank exceeds min((s - 1) * ell, s * m)");
  require(svd.sigma.allFinite() && svd.sigma.minCoeff() >= 0.0, ErrorCode::invalid_input,
          "recover_system: singular values must be finite and nonnegative");
  require(svd.sigma(0) > 0.0, ErrorCode::numerical,
          "recover_system: all singular values are zero (rank-deficient Hankel matrix)");
}

IdentifiedModel assemble(const TruncatedSvd& svd, const MarkovSequence& markov, Index s,
                         Formulation formulation) {
  check_svd(svd, markov, s);
  const Index ell = markov.ell();
  const Index m = markov.m();
  const UpsilonPair ups = partition_singular_vectors(svd.U, ell, s);

  IdentifiedModel model;
  const Vector f_sigma = singular_values(ups.first);
  const double cutoff = static_cast<double>(std::max(ups.first.rows(), ups.first.cols())) *
                        std::numeric_limits<double>::epsilon() * f_sigma(0);
  if (f_sigma(f_sigma.size() - 1) <= cutoff)
    model.warnings.push_back("Upsilon_f is rank deficient; A_r is a least-squares best effort");

  const Matrix a = pinv(ups.first) * ups.last;
  if (formulation == Formulation::standard) {
    model.ss.A = a;
    model.ss.C = svd.U.topRows(ell);
    model.ss.B = svd.sigma.asDiagonal() * svd.V.topRows(m).transpose();
  } else {
    require(svd.sigma.minCoeff() > 0.0, ErrorCode::numerical,
            "recover_system_balanced: zero retained singular value");
    const Vector root = svd.sigma.cwiseSqrt();
    const Vector inv_root = root.cwiseInverse();
    model.ss.A = inv_root.asDiagonal() * a * root.asDiagonal();
    model.ss.C = svd.U.topRows(ell) * root.asDiagonal();
    model.ss.B = root.asDiagonal() * svd.V.topRows(m).transpose();
  }
  model.ss.D = markov[0];
  model.sigma = svd.sigma;
  model.formulation = formulation;
  model.feedthrough_known = markov.has_feedthrough();
  if (!markov.has_feedthrough()) model.warnings.push_back("sequence starts at h_1; D set to zero");
  model.provenance.r = svd.rank();
  model.provenance.s = s;
  return model;
}

}  // namespace

IdentifiedModel recover_system(const TruncatedSvd& svd, const MarkovSequence& markov, Index s) {
  return assemble(svd, markov, s, Formulation::standard);
}

IdentifiedModel recover_system_balanced(const TruncatedSvd& svd, const MarkovSequence& markov,
                                        Index s) {
  return assemble(svd, markov, s, Formulation::balanced);
}

IdentifiedModel recover(const TruncatedSvd& svd, const MarkovSequence& markov, Index s,
                        Formulation formulation) {
  return assemble(svd, markov, s, formulation);
}

MarkovSequence impulse_response(const IdentifiedModel& model, Index count) {
  model.ss.validate();
  return MarkovSequence(model.ss.outputs(), model.ss.inputs(), impulse_blocks(model.ss, count));
}

}  // namespace sysid
