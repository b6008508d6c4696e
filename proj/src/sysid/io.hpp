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
#include <vector>

#include "sysid/era.hpp"
#include "sysid/metrics.hpp"
#include "sysid/systems.hpp"

namespace sysid {

inline constexpr int kFormatVersion = 1;

std::string system_to_json(const LtiSystem& sys);
LtiSystem system_from_json(const std::string& text);
void save_system(const std::string& path, const LtiSystem& sys);
LtiSystem load_system(const std::string& path);

std::string model_to_json(const IdentifiedModel& model);
IdentifiedModel model_from_json(const std::string& text);
void save_model(const std::string& path, const IdentifiedModel& model);
IdentifiedModel load_model(const std::string& path);

/// Non-finite numbers are written as null and listed under "warnings".
std::string diagnostics_to_json(const DiagnosticsReport& d);
DiagnosticsReport diagnostics_from_json(const std::string& text);
void save_diagnostics(const std::string& path, const DiagnosticsReport& d);

/// Binary payload at `path` plus JSON sidecar at `path + ".json"`. The
/// payload holds num_params * ell * m little-endian doubles, h_0 first, each
/// block row-major.
void save_markov(const std::string& path, const MarkovSequence& markov);
/// Accepts the payload path or the sidecar path; a ".csv" suffix selects the
/// CSV reader.
MarkovSequence load_markov(const std::string& path);

/// "# sysid-markov ell=<l> m=<m> [dt=<dt>]" then one line of ell * m values
/// per block, row-major.
void save_markov_csv(const std::string& path, const MarkovSequence& markov);
MarkovSequence load_markov_csv(const std::string& path);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines without the marker
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma-separated fields, no quoting. Blank lines are skipped; lines
/// starting with '#' are collected as comments. With has_header the first
/// data line becomes the header.
CsvTable parse_csv(const std::string& text, bool has_header);

/// Shortest decimal form that parses back to the same double; "nan", "inf".
std::string format_double(double x);
double parse_double(const std::string& field);

struct CompareReport {
  double hausdorff = 0.0;
  double sv_a_in_b = 0.0;  // sv(psi(A), psi(B))
  double sv_b_in_a = 0.0;  // sv(psi(B), psi(A))
  Vector markov_error;     // M_1..M_K of model B against reference model A
  std::vector<std::string> warnings;
};

CompareReport compare_models(const IdentifiedModel& a, const IdentifiedModel& b, Index count);
std::string compare_report_csv(const CompareReport& report);
CompareReport parse_compare_report(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sysid
