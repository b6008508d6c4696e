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
#include <string>
#include <vector>

#include "sysid/identify.hpp"

namespace sysid {

struct BenchRecord {
  std::string method;
  Index s = 0;
  Index ell = 0;
  Index m = 0;
  Index r = 0;
  Index rho = 0;
  Index q = 0;
  std::uint64_t seed = 0;
  Index repeats = 0;
  /// Mean wall-clock seconds per stage over the repeats.
  double operator_build = 0.0;
  double svd = 0.0;
  double recovery = 0.0;
  double peak_memory_bytes = 0.0;
  bool skipped = false;
  std::string note;
};

struct BenchSlope {
  std::string method;
  double slope = 0.0;  // of log(svd seconds) against log(s)
  Index points = 0;
};

struct BenchConfig {
  std::vector<Index> s_list{512, 1024, 2048, 4096};
  std::vector<SvdMethod> methods{SvdMethod::full_svd, SvdMethod::rsvd_hankel};
  Index ell = 4;
  Index m = 4;
  Index rank = 20;
  Index oversampling = 20;
  Index power_iters = 1;
  std::uint64_t seed = 0;
  Index repeats = 3;
  /// Dense methods are skipped when s * max(ell, m) exceeds this.
  Index max_dense_dim = kDefaultDenseAssemblyDim;
  unsigned threads = 1;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<BenchSlope> slopes;
};

/// Rough peak working-set size of one identification, in bytes.
double estimate_peak_bytes(SvdMethod method, Index s, Index ell, Index m, Index k);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Times identification of a random stable system of order `rank` over the
/// s-list. Slopes are fitted per method over the non-skipped rows.
BenchResult run_bench(const BenchConfig& cfg);

std::string bench_csv(const BenchResult& result);

}  // namespace sysid
