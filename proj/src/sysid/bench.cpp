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

#include "sysid/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sysid/io.hpp"

namespace sysid {

double estimate_peak_bytes(SvdMethod method, Index s, Index ell, Index m, Index k) {
  const double rows = static_cast<double>(s * ell), cols = static_cast<double>(s * m);
  const double kk = static_cast<double>(k);
  switch (method) {
    case SvdMethod::full_svd: {
      // H, U, V^T and the dgesdd workspace (about 4 min^2 + 7 min).
      const double mn = std::min(rows, cols);
      return 8.0 * (rows * cols + rows * mn + mn * cols + 4.0 * mn * mn + 7.0 * mn);
    }
    case SvdMethod::rsvd_dense:
      return 8.0 * (rows * cols + 3.0 * (rows + cols) * kk);
    case SvdMethod::rsvd_hankel: {
      // Spectra of the ell * m scalar Hankel blocks plus the sketch blocks.
      const double spectra = static_cast<double>(ell * m) * (static_cast<double>(s) + 1.0) * 16.0;
      return spectra + 8.0 * 3.0 * (rows + cols) * kk;
    }
  }
  return 0.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::invalid_input,
          "loglog_slope: need at least two points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, ErrorCode::invalid_input, "loglog_slope: values must be positive");
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  require(sxx > 0.0, ErrorCode::invalid_input, "loglog_slope: x values must differ");
  return sxy / sxx;
}

BenchResult run_bench(const BenchConfig& cfg) {
  require(!cfg.s_list.empty() && !cfg.methods.empty(), ErrorCode::config,
          "bench: s-list and methods must be nonempty");
  require(cfg.repeats >= 1, ErrorCode::config, "bench: repeats must be >= 1");
  const Index s_max = *std::max_element(cfg.s_list.begin(), cfg.s_list.end());
  require(*std::min_element(cfg.s_list.begin(), cfg.s_list.end()) >= 2, ErrorCode::config,
          "bench: every s must be >= 2");

  RandomSystemOptions sys_opt;
  sys_opt.n = cfg.rank;
  sys_opt.m = cfg.m;
  sys_opt.l = cfg.ell;
  sys_opt.seed = cfg.seed;
  const MarkovSequence markov = simulate_impulse(random_stable_system(sys_opt), 2 * s_max);

  BenchResult result;
  for (SvdMethod method : cfg.methods) {
    std::vector<double> xs, ys;
    for (Index s : cfg.s_list) {
      BenchRecord rec;
      rec.method = to_string(method);
      rec.s = s;
      rec.ell = cfg.ell;
      rec.m = cfg.m;
      rec.r = cfg.rank;
      rec.seed = cfg.seed;
      if (method != SvdMethod::full_svd) {
        rec.rho = cfg.oversampling;
        rec.q = cfg.power_iters;
      }
      rec.peak_memory_bytes = estimate_peak_bytes(method, s, cfg.ell, cfg.m, cfg.rank + cfg.oversampling);
      if (method != SvdMethod::rsvd_hankel && s * std::max(cfg.ell, cfg.m) > cfg.max_dense_dim) {
        rec.skipped = true;
        rec.note = "dense dimension above cap " + std::to_string(cfg.max_dense_dim);
        result.records.push_back(rec);
        continue;
      }
      IdentifyOptions opt;
      opt.method = method;
      opt.rank = cfg.rank;
      opt.depth = s;
      opt.oversampling = cfg.oversampling;
      opt.power_iters = cfg.power_iters;
      opt.seed = cfg.seed;
      opt.op.threads = cfg.threads;
      opt.max_dense_entries = std::numeric_limits<double>::infinity();
      for (Index rep = 0; rep < cfg.repeats; ++rep) {
        StageTimings t;
        const TruncatedSvd svd = hankel_svd(markov, s, opt, &t);
        const auto start = std::chrono::steady_clock::now();
        (void)recover(svd, markov, s, opt.formulation);
        t.recovery = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rec.operator_build += t.operator_build;
        rec.svd += t.svd;
        rec.recovery += t.recovery;
      }
      const double reps = static_cast<double>(cfg.repeats);
      rec.repeats = cfg.repeats;
      rec.operator_build /= reps;
      rec.svd /= reps;
      rec.recovery /= reps;
      xs.push_back(static_cast<double>(s));
      ys.push_back(std::max(rec.svd, 1e-9));
      result.records.push_back(rec);
    }
    BenchSlope slope;
    slope.method = to_string(method);
    slope.points = static_cast<Index>(xs.size());
    slope.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
    result.slopes.push_back(slope);
  }
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::string out;
  for (const auto& sl : result.slopes)
    out += "# slope method=" + sl.method + " points=" + std::to_string(sl.points) +
           " value=" + format_double(sl.slope) + "\n";
  out += "method,s,ell,m,r,rho,q,seed,repeats,operator_build_s,svd_s,recovery_s,peak_memory_bytes,skipped,note\n";
  for (const auto& r : result.records) {
    out += r.method + "," + std::to_string(r.s) + "," + std::to_string(r.ell) + "," +
           std::to_string(r.m) + "," + std::to_string(r.r) + "," + std::to_string(r.rho) + "," +
           std::to_string(r.q) + "," + std::to_string(r.seed) + "," + std::to_string(r.repeats) + "," +
           format_double(r.operator_build) + "," + format_double(r.svd) + "," +
           format_double(r.recovery) + "," + format_double(r.peak_memory_bytes) + "," +
           (r.skipped ? "1" : "0") + "," + r.note + "\n";
  }
  return out;
}

}  // namespace sysid
