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

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sysid/sysid.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Failure {
  int code;
};

int exit_code_for(sysid_status st) {
  switch (st) {
    case SYSID_OK: return 0;
    case SYSID_ERR_NUMERICAL: return kExitNumerical;
    case SYSID_ERR_IO:
    case SYSID_ERR_CORRUPT: return kExitIo;
    case SYSID_ERR_INTERNAL: return 1;
    default: return kExitValidation;
  }
}

void check(sysid_status st, const std::string& what) {
  if (st == SYSID_OK) return;
  std::fprintf(stderr, "sysid: %s: %s (%s)\n", what.c_str(), sysid_last_error(),
               sysid_status_string(st));
  if (st == SYSID_ERR_SIZE_CAP)
    std::fprintf(stderr, "sysid: the dense Hankel matrix is too large; use --method rsvd-h\n");
  throw Failure{exit_code_for(st)};
}

void warn(const std::string& msg) { std::fprintf(stderr, "sysid: warning: %s\n", msg.c_str()); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind = "random";
  std::optional<int64_t> n, m, l;
  uint64_t seed = 0;
  std::optional<double> dt, rho_max, channel_decay, radius_min, radius_max, diffusivity;
  bool identity_output = false;
  std::string out;
};

int run_gen(const GenArgs& a) {
  static const std::map<std::string, sysid_system_kind> kinds{
      {"random", SYSID_SYSTEM_RANDOM}, {"heat", SYSID_SYSTEM_HEAT}, {"oscillatory", SYSID_SYSTEM_OSCILLATORY}};
  sysid_gen_options opt;
  sysid_gen_options_init(&opt, kinds.at(a.kind));
  if (a.n) opt.n = *a.n;
  if (a.m) opt.m = *a.m;
  if (a.l) opt.l = *a.l;
  opt.seed = a.seed;
  if (a.dt) opt.dt = *a.dt;
  if (a.rho_max) opt.rho_max = *a.rho_max;
  if (a.channel_decay) opt.channel_decay = *a.channel_decay;
  if (a.radius_min) opt.radius_min = *a.radius_min;
  if (a.radius_max) opt.radius_max = *a.radius_max;
  if (a.diffusivity) opt.diffusivity = *a.diffusivity;
  opt.identity_output = a.identity_output ? 1 : 0;

  sysid_system* sys = nullptr;
  check(sysid_system_generate(&opt, &sys), "generate");
  int64_t n = 0, m = 0, l = 0;
  sysid_system_dims(sys, &n, &m, &l);
  const sysid_status st = sysid_system_save(sys, a.out.c_str());
  sysid_system_free(sys);
  check(st, "write " + a.out);

  std::printf("%-12s | %8s | %8s | %8s\n", "Problem", "n", "m", "l");
  std::printf("%-12s | %8lld | %8lld | %8lld\n", a.kind.c_str(), static_cast<long long>(n),
              static_cast<long long>(m), static_cast<long long>(l));
  return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string system;
  int64_t samples = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  sysid_system* sys = nullptr;
  check(sysid_system_load(a.system.c_str(), &sys), "read " + a.system);
  sysid_markov* mk = nullptr;
  sysid_status st = sysid_markov_simulate(sys, a.samples, &mk);
  sysid_system_free(sys);
  check(st, "simulate");
  const bool csv = a.out.size() >= 4 && a.out.compare(a.out.size() - 4, 4, ".csv") == 0;
  st = csv ? sysid_markov_save_csv(mk, a.out.c_str()) : sysid_markov_save(mk, a.out.c_str());
  sysid_markov_free(mk);
  check(st, "write " + a.out);
  return 0;
}

// ---- identify --------------------------------------------------------------

struct IdentifyArgs {
  std::string markov;
  std::string method = "rsvd-h";
  int64_t rank = 0;
  int64_t depth = 0;
  int64_t oversample = 20;
  int64_t power_iters = 1;
  std::optional<double> eps;
  std::optional<int64_t> lp, mp;
  uint64_t seed = 0;
  std::string formulation = "standard";
  std::string out = "model.json";
  std::string diag;
  bool strict = false;
  unsigned threads = 1;
  double max_dense_entries = 1e8;
  bool padded_fft = false;
};

int run_identify(const IdentifyArgs& a) {
  static const std::map<std::string, sysid_method> methods{
      {"full", SYSID_METHOD_FULL}, {"rsvd", SYSID_METHOD_RSVD}, {"rsvd-h", SYSID_METHOD_RSVD_H},
      {"tera", SYSID_METHOD_TERA}, {"randtera", SYSID_METHOD_RANDTERA}};
  sysid_identify_options opt;
  sysid_identify_options_init(&opt);
  opt.method = methods.at(a.method);
  const bool tangential = opt.method == SYSID_METHOD_TERA || opt.method == SYSID_METHOD_RANDTERA;
  if (!tangential && (a.eps || a.lp || a.mp))
    warn("--eps/--lp/--mp only apply to tera and randtera; flag ignored for --method " + a.method);
  if (opt.method == SYSID_METHOD_FULL && (a.seed != 0 || a.oversample != 20 || a.power_iters != 1))
    warn("--seed/--oversample/--power-iters have no effect with --method full");
  opt.rank = a.rank;
  opt.depth = a.depth;
  opt.oversampling = a.oversample;
  opt.power_iters = a.power_iters;
  opt.seed = a.seed;
  opt.balanced = a.formulation == "balanced";
  if (tangential) {
    if (a.eps) opt.epsilon = *a.eps;
    if (a.lp) opt.lp = *a.lp;
    if (a.mp) opt.mp = *a.mp;
  }
  opt.max_dense_entries = a.max_dense_entries;
  opt.threads = a.threads;
  opt.padded_fft = a.padded_fft ? 1 : 0;

  sysid_markov* mk = nullptr;
  check(sysid_markov_load(a.markov.c_str(), &mk), "read " + a.markov);
  sysid_model* model = nullptr;
  sysid_diagnostics* diag = nullptr;
  sysid_status st = sysid_identify(mk, &opt, &model, &diag);
  sysid_markov_free(mk);
  check(st, "identify");

  sysid_diagnostics_summary sum;
  sysid_diagnostics_summarize(diag, &sum);
  for (size_t i = 0; i < sum.warning_count; ++i) warn(sysid_diagnostics_warning(diag, i));

  st = sysid_model_save(model, a.out.c_str());
  if (st == SYSID_OK && !a.diag.empty()) st = sysid_diagnostics_save(diag, a.diag.c_str());
  sysid_model_free(model);
  sysid_diagnostics_free(diag);
  check(st, "write output");

  std::printf("order %lld  rho(A_r) %s  margin %s  eta %s  bound %s  svd %ss\n",
              static_cast<long long>(a.rank), fmt(sum.spectral_radius).c_str(),
              fmt(sum.stability_margin).c_str(), fmt(sum.eta).c_str(),
              fmt(sum.theorem_bound).c_str(), fmt(sum.time_svd).c_str());
  if (a.strict && (!sum.a2 || (sum.a4_evaluated && !sum.a4))) {
    std::fprintf(stderr, "sysid: --strict: assumption %s failed\n", !sum.a2 ? "A2" : "A4");
    return kExitNumerical;
  }
  return 0;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string a, b;
  int64_t count = 100;
  std::string out;
};

int run_compare(const CompareArgs& c) {
  sysid_model *a = nullptr, *b = nullptr;
  check(sysid_model_load(c.a.c_str(), &a), "read " + c.a);
  const sysid_status lb = sysid_model_load(c.b.c_str(), &b);
  if (lb != SYSID_OK) sysid_model_free(a);
  check(lb, "read " + c.b);
  double h = 0, ab = 0, ba = 0;
  std::vector<double> mk(static_cast<size_t>(std::max<int64_t>(c.count, 0)));
  const sysid_status st = sysid_compare(a, b, c.count, &h, &ab, &ba, mk.data(),
                                        c.out.empty() ? nullptr : c.out.c_str());
  sysid_model_free(a);
  sysid_model_free(b);
  check(st, "compare");
  double worst = 0.0;
  for (double x : mk)
    if (std::isfinite(x)) worst = std::max(worst, x);
  std::printf("hausdorff %s\nsv(A in B) %s\nsv(B in A) %s\nmax M_k %s\n", fmt(h).c_str(),
              fmt(ab).c_str(), fmt(ba).c_str(), fmt(worst).c_str());
  return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<int64_t> s_list{512, 1024, 2048, 4096};
  std::vector<std::string> methods{"full", "rsvd-h"};
  int64_t repeats = 3;
  int64_t l = 4, m = 4, rank = 20, oversample = 20, power_iters = 1;
  uint64_t seed = 0;
  int64_t max_dense_dim = 4096;
  unsigned threads = 1;
  std::string csv;
};

int run_bench(const BenchArgs& a) {
  static const std::map<std::string, sysid_method> methods{
      {"full", SYSID_METHOD_FULL}, {"rsvd", SYSID_METHOD_RSVD}, {"rsvd-h", SYSID_METHOD_RSVD_H}};
  std::vector<sysid_method> ms;
  for (const auto& name : a.methods) ms.push_back(methods.at(name));
  sysid_bench_options opt;
  sysid_bench_options_init(&opt);
  opt.s_list = a.s_list.data();
  opt.s_count = a.s_list.size();
  opt.methods = ms.data();
  opt.method_count = ms.size();
  opt.l = a.l;
  opt.m = a.m;
  opt.rank = a.rank;
  opt.oversampling = a.oversample;
  opt.power_iters = a.power_iters;
  opt.seed = a.seed;
  opt.repeats = a.repeats;
  opt.max_dense_dim = a.max_dense_dim;
  opt.threads = a.threads;
  char* csv = nullptr;
  std::vector<double> slopes(ms.size());
  check(sysid_bench(&opt, &csv, slopes.data()), "bench");
  std::string text = csv;
  sysid_string_free(csv);
  if (a.csv.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    FILE* f = std::fopen(a.csv.c_str(), "wb");
    if (f == nullptr) {
      std::fprintf(stderr, "sysid: cannot open '%s' for writing\n", a.csv.c_str());
      return kExitIo;
    }
    std::fputs(text.c_str(), f);
    std::fclose(f);
  }
  for (size_t i = 0; i < ms.size(); ++i)
    std::fprintf(stderr, "slope %-7s %s\n", a.methods[i].c_str(), fmt(slopes[i]).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigensystem realization from Markov parameters"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a test system");
  g->add_option("--kind", gen.kind, "System family")
      ->check(CLI::IsMember({"random", "heat", "oscillatory"}));
  g->add_option("--n", gen.n, "State order (heat: grid nodes; oscillatory: even)");
  g->add_option("--m", gen.m, "Inputs");
  g->add_option("--l", gen.l, "Outputs");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--dt", gen.dt, "Sampling interval");
  g->add_option("--rho-max", gen.rho_max, "Spectral radius cap (random)");
  g->add_option("--diffusivity", gen.diffusivity, "Diffusivity (heat)");
  g->add_option("--radius-min", gen.radius_min, "Smallest pole modulus (oscillatory)");
  g->add_option("--radius-max", gen.radius_max, "Largest pole modulus (oscillatory)");
  g->add_option("--channel-decay", gen.channel_decay, "Per-channel gain decay (oscillatory)");
  g->add_flag("--identity-output", gen.identity_output, "C = I (oscillatory)");
  g->add_option("--out", gen.out, "System JSON")->required();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Compute Markov parameters of a system");
  s->add_option("--system", sim.system, "System JSON")->required();
  s->add_option("--samples", sim.samples, "Number of Markov parameters (2s)")->required();
  s->add_option("--out", sim.out, "Markov payload (.csv for text)")->required();

  IdentifyArgs id;
  auto* i = app.add_subcommand("identify", "Identify a reduced model");
  i->add_option("--markov", id.markov, "Markov file")->required();
  i->add_option("--method", id.method, "SVD method")
      ->check(CLI::IsMember({"full", "rsvd", "rsvd-h", "tera", "randtera"}));
  i->add_option("--rank", id.rank, "Model order r")->required();
  i->add_option("--depth", id.depth, "Hankel depth s (0: largest available)");
  i->add_option("--oversample", id.oversample, "Oversampling rho");
  i->add_option("--power-iters", id.power_iters, "Subspace iterations q");
  i->add_option("--eps", id.eps, "Tangential threshold (tera, randtera)");
  i->add_option("--lp", id.lp, "Projected outputs (tera, randtera)");
  i->add_option("--mp", id.mp, "Projected inputs (tera, randtera)");
  i->add_option("--seed", id.seed, "Random seed");
  i->add_option("--formulation", id.formulation, "Realization coordinates")
      ->check(CLI::IsMember({"standard", "balanced"}));
  i->add_option("--out", id.out, "Model JSON");
  i->add_option("--diag", id.diag, "Diagnostics JSON");
  i->add_flag("--strict", id.strict, "Exit 3 when A2 or A4 fails");
  i->add_option("--threads", id.threads, "Worker threads for operator products")
      ->check(CLI::PositiveNumber);
  i->add_option("--max-dense-entries", id.max_dense_entries, "Cap for dense Hankel paths");
  i->add_flag("--padded-fft", id.padded_fft, "Round FFT length to a 2,3,5,7-smooth size");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Compare two models");
  c->add_option("--model-a", cmp.a, "Reference model")->required();
  c->add_option("--model-b", cmp.b, "Test model")->required();
  c->add_option("--num-markov", cmp.count, "K in M_1..M_K");
  c->add_option("--out", cmp.out, "Report CSV");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time the SVD stage over a range of depths");
  b->add_option("--s-list", bench.s_list, "Depths")->delimiter(',');
  b->add_option("--methods", bench.methods, "Methods")->delimiter(',')
      ->check(CLI::IsMember({"full", "rsvd", "rsvd-h"}));
  b->add_option("--repeats", bench.repeats, "Runs averaged per point");
  b->add_option("--l", bench.l, "Outputs");
  b->add_option("--m", bench.m, "Inputs");
  b->add_option("--rank", bench.rank, "Model order");
  b->add_option("--oversample", bench.oversample, "Oversampling rho");
  b->add_option("--power-iters", bench.power_iters, "Subspace iterations q");
  b->add_option("--seed", bench.seed, "Random seed");
  b->add_option("--max-dense-dim", bench.max_dense_dim, "Skip dense methods above s * max(l, m)");
  b->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--csv", bench.csv, "Output CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*g) return run_gen(gen);
    if (*s) return run_simulate(sim);
    if (*i) return run_identify(id);
    if (*c) return run_compare(cmp);
    if (*b) return run_bench(bench);
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
