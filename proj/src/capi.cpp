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

#include "sysid/sysid.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "sysid/bench.hpp"
#include "sysid/identify.hpp"
#include "sysid/io.hpp"
#include "sysid/tera.hpp"

struct sysid_system {
  sysid::LtiSystem v;
};
struct sysid_markov {
  sysid::MarkovSequence v;
};
struct sysid_model {
  sysid::IdentifiedModel v;
};
struct sysid_diagnostics {
  sysid::DiagnosticsReport v;
};

namespace {

using sysid::ErrorCode;
using sysid::Index;
using sysid::Matrix;

thread_local std::string g_last_error;

sysid_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return SYSID_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension: return SYSID_ERR_DIMENSION;
    case ErrorCode::config: return SYSID_ERR_CONFIG;
    case ErrorCode::numerical: return SYSID_ERR_NUMERICAL;
    case ErrorCode::size_cap: return SYSID_ERR_SIZE_CAP;
    case ErrorCode::io: return SYSID_ERR_IO;
    case ErrorCode::corrupt: return SYSID_ERR_CORRUPT;
  }
  return SYSID_ERR_INTERNAL;
}

template <typename F>
sysid_status guarded(F&& body) {
  try {
    body();
    return SYSID_OK;
  } catch (const sysid::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SYSID_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SYSID_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SYSID_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  sysid::require(p != nullptr, ErrorCode::invalid_input, std::string(name) + " is NULL");
}

std::optional<double> positive_or_none(double x) {
  if (x > 0.0) return x;
  return std::nullopt;
}

Matrix read_row_major(const double* data, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
  return m;
}

void write_row_major(const Matrix& m, double* out, size_t capacity) {
  need(out, "out");
  sysid::require(capacity >= static_cast<size_t>(m.size()), ErrorCode::dimension,
                 "output buffer holds " + std::to_string(capacity) + " doubles, need " +
                     std::to_string(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
}

const Matrix& pick(const sysid::StateSpace& ss, char which) {
  switch (which) {
    case 'A': return ss.A;
    case 'B': return ss.B;
    case 'C': return ss.C;
    case 'D': return ss.D;
  }
  sysid::fail(ErrorCode::invalid_input, std::string("unknown matrix '") + which + "'");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sysid::SvdMethod svd_method(sysid_method m) {
  switch (m) {
    case SYSID_METHOD_FULL: return sysid::SvdMethod::full_svd;
    case SYSID_METHOD_RSVD: return sysid::SvdMethod::rsvd_dense;
    case SYSID_METHOD_RSVD_H: return sysid::SvdMethod::rsvd_hankel;
    default: break;
  }
  sysid::fail(ErrorCode::config, "method is not a plain SVD method");
}

double or_nan(const std::optional<double>& x) {
  return x ? *x : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

const char* sysid_version(void) { return "0.1.0"; }

const char* sysid_status_string(sysid_status status) {
  switch (status) {
    case SYSID_OK: return "ok";
    case SYSID_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SYSID_ERR_DIMENSION: return "dimension mismatch";
    case SYSID_ERR_CONFIG: return "invalid configuration";
    case SYSID_ERR_NUMERICAL: return "numerical failure";
    case SYSID_ERR_SIZE_CAP: return "size cap exceeded";
    case SYSID_ERR_IO: return "I/O error";
    case SYSID_ERR_CORRUPT: return "corrupt data";
    case SYSID_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sysid_last_error(void) { return g_last_error.c_str(); }

void sysid_string_free(char* s) { std::free(s); }

// ---- systems ---------------------------------------------------------------

void sysid_gen_options_init(sysid_gen_options* opt, sysid_system_kind kind) {
  if (opt == nullptr) return;
  *opt = sysid_gen_options{};
  opt->kind = kind;
  opt->rho_max = 0.9;
  opt->diffusivity = 1.0;
  opt->radius_min = 0.9;
  opt->radius_max = 0.99;
  opt->channel_decay = 1.0;
  switch (kind) {
    case SYSID_SYSTEM_RANDOM:
      opt->n = 10, opt->m = 2, opt->l = 3;
      break;
    case SYSID_SYSTEM_HEAT:
      opt->n = 200, opt->m = 7, opt->l = 6, opt->dt = 1e-3;
      break;
    case SYSID_SYSTEM_OSCILLATORY:
      opt->n = 40, opt->m = 20, opt->l = 40;
      break;
  }
}

sysid_status sysid_system_generate(const sysid_gen_options* opt, sysid_system** out) {
  return guarded([&] {
    need(opt, "opt");
    need(out, "out");
    auto sys = std::make_unique<sysid_system>();
    switch (opt->kind) {
      case SYSID_SYSTEM_RANDOM: {
        sysid::RandomSystemOptions o;
        o.n = opt->n, o.m = opt->m, o.l = opt->l, o.rho_max = opt->rho_max, o.seed = opt->seed;
        sys->v = sysid::random_stable_system(o);
        sys->v.dt = positive_or_none(opt->dt);
        break;
      }
      case SYSID_SYSTEM_HEAT: {
        sysid::HeatOptions o;
        o.grid_n = opt->n, o.inputs = opt->m, o.outputs = opt->l;
        o.diffusivity = opt->diffusivity;
        sysid::require(opt->dt > 0.0, ErrorCode::config, "heat system needs dt > 0");
        o.dt = opt->dt;
        sys->v = sysid::heat1d_system(o);
        break;
      }
      case SYSID_SYSTEM_OSCILLATORY: {
        sysid::require(opt->n >= 2 && opt->n % 2 == 0, ErrorCode::config,
                       "oscillatory system needs an even n >= 2");
        sysid::OscillatoryOptions o;
        o.n_pairs = opt->n / 2, o.m = opt->m, o.l = opt->l, o.seed = opt->seed;
        o.radius_min = opt->radius_min, o.radius_max = opt->radius_max;
        o.channel_decay = opt->channel_decay;
        o.identity_output = opt->identity_output != 0;
        sys->v = sysid::oscillatory_system(o);
        sys->v.dt = positive_or_none(opt->dt);
        break;
      }
      default:
        sysid::fail(ErrorCode::config, "unknown system kind");
    }
    *out = sys.release();
  });
}

sysid_status sysid_system_create(int64_t n, int64_t m, int64_t l, const double* a, const double* b,
                                 const double* c, const double* d, double dt, sysid_system** out) {
  return guarded([&] {
    need(a, "a"), need(b, "b"), need(c, "c"), need(d, "d"), need(out, "out");
    sysid::require(n >= 1 && m >= 1 && l >= 1, ErrorCode::dimension, "dimensions must be >= 1");
    auto sys = std::make_unique<sysid_system>();
    sys->v.ss = {read_row_major(a, n, n), read_row_major(b, n, m), read_row_major(c, l, n),
                 read_row_major(d, l, m)};
    sys->v.ss.validate();
    sys->v.dt = positive_or_none(dt);
    *out = sys.release();
  });
}

sysid_status sysid_system_load(const char* path, sysid_system** out) {
  return guarded([&] {
    need(path, "path"), need(out, "out");
    auto sys = std::make_unique<sysid_system>();
    sys->v = sysid::load_system(path);
    *out = sys.release();
  });
}

sysid_status sysid_system_save(const sysid_system* sys, const char* path) {
  return guarded([&] {
    need(sys, "sys"), need(path, "path");
    sysid::save_system(path, sys->v);
  });
}

sysid_status sysid_system_dims(const sysid_system* sys, int64_t* n, int64_t* m, int64_t* l) {
  return guarded([&] {
    need(sys, "sys");
    if (n) *n = sys->v.ss.order();
    if (m) *m = sys->v.ss.inputs();
    if (l) *l = sys->v.ss.outputs();
  });
}

sysid_status sysid_system_matrix(const sysid_system* sys, char which, double* out, size_t capacity) {
  return guarded([&] {
    need(sys, "sys");
    write_row_major(pick(sys->v.ss, which), out, capacity);
  });
}

void sysid_system_free(sysid_system* sys) { delete sys; }

// ---- Markov sequences ------------------------------------------------------

sysid_status sysid_markov_create(int64_t l, int64_t m, int64_t num_params, const double* data,
                                 double dt, sysid_markov** out) {
  return guarded([&] {
    need(data, "data"), need(out, "out");
    sysid::require(l >= 1 && m >= 1 && num_params >= 1, ErrorCode::dimension,
                   "dimensions must be >= 1");
    std::vector<Matrix> blocks;
    for (int64_t k = 0; k < num_params; ++k) blocks.push_back(read_row_major(data + k * l * m, l, m));
    auto mk = std::make_unique<sysid_markov>();
    mk->v = sysid::MarkovSequence(l, m, std::move(blocks), positive_or_none(dt));
    *out = mk.release();
  });
}

sysid_status sysid_markov_simulate(const sysid_system* sys, int64_t num_params, sysid_markov** out) {
  return guarded([&] {
    need(sys, "sys"), need(out, "out");
    auto mk = std::make_unique<sysid_markov>();
    mk->v = sysid::simulate_impulse(sys->v, num_params);
    *out = mk.release();
  });
}

sysid_status sysid_markov_load(const char* path, sysid_markov** out) {
  return guarded([&] {
    need(path, "path"), need(out, "out");
    auto mk = std::make_unique<sysid_markov>();
    mk->v = sysid::load_markov(path);
    *out = mk.release();
  });
}

sysid_status sysid_markov_save(const sysid_markov* mk, const char* path) {
  return guarded([&] {
    need(mk, "mk"), need(path, "path");
    sysid::save_markov(path, mk->v);
  });
}

sysid_status sysid_markov_save_csv(const sysid_markov* mk, const char* path) {
  return guarded([&] {
    need(mk, "mk"), need(path, "path");
    sysid::save_markov_csv(path, mk->v);
  });
}

sysid_status sysid_markov_dims(const sysid_markov* mk, int64_t* l, int64_t* m, int64_t* num_params) {
  return guarded([&] {
    need(mk, "mk");
    if (l) *l = mk->v.ell();
    if (m) *m = mk->v.m();
    if (num_params) *num_params = mk->v.size();
  });
}

sysid_status sysid_markov_data(const sysid_markov* mk, double* out, size_t capacity) {
  return guarded([&] {
    need(mk, "mk"), need(out, "out");
    const Index block = mk->v.ell() * mk->v.m();
    sysid::require(capacity >= static_cast<size_t>(block * mk->v.size()), ErrorCode::dimension,
                   "output buffer too small");
    for (Index k = 0; k < mk->v.size(); ++k)
      write_row_major(mk->v[k], out + k * block, static_cast<size_t>(block));
  });
}

void sysid_markov_free(sysid_markov* mk) { delete mk; }

// ---- identification --------------------------------------------------------

void sysid_identify_options_init(sysid_identify_options* opt) {
  if (opt == nullptr) return;
  *opt = sysid_identify_options{};
  opt->method = SYSID_METHOD_FULL;
  opt->rank = 1;
  opt->oversampling = 20;
  opt->power_iters = 1;
  opt->epsilon = 0.01;
  opt->max_dense_entries = sysid::kDefaultMaxDenseEntries;
  opt->threads = 1;
}

sysid_status sysid_identify(const sysid_markov* mk, const sysid_identify_options* opt,
                            sysid_model** model, sysid_diagnostics** diagnostics) {
  return guarded([&] {
    need(mk, "mk"), need(opt, "opt"), need(model, "model");
    sysid::require(opt->depth >= 0 && opt->lp >= 0 && opt->mp >= 0, ErrorCode::config,
                   "depth, lp and mp must be nonnegative");
    sysid::HankelOperatorOptions op;
    op.threads = std::max(1u, opt->threads);
    op.fft_length = opt->padded_fft ? sysid::FftLength::padded : sysid::FftLength::exact;
    const auto formulation = opt->balanced ? sysid::Formulation::balanced : sysid::Formulation::standard;

    auto m = std::make_unique<sysid_model>();
    auto d = std::make_unique<sysid_diagnostics>();
    if (opt->method == SYSID_METHOD_TERA || opt->method == SYSID_METHOD_RANDTERA) {
      sysid::TeraOptions t;
      t.projectors.epsilon = positive_or_none(opt->epsilon);
      if (opt->lp > 0) t.projectors.lp = opt->lp;
      if (opt->mp > 0) t.projectors.mp = opt->mp;
      t.backend = opt->method == SYSID_METHOD_TERA ? sysid::TeraBackend::full : sysid::TeraBackend::randomized;
      t.rank = opt->rank;
      t.depth = opt->depth;
      t.oversampling = opt->oversampling;
      t.power_iters = opt->power_iters;
      t.seed = opt->seed;
      t.formulation = formulation;
      t.max_dense_entries = opt->max_dense_entries;
      t.op = op;
      auto res = sysid::randtera(mk->v, t);
      m->v = std::move(res.model);
      d->v = std::move(res.diagnostics);
    } else {
      sysid::IdentifyOptions o;
      o.method = svd_method(opt->method);
      o.rank = opt->rank;
      o.depth = opt->depth;
      o.oversampling = opt->oversampling;
      o.power_iters = opt->power_iters;
      o.seed = opt->seed;
      o.formulation = formulation;
      o.max_dense_entries = opt->max_dense_entries;
      o.op = op;
      auto res = sysid::identify(mk->v, o);
      m->v = std::move(res.model);
      d->v = std::move(res.diagnostics);
    }
    *model = m.release();
    if (diagnostics) *diagnostics = d.release();
  });
}

// ---- models ----------------------------------------------------------------

sysid_status sysid_model_load(const char* path, sysid_model** out) {
  return guarded([&] {
    need(path, "path"), need(out, "out");
    auto m = std::make_unique<sysid_model>();
    m->v = sysid::load_model(path);
    *out = m.release();
  });
}

sysid_status sysid_model_save(const sysid_model* model, const char* path) {
  return guarded([&] {
    need(model, "model"), need(path, "path");
    sysid::save_model(path, model->v);
  });
}

sysid_status sysid_model_to_json(const sysid_model* model, char** json) {
  return guarded([&] {
    need(model, "model"), need(json, "json");
    *json = copy_string(sysid::model_to_json(model->v));
  });
}

sysid_status sysid_model_dims(const sysid_model* model, int64_t* order, int64_t* m, int64_t* l) {
  return guarded([&] {
    need(model, "model");
    if (order) *order = model->v.order();
    if (m) *m = model->v.ss.inputs();
    if (l) *l = model->v.ss.outputs();
  });
}

sysid_status sysid_model_matrix(const sysid_model* model, char which, double* out, size_t capacity) {
  return guarded([&] {
    need(model, "model");
    write_row_major(pick(model->v.ss, which), out, capacity);
  });
}

sysid_status sysid_model_sigma(const sysid_model* model, double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    need(model, "model");
    const auto n = static_cast<size_t>(model->v.sigma.size());
    if (count) *count = n;
    if (out) {
      sysid::require(capacity >= n, ErrorCode::dimension, "output buffer too small");
      for (size_t i = 0; i < n; ++i) out[i] = model->v.sigma(static_cast<Index>(i));
    }
  });
}

sysid_status sysid_model_eigenvalues(const sysid_model* model, double* re, double* im,
                                     size_t capacity) {
  return guarded([&] {
    need(model, "model"), need(re, "re"), need(im, "im");
    const auto values = sysid::eig(model->v.ss.A).values;
    sysid::require(capacity >= static_cast<size_t>(values.size()), ErrorCode::dimension,
                   "output buffer too small");
    for (Index i = 0; i < values.size(); ++i) re[i] = values(i).real(), im[i] = values(i).imag();
  });
}

sysid_status sysid_model_impulse(const sysid_model* model, int64_t count, sysid_markov** out) {
  return guarded([&] {
    need(model, "model"), need(out, "out");
    auto mk = std::make_unique<sysid_markov>();
    mk->v = sysid::impulse_response(model->v, count);
    *out = mk.release();
  });
}

void sysid_model_free(sysid_model* model) { delete model; }

// ---- diagnostics -----------------------------------------------------------

sysid_status sysid_diagnostics_summarize(const sysid_diagnostics* d, sysid_diagnostics_summary* out) {
  return guarded([&] {
    need(d, "d"), need(out, "out");
    const auto& v = d->v;
    out->sin_theta_max = or_nan(v.sin_theta_max);
    out->eta = or_nan(v.eta);
    out->theorem_bound = or_nan(v.theorem_bound);
    out->upsilon_pinv_norm = v.upsilon_pinv_norm;
    out->kappa_w = v.kappa_w;
    out->spectral_radius = v.spectral_radius;
    out->stability_margin = v.stability_margin;
    out->residual_bound = or_nan(v.residual_bound);
    out->a1 = v.assumptions.a1, out->a2 = v.assumptions.a2;
    out->a3 = v.assumptions.a3, out->a4 = v.assumptions.a4;
    out->a4_evaluated = v.assumptions.a4_evaluated;
    out->time_operator_build = v.timings.operator_build;
    out->time_svd = v.timings.svd;
    out->time_recovery = v.timings.recovery;
    out->warning_count = v.warnings.size();
  });
}

const char* sysid_diagnostics_warning(const sysid_diagnostics* d, size_t index) {
  if (d == nullptr || index >= d->v.warnings.size()) return nullptr;
  return d->v.warnings[index].c_str();
}

sysid_status sysid_diagnostics_save(const sysid_diagnostics* d, const char* path) {
  return guarded([&] {
    need(d, "d"), need(path, "path");
    sysid::save_diagnostics(path, d->v);
  });
}

sysid_status sysid_diagnostics_to_json(const sysid_diagnostics* d, char** json) {
  return guarded([&] {
    need(d, "d"), need(json, "json");
    *json = copy_string(sysid::diagnostics_to_json(d->v));
  });
}

void sysid_diagnostics_free(sysid_diagnostics* d) { delete d; }

// ---- comparison ------------------------------------------------------------

sysid_status sysid_compare(const sysid_model* a, const sysid_model* b, int64_t count,
                           double* hausdorff, double* sv_a_in_b, double* sv_b_in_a,
                           double* markov_error, const char* csv_path) {
  return guarded([&] {
    need(a, "a"), need(b, "b");
    const auto report = sysid::compare_models(a->v, b->v, count);
    if (hausdorff) *hausdorff = report.hausdorff;
    if (sv_a_in_b) *sv_a_in_b = report.sv_a_in_b;
    if (sv_b_in_a) *sv_b_in_a = report.sv_b_in_a;
    if (markov_error)
      for (Index k = 0; k < report.markov_error.size(); ++k) markov_error[k] = report.markov_error(k);
    if (csv_path) sysid::write_file(csv_path, sysid::compare_report_csv(report));
  });
}

// ---- benchmark -------------------------------------------------------------

void sysid_bench_options_init(sysid_bench_options* opt) {
  if (opt == nullptr) return;
  const sysid::BenchConfig def;
  *opt = sysid_bench_options{};
  opt->l = def.ell;
  opt->m = def.m;
  opt->rank = def.rank;
  opt->oversampling = def.oversampling;
  opt->power_iters = def.power_iters;
  opt->seed = def.seed;
  opt->repeats = def.repeats;
  opt->max_dense_dim = def.max_dense_dim;
  opt->threads = def.threads;
}

sysid_status sysid_bench(const sysid_bench_options* opt, char** csv, double* slopes) {
  return guarded([&] {
    need(opt, "opt"), need(csv, "csv");
    sysid::require(opt->s_count > 0 && opt->s_list != nullptr, ErrorCode::config, "empty s-list");
    sysid::require(opt->method_count > 0 && opt->methods != nullptr, ErrorCode::config,
                   "no methods");
    sysid::BenchConfig cfg;
    cfg.s_list.assign(opt->s_list, opt->s_list + opt->s_count);
    cfg.methods.clear();
    for (size_t i = 0; i < opt->method_count; ++i) cfg.methods.push_back(svd_method(opt->methods[i]));
    cfg.ell = opt->l;
    cfg.m = opt->m;
    cfg.rank = opt->rank;
    cfg.oversampling = opt->oversampling;
    cfg.power_iters = opt->power_iters;
    cfg.seed = opt->seed;
    cfg.repeats = opt->repeats;
    cfg.max_dense_dim = opt->max_dense_dim;
    cfg.threads = std::max(1u, opt->threads);
    const auto result = sysid::run_bench(cfg);
    if (slopes)
      for (size_t i = 0; i < result.slopes.size(); ++i) slopes[i] = result.slopes[i].slope;
    *csv = copy_string(sysid::bench_csv(result));
  });
}

}  // extern "C"
