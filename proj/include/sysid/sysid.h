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

#ifndef SYSID_SYSID_H_
#define SYSID_SYSID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SYSID_BUILDING_LIBRARY)
#define SYSID_API __attribute__((visibility("default")))
#else
#define SYSID_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function that can fail returns a status. On failure a message is
 * available from sysid_last_error() on the calling thread until the next
 * failing call. Output handles are only written on success. */
typedef enum sysid_status {
  SYSID_OK = 0,
  SYSID_ERR_INVALID_ARGUMENT = 1,
  SYSID_ERR_DIMENSION = 2,
  SYSID_ERR_CONFIG = 3,
  SYSID_ERR_NUMERICAL = 4,
  SYSID_ERR_SIZE_CAP = 5,
  SYSID_ERR_IO = 6,
  SYSID_ERR_CORRUPT = 7,
  SYSID_ERR_INTERNAL = 8
} sysid_status;

SYSID_API const char* sysid_version(void);
SYSID_API const char* sysid_status_string(sysid_status status);
SYSID_API const char* sysid_last_error(void);

/* Strings returned through char** are owned by the caller. */
SYSID_API void sysid_string_free(char* s);

typedef struct sysid_system sysid_system;
typedef struct sysid_markov sysid_markov;
typedef struct sysid_model sysid_model;
typedef struct sysid_diagnostics sysid_diagnostics;

/* ---- systems ---------------------------------------------------------- */

typedef enum sysid_system_kind {
  SYSID_SYSTEM_RANDOM = 0,
  SYSID_SYSTEM_HEAT = 1,
  SYSID_SYSTEM_OSCILLATORY = 2
} sysid_system_kind;

typedef struct sysid_gen_options {
  sysid_system_kind kind;
  /* random: state order; heat: grid nodes; oscillatory: 2 * pairs. */
  int64_t n;
  int64_t m;
  int64_t l;
  uint64_t seed;
  /* Sampling interval; <= 0 leaves it unset (heat requires > 0). */
  double dt;
  double rho_max;       /* random */
  double diffusivity;   /* heat */
  double radius_min;    /* oscillatory */
  double radius_max;    /* oscillatory */
  double channel_decay; /* oscillatory */
  int identity_output;  /* oscillatory: C = I and l = n */
} sysid_gen_options;

SYSID_API void sysid_gen_options_init(sysid_gen_options* opt, sysid_system_kind kind);
SYSID_API sysid_status sysid_system_generate(const sysid_gen_options* opt, sysid_system** out);

/* Matrices are row-major. dt <= 0 leaves the interval unset. */
SYSID_API sysid_status sysid_system_create(int64_t n, int64_t m, int64_t l, const double* a,
                                           const double* b, const double* c, const double* d,
                                           double dt, sysid_system** out);
SYSID_API sysid_status sysid_system_load(const char* path, sysid_system** out);
SYSID_API sysid_status sysid_system_save(const sysid_system* sys, const char* path);
SYSID_API sysid_status sysid_system_dims(const sysid_system* sys, int64_t* n, int64_t* m,
                                         int64_t* l);
/* which is one of 'A', 'B', 'C', 'D'; capacity counts doubles. */
SYSID_API sysid_status sysid_system_matrix(const sysid_system* sys, char which, double* out,
                                           size_t capacity);
SYSID_API void sysid_system_free(sysid_system* sys);

/* ---- Markov sequences ------------------------------------------------- */

/* data holds num_params blocks of l x m, h_0 first, each row-major. */
SYSID_API sysid_status sysid_markov_create(int64_t l, int64_t m, int64_t num_params,
                                           const double* data, double dt, sysid_markov** out);
SYSID_API sysid_status sysid_markov_simulate(const sysid_system* sys, int64_t num_params,
                                             sysid_markov** out);
/* Binary payload at path with sidecar path.json; a .csv path uses CSV. */
SYSID_API sysid_status sysid_markov_load(const char* path, sysid_markov** out);
SYSID_API sysid_status sysid_markov_save(const sysid_markov* mk, const char* path);
SYSID_API sysid_status sysid_markov_save_csv(const sysid_markov* mk, const char* path);
SYSID_API sysid_status sysid_markov_dims(const sysid_markov* mk, int64_t* l, int64_t* m,
                                         int64_t* num_params);
SYSID_API sysid_status sysid_markov_data(const sysid_markov* mk, double* out, size_t capacity);
SYSID_API void sysid_markov_free(sysid_markov* mk);

/* ---- identification --------------------------------------------------- */

typedef enum sysid_method {
  SYSID_METHOD_FULL = 0,
  SYSID_METHOD_RSVD = 1,
  SYSID_METHOD_RSVD_H = 2,
  SYSID_METHOD_TERA = 3,
  SYSID_METHOD_RANDTERA = 4
} sysid_method;

typedef struct sysid_identify_options {
  sysid_method method;
  int64_t rank;
  int64_t depth;        /* 0: largest depth the sequence supports */
  int64_t oversampling; /* default 20 */
  int64_t power_iters;  /* default 1 */
  uint64_t seed;
  int balanced;         /* nonzero selects the balanced formulation */
  double epsilon;       /* tera/randtera; <= 0 means unset, default 0.01 */
  int64_t lp;           /* tera/randtera; 0 means chosen by epsilon */
  int64_t mp;
  double max_dense_entries; /* default 1e8 */
  unsigned threads;     /* default 1 */
  int padded_fft;       /* nonzero: FFT length rounded up to a 2,3,5,7-smooth size */
} sysid_identify_options;

SYSID_API void sysid_identify_options_init(sysid_identify_options* opt);
SYSID_API sysid_status sysid_identify(const sysid_markov* mk, const sysid_identify_options* opt,
                                      sysid_model** model, sysid_diagnostics** diagnostics);

/* ---- models ----------------------------------------------------------- */

SYSID_API sysid_status sysid_model_load(const char* path, sysid_model** out);
SYSID_API sysid_status sysid_model_save(const sysid_model* model, const char* path);
SYSID_API sysid_status sysid_model_to_json(const sysid_model* model, char** json);
SYSID_API sysid_status sysid_model_dims(const sysid_model* model, int64_t* order, int64_t* m,
                                        int64_t* l);
SYSID_API sysid_status sysid_model_matrix(const sysid_model* model, char which, double* out,
                                          size_t capacity);
/* Retained singular values; *count receives the number available. */
SYSID_API sysid_status sysid_model_sigma(const sysid_model* model, double* out, size_t capacity,
                                         size_t* count);
/* Eigenvalues of A_r, descending modulus; capacity >= order. */
SYSID_API sysid_status sysid_model_eigenvalues(const sysid_model* model, double* re, double* im,
                                               size_t capacity);
SYSID_API sysid_status sysid_model_impulse(const sysid_model* model, int64_t count,
                                           sysid_markov** out);
SYSID_API void sysid_model_free(sysid_model* model);

/* ---- diagnostics ------------------------------------------------------ */

/* Absent optional quantities are NaN. */
typedef struct sysid_diagnostics_summary {
  double sin_theta_max;
  double eta;
  double theorem_bound;
  double upsilon_pinv_norm;
  double kappa_w;
  double spectral_radius;
  double stability_margin;
  double residual_bound;
  int a1, a2, a3, a4;
  int a4_evaluated;
  double time_operator_build;
  double time_svd;
  double time_recovery;
  size_t warning_count;
} sysid_diagnostics_summary;

SYSID_API sysid_status sysid_diagnostics_summarize(const sysid_diagnostics* d,
                                                   sysid_diagnostics_summary* out);
/* Borrowed string, valid while d lives. */
SYSID_API const char* sysid_diagnostics_warning(const sysid_diagnostics* d, size_t index);
SYSID_API sysid_status sysid_diagnostics_save(const sysid_diagnostics* d, const char* path);
SYSID_API sysid_status sysid_diagnostics_to_json(const sysid_diagnostics* d, char** json);
SYSID_API void sysid_diagnostics_free(sysid_diagnostics* d);

/* ---- comparison ------------------------------------------------------- */

/* Spectra and M_1..M_K of model b against reference a. markov_error may be
 * NULL or hold count doubles; csv_path may be NULL. */
SYSID_API sysid_status sysid_compare(const sysid_model* a, const sysid_model* b, int64_t count,
                                     double* hausdorff, double* sv_a_in_b, double* sv_b_in_a,
                                     double* markov_error, const char* csv_path);

/* ---- benchmark -------------------------------------------------------- */

typedef struct sysid_bench_options {
  const int64_t* s_list;
  size_t s_count;
  const sysid_method* methods; /* FULL, RSVD, RSVD_H only */
  size_t method_count;
  int64_t l;
  int64_t m;
  int64_t rank;
  int64_t oversampling;
  int64_t power_iters;
  uint64_t seed;
  int64_t repeats;
  int64_t max_dense_dim;
  unsigned threads;
} sysid_bench_options;

SYSID_API void sysid_bench_options_init(sysid_bench_options* opt);
/* csv receives the records; slopes (may be NULL) receives method_count
 * fitted log-log slopes of the SVD stage, NaN with fewer than two points. */
SYSID_API sysid_status sysid_bench(const sysid_bench_options* opt, char** csv, double* slopes);

#ifdef __cplusplus
}
#endif

#endif  // SYSID_SYSID_H_
