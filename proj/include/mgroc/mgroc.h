// Copyright 2026 The mgroc Authors
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

#ifndef MGROC_H
#define MGROC_H

/*
 * C interface to the mgroc library.
 *
 * Every fallible call returns an mgroc_status. On failure a message is kept
 * in thread-local storage and can be read with mgroc_last_error() until the
 * next failing call on the same thread. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Strings returned
 * through char** parameters are released with mgroc_string_free().
 *
 * Status values double as the CLI's process exit codes.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(MGROC_BUILDING_LIBRARY)
#define MGROC_API __attribute__((visibility("default")))
#else
#define MGROC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mgroc_status {
    MGROC_OK = 0,
    MGROC_ERR_INTERNAL = 1,
    MGROC_ERR_INPUT = 2,     /* invalid input data or arguments */
    MGROC_ERR_NUMERICAL = 3, /* e.g. EM collapsed in every restart */
    MGROC_ERR_IO = 4         /* unreadable input or unwritable output */
} mgroc_status;

typedef enum mgroc_population { MGROC_NON_DISEASED = 0, MGROC_DISEASED = 1 } mgroc_population;

typedef enum mgroc_band_kind { MGROC_BAND_MEAN_CI = 0, MGROC_BAND_ENVELOPE = 1, MGROC_BAND_BOTH = 2 } mgroc_band_kind;

typedef struct mgroc_dataset mgroc_dataset;
typedef struct mgroc_gmm mgroc_gmm;
typedef struct mgroc_curve mgroc_curve;
typedef struct mgroc_ensemble mgroc_ensemble;

MGROC_API const char* mgroc_version(void);
MGROC_API const char* mgroc_last_error(void);
MGROC_API void mgroc_string_free(char* s);

/* ---- datasets ---------------------------------------------------------- */

/* NULL column/label arguments select the defaults "score", "label", "0", "1". */
MGROC_API mgroc_status mgroc_dataset_load_csv(const char* path, const char* score_col, const char* label_col,
                                              const char* non_diseased_label, const char* diseased_label,
                                              mgroc_dataset** out);
MGROC_API mgroc_status mgroc_dataset_load_pair(const char* non_diseased_path, const char* diseased_path,
                                               mgroc_dataset** out);
MGROC_API mgroc_status mgroc_dataset_from_arrays(const double* non_diseased, size_t n_non_diseased,
                                                 const double* diseased, size_t n_diseased, mgroc_dataset** out);
MGROC_API size_t mgroc_dataset_size(const mgroc_dataset* ds, mgroc_population population);
/* Copies the sorted scores; capacity must be at least mgroc_dataset_size(). */
MGROC_API mgroc_status mgroc_dataset_scores(const mgroc_dataset* ds, mgroc_population population, double* out,
                                            size_t capacity);
MGROC_API void mgroc_dataset_free(mgroc_dataset* ds);

/* ---- ROC curves and areas --------------------------------------------- */

MGROC_API mgroc_status mgroc_curve_empirical(const mgroc_dataset* ds, size_t grid_size, mgroc_curve** out);
MGROC_API mgroc_status mgroc_curve_functional(const mgroc_gmm* f, const mgroc_gmm* g, size_t grid_size,
                                              mgroc_curve** out);
MGROC_API size_t mgroc_curve_size(const mgroc_curve* curve);
MGROC_API mgroc_status mgroc_curve_values(const mgroc_curve* curve, double* t, double* tpr, size_t capacity);
MGROC_API mgroc_status mgroc_curve_auc(const mgroc_curve* curve, double* out);
MGROC_API mgroc_status mgroc_curve_pauc(const mgroc_curve* curve, double t_lo, double t_hi, double* out);
MGROC_API void mgroc_curve_free(mgroc_curve* curve);

MGROC_API mgroc_status mgroc_auc_mann_whitney(const mgroc_dataset* ds, double* out);

/* ---- crude binormal ---------------------------------------------------- */

typedef struct mgroc_binormal {
    double a;
    double b;
    double mu_n;
    double sigma_n;
    double mu_d;
    double sigma_d;
} mgroc_binormal;

MGROC_API mgroc_status mgroc_binormal_fit(const mgroc_dataset* ds, mgroc_binormal* out);
MGROC_API mgroc_status mgroc_binormal_auc(const mgroc_binormal* params, double* out);
MGROC_API mgroc_status mgroc_curve_binormal(const mgroc_binormal* params, size_t grid_size, mgroc_curve** out);

/* ---- Gaussian mixtures ------------------------------------------------- */

typedef struct mgroc_em_config {
    size_t k_min;
    size_t k_max;
    size_t max_iter;
    double tol;
    size_t n_restarts;
    double variance_floor; /* <= 0 selects 1e-6 * range^2 */
    uint64_t seed;
} mgroc_em_config;

MGROC_API void mgroc_em_config_init(mgroc_em_config* cfg);

MGROC_API mgroc_status mgroc_gmm_create(const double* weights, const double* means, const double* variances,
                                        size_t k, mgroc_gmm** out);
/* k == 0 selects the component count by BIC over [k_min, k_max]. */
MGROC_API mgroc_status mgroc_gmm_fit(const mgroc_dataset* ds, mgroc_population population, size_t k,
                                     const mgroc_em_config* cfg, mgroc_gmm** out);
MGROC_API size_t mgroc_gmm_components(const mgroc_gmm* model);
MGROC_API mgroc_status mgroc_gmm_params(const mgroc_gmm* model, double* weights, double* means, double* variances,
                                        size_t capacity);
MGROC_API double mgroc_gmm_log_likelihood(const mgroc_gmm* model);
MGROC_API mgroc_status mgroc_gmm_pdf(const mgroc_gmm* model, double x, double* out);
MGROC_API mgroc_status mgroc_gmm_survival(const mgroc_gmm* model, double c, double* out);
MGROC_API mgroc_status mgroc_gmm_survival_inverse(const mgroc_gmm* model, double t, double* out);
/* Fills `out` with n draws from the stream identified by (seed, stream). */
MGROC_API mgroc_status mgroc_gmm_sample(const mgroc_gmm* model, uint64_t seed, uint64_t stream, double* out,
                                        size_t n);
MGROC_API mgroc_status mgroc_gmm_to_json(const mgroc_gmm* model, char** out);
MGROC_API mgroc_status mgroc_gmm_from_json(const char* json, mgroc_gmm** out);
MGROC_API void mgroc_gmm_free(mgroc_gmm* model);

/* ---- Monte Carlo ensemble --------------------------------------------- */

typedef struct mgroc_mg_config {
    size_t m;
    double alpha;
    size_t replicate_n_x; /* 0: observed size (pipeline only) */
    size_t replicate_n_y;
    size_t grid_size;
    uint64_t seed;
    mgroc_band_kind band_kind;
    int two_sided_z;
    size_t threads; /* 0: hardware concurrency */
    int keep_replicates;
} mgroc_mg_config;

MGROC_API void mgroc_mg_config_init(mgroc_mg_config* cfg);

typedef enum mgroc_series {
    MGROC_SERIES_GRID = 0,
    MGROC_SERIES_MEAN = 1,
    MGROC_SERIES_SE = 2,
    MGROC_SERIES_CI_LOWER = 3,
    MGROC_SERIES_CI_UPPER = 4,
    MGROC_SERIES_ENV_LOWER = 5,
    MGROC_SERIES_ENV_UPPER = 6,
    MGROC_SERIES_AUC_SAMPLES = 7,
    MGROC_SERIES_AUC_MW_SAMPLES = 8,
    MGROC_SERIES_REPLICATES = 9 /* row-major M x grid; empty unless kept */
} mgroc_series;

typedef struct mgroc_ensemble_summary {
    double auc_mg;
    double auc_mean;
    double auc_se;
    double auc_mw_mean;
    double z;
    size_t m;
    size_t replicate_n_x;
    size_t replicate_n_y;
    size_t grid_size;
} mgroc_ensemble_summary;

MGROC_API mgroc_status mgroc_mg_run(const mgroc_gmm* f, const mgroc_gmm* g, const mgroc_mg_config* cfg,
                                    mgroc_ensemble** out);
/* Any of f_out / g_out may be NULL. */
MGROC_API mgroc_status mgroc_mg_pipeline(const mgroc_dataset* ds, const mgroc_em_config* em,
                                         const mgroc_mg_config* mg, mgroc_gmm** f_out, mgroc_gmm** g_out,
                                         mgroc_ensemble** out);
MGROC_API size_t mgroc_ensemble_series_size(const mgroc_ensemble* e, mgroc_series series);
MGROC_API mgroc_status mgroc_ensemble_series(const mgroc_ensemble* e, mgroc_series series, double* out,
                                             size_t capacity);
MGROC_API mgroc_status mgroc_ensemble_summary_get(const mgroc_ensemble* e, mgroc_ensemble_summary* out);
MGROC_API void mgroc_ensemble_free(mgroc_ensemble* e);

/* ---- end-to-end runs and reports -------------------------------------- */

typedef struct mgroc_run_config {
    const char* input_csv;
    const char* score_col;          /* NULL: "score" */
    const char* label_col;          /* NULL: "label" */
    const char* non_diseased_label; /* NULL: "0" */
    const char* diseased_label;     /* NULL: "1" */
    const char* non_diseased_file;  /* two-file mode */
    const char* diseased_file;
    const char* estimators;         /* comma list of empirical,binormal,mg; NULL: all */
    const char* output_dir;
    const char* report_format;      /* json | csv | table; NULL: json */
    const char* pauc_intervals;     /* "lo:hi[,lo:hi...]" or NULL */
    const char* dataset_name;       /* NULL: input file name */
    mgroc_em_config em;
    mgroc_mg_config mg;
    int plots;
    int dump_replicates;
    int reproducible; /* omit timestamp and timing from the report */
} mgroc_run_config;

MGROC_API void mgroc_run_config_init(mgroc_run_config* cfg);

/* Runs the analysis and writes all outputs. On success *report_json receives
 * the report JSON and *rendered the report in the requested format; either
 * pointer may be NULL. */
MGROC_API mgroc_status mgroc_run(const mgroc_run_config* cfg, char** report_json, char** rendered);

/* Comparison matrix over several report JSON documents; format is "table" or "csv". */
MGROC_API mgroc_status mgroc_compare_table(const char* const* report_jsons, size_t n, const char* format,
                                           char** out);

#ifdef __cplusplus
}
#endif

#endif /* MGROC_H */
