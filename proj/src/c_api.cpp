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

#include "mgroc/mgroc.h"

#include "mgroc/binormal.hpp"
#include "mgroc/error.hpp"
#include "mgroc/gmm.hpp"
#include "mgroc/mg_engine.hpp"
#include "mgroc/report.hpp"
#include "mgroc/roc.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <sstream>
#include <string>

struct mgroc_dataset {
    mgroc::LabeledDataset value;
};
struct mgroc_gmm {
    mgroc::GmmModel value;
};
struct mgroc_curve {
    mgroc::RocCurveGrid value;
};
struct mgroc_ensemble {
    mgroc::MgEnsembleResult value;
};

namespace {

thread_local std::string g_last_error;

mgroc_status fail(mgroc_status status, const char* what) {
    g_last_error = what;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
mgroc_status guarded(F&& body) noexcept {
    try {
        body();
        return MGROC_OK;
    } catch (const mgroc::IoError& e) {
        return fail(MGROC_ERR_IO, e.what());
    } catch (const mgroc::NumericalError& e) {
        return fail(MGROC_ERR_NUMERICAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MGROC_ERR_INPUT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(MGROC_ERR_INPUT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MGROC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MGROC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MGROC_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw mgroc::InputError(what);
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string or_default(const char* s, const char* fallback) { return s ? std::string(s) : std::string(fallback); }

mgroc::Population population(mgroc_population p) {
    require(p == MGROC_NON_DISEASED || p == MGROC_DISEASED, "invalid population");
    return p == MGROC_DISEASED ? mgroc::Population::Diseased : mgroc::Population::NonDiseased;
}

mgroc::EmConfig em_config(const mgroc_em_config* c) {
    mgroc::EmConfig out;
    if (!c) return out;
    out.k_min = c->k_min;
    out.k_max = c->k_max;
    out.max_iter = c->max_iter;
    out.tol = c->tol;
    out.n_restarts = c->n_restarts;
    if (c->variance_floor > 0.0) out.variance_floor = c->variance_floor;
    out.seed = c->seed;
    return out;
}

mgroc::MgConfig mg_config(const mgroc_mg_config* c) {
    mgroc::MgConfig out;
    if (!c) return out;
    out.m = c->m;
    out.alpha = c->alpha;
    if (c->replicate_n_x) out.replicate_n_x = c->replicate_n_x;
    if (c->replicate_n_y) out.replicate_n_y = c->replicate_n_y;
    out.grid = mgroc::make_uniform_grid(c->grid_size);
    out.seed = c->seed;
    switch (c->band_kind) {
        case MGROC_BAND_MEAN_CI: out.band_kind = mgroc::BandKind::MeanCi; break;
        case MGROC_BAND_ENVELOPE: out.band_kind = mgroc::BandKind::QuantileEnvelope; break;
        case MGROC_BAND_BOTH: out.band_kind = mgroc::BandKind::Both; break;
        default: throw mgroc::InputError("invalid band kind");
    }
    out.two_sided_z = c->two_sided_z != 0;
    out.threads = c->threads;
    out.keep_replicates = c->keep_replicates != 0;
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::pair<double, double>> parse_intervals(const char* spec) {
    std::vector<std::pair<double, double>> out;
    if (!spec) return out;
    for (const auto& item : split(spec, ',')) {
        const auto colon = item.find(':');
        require(colon != std::string::npos, "pAUC interval must look like lo:hi");
        std::size_t used_lo = 0, used_hi = 0;
        const std::string lo_s = item.substr(0, colon), hi_s = item.substr(colon + 1);
        double lo = 0.0, hi = 0.0;
        try {
            lo = std::stod(lo_s, &used_lo);
            hi = std::stod(hi_s, &used_hi);
        } catch (const std::exception&) {
            throw mgroc::InputError("pAUC interval must look like lo:hi");
        }
        require(used_lo == lo_s.size() && used_hi == hi_s.size(), "pAUC interval must look like lo:hi");
        out.emplace_back(lo, hi);
    }
    return out;
}

template <class T>
void copy_out(std::span<const T> src, T* dst, std::size_t capacity) {
    require(dst != nullptr, "output buffer is NULL");
    require(capacity >= src.size(), "output buffer too small");
    std::copy(src.begin(), src.end(), dst);
}

}  // namespace

extern "C" {

const char* mgroc_version(void) { return MGROC_VERSION_STRING; }

const char* mgroc_last_error(void) { return g_last_error.c_str(); }

void mgroc_string_free(char* s) { std::free(s); }

mgroc_status mgroc_dataset_load_csv(const char* path, const char* score_col, const char* label_col,
                                    const char* non_diseased_label, const char* diseased_label, mgroc_dataset** out) {
    return guarded([&] {
        require(path && out, "NULL argument");
        mgroc::CsvOptions opt{or_default(score_col, "score"), or_default(label_col, "label"),
                              or_default(non_diseased_label, "0"), or_default(diseased_label, "1")};
        *out = new mgroc_dataset{mgroc::load_dataset(path, opt)};
    });
}

mgroc_status mgroc_dataset_load_pair(const char* non_diseased_path, const char* diseased_path, mgroc_dataset** out) {
    return guarded([&] {
        require(non_diseased_path && diseased_path && out, "NULL argument");
        *out = new mgroc_dataset{mgroc::load_dataset_pair(non_diseased_path, diseased_path)};
    });
}

mgroc_status mgroc_dataset_from_arrays(const double* non_diseased, size_t n_non_diseased, const double* diseased,
                                       size_t n_diseased, mgroc_dataset** out) {
    return guarded([&] {
        require(out && (non_diseased || n_non_diseased == 0) && (diseased || n_diseased == 0), "NULL argument");
        *out = new mgroc_dataset{mgroc::make_dataset({non_diseased, n_non_diseased}, {diseased, n_diseased})};
    });
}

size_t mgroc_dataset_size(const mgroc_dataset* ds, mgroc_population p) {
    if (!ds || (p != MGROC_NON_DISEASED && p != MGROC_DISEASED)) return 0;
    return ds->value.sample(p == MGROC_DISEASED ? mgroc::Population::Diseased : mgroc::Population::NonDiseased).size();
}

mgroc_status mgroc_dataset_scores(const mgroc_dataset* ds, mgroc_population p, double* out, size_t capacity) {
    return guarded([&] {
        require(ds != nullptr, "NULL dataset");
        copy_out(ds->value.sample(population(p)).scores(), out, capacity);
    });
}

void mgroc_dataset_free(mgroc_dataset* ds) { delete ds; }

mgroc_status mgroc_curve_empirical(const mgroc_dataset* ds, size_t grid_size, mgroc_curve** out) {
    return guarded([&] {
        require(ds && out, "NULL argument");
        *out = new mgroc_curve{mgroc::empirical_roc(ds->value, mgroc::make_uniform_grid(grid_size))};
    });
}

mgroc_status mgroc_curve_functional(const mgroc_gmm* f, const mgroc_gmm* g, size_t grid_size, mgroc_curve** out) {
    return guarded([&] {
        require(f && g && out, "NULL argument");
        *out = new mgroc_curve{mgroc::functional_roc(f->value, g->value, mgroc::make_uniform_grid(grid_size))};
    });
}

size_t mgroc_curve_size(const mgroc_curve* curve) { return curve ? curve->value.grid().count() : 0; }

mgroc_status mgroc_curve_values(const mgroc_curve* curve, double* t, double* tpr, size_t capacity) {
    return guarded([&] {
        require(curve != nullptr, "NULL curve");
        if (t) copy_out(curve->value.grid().points(), t, capacity);
        if (tpr) copy_out(curve->value.tpr(), tpr, capacity);
    });
}

mgroc_status mgroc_curve_auc(const mgroc_curve* curve, double* out) {
    return guarded([&] {
        require(curve && out, "NULL argument");
        *out = mgroc::auc_trapezoid(curve->value);
    });
}

mgroc_status mgroc_curve_pauc(const mgroc_curve* curve, double t_lo, double t_hi, double* out) {
    return guarded([&] {
        require(curve && out, "NULL argument");
        *out = mgroc::pauc(curve->value, t_lo, t_hi);
    });
}

void mgroc_curve_free(mgroc_curve* curve) { delete curve; }

mgroc_status mgroc_auc_mann_whitney(const mgroc_dataset* ds, double* out) {
    return guarded([&] {
        require(ds && out, "NULL argument");
        *out = mgroc::auc_mann_whitney(ds->value);
    });
}

mgroc_status mgroc_binormal_fit(const mgroc_dataset* ds, mgroc_binormal* out) {
    return guarded([&] {
        require(ds && out, "NULL argument");
        const auto p = mgroc::fit_binormal(ds->value);
        *out = mgroc_binormal{p.a, p.b, p.mu_n, p.sigma_n, p.mu_d, p.sigma_d};
    });
}

mgroc_status mgroc_binormal_auc(const mgroc_binormal* params, double* out) {
    return guarded([&] {
        require(params && out, "NULL argument");
        *out = mgroc::binormal_auc(mgroc::BinormalParams{params->a, params->b, params->mu_n, params->sigma_n,
                                                         params->mu_d, params->sigma_d});
    });
}

mgroc_status mgroc_curve_binormal(const mgroc_binormal* params, size_t grid_size, mgroc_curve** out) {
    return guarded([&] {
        require(params && out, "NULL argument");
        require(params->b > 0.0, "binormal slope b must be positive");
        const mgroc::BinormalParams p{params->a, params->b, params->mu_n, params->sigma_n, params->mu_d, params->sigma_d};
        *out = new mgroc_curve{mgroc::binormal_curve(p, mgroc::make_uniform_grid(grid_size))};
    });
}

void mgroc_em_config_init(mgroc_em_config* cfg) {
    if (!cfg) return;
    const mgroc::EmConfig d;
    *cfg = mgroc_em_config{d.k_min, d.k_max, d.max_iter, d.tol, d.n_restarts, 0.0, d.seed};
}

mgroc_status mgroc_gmm_create(const double* weights, const double* means, const double* variances, size_t k,
                              mgroc_gmm** out) {
    return guarded([&] {
        require(weights && means && variances && out, "NULL argument");
        *out = new mgroc_gmm{mgroc::GmmModel({weights, weights + k}, {means, means + k}, {variances, variances + k})};
    });
}

mgroc_status mgroc_gmm_fit(const mgroc_dataset* ds, mgroc_population p, size_t k, const mgroc_em_config* cfg,
                           mgroc_gmm** out) {
    return guarded([&] {
        require(ds && out, "NULL argument");
        const auto& sample = ds->value.sample(population(p));
        const auto config = em_config(cfg);
        *out = new mgroc_gmm{k == 0 ? mgroc::select_k(sample, config) : mgroc::fit_em(sample, k, config)};
    });
}

size_t mgroc_gmm_components(const mgroc_gmm* model) { return model ? model->value.k() : 0; }

mgroc_status mgroc_gmm_params(const mgroc_gmm* model, double* weights, double* means, double* variances,
                              size_t capacity) {
    return guarded([&] {
        require(model != nullptr, "NULL model");
        if (weights) copy_out(model->value.weights(), weights, capacity);
        if (means) copy_out(model->value.means(), means, capacity);
        if (variances) copy_out(model->value.variances(), variances, capacity);
    });
}

double mgroc_gmm_log_likelihood(const mgroc_gmm* model) { return model ? model->value.log_likelihood() : 0.0; }

mgroc_status mgroc_gmm_pdf(const mgroc_gmm* model, double x, double* out) {
    return guarded([&] {
        require(model && out, "NULL argument");
        require(std::isfinite(x), "x must be finite");
        *out = mgroc::pdf(model->value, x);
    });
}

mgroc_status mgroc_gmm_survival(const mgroc_gmm* model, double c, double* out) {
    return guarded([&] {
        require(model && out, "NULL argument");
        require(std::isfinite(c), "threshold must be finite");
        *out = mgroc::survival(model->value, c);
    });
}

mgroc_status mgroc_gmm_survival_inverse(const mgroc_gmm* model, double t, double* out) {
    return guarded([&] {
        require(model && out, "NULL argument");
        *out = mgroc::survival_inverse(model->value, t);
    });
}

mgroc_status mgroc_gmm_sample(const mgroc_gmm* model, uint64_t seed, uint64_t stream, double* out, size_t n) {
    return guarded([&] {
        require(model && out, "NULL argument");
        auto rng = mgroc::derive_stream(seed, stream);
        mgroc::sample_into(model->value, {out, n}, rng);
    });
}

mgroc_status mgroc_gmm_to_json(const mgroc_gmm* model, char** out) {
    return guarded([&] {
        require(model && out, "NULL argument");
        *out = dup_string(mgroc::to_json(model->value));
    });
}

mgroc_status mgroc_gmm_from_json(const char* json, mgroc_gmm** out) {
    return guarded([&] {
        require(json && out, "NULL argument");
        *out = new mgroc_gmm{mgroc::gmm_from_json(json)};
    });
}

void mgroc_gmm_free(mgroc_gmm* model) { delete model; }

void mgroc_mg_config_init(mgroc_mg_config* cfg) {
    if (!cfg) return;
    const mgroc::MgConfig d;
    *cfg = mgroc_mg_config{d.m,         d.alpha,         0, 0, d.grid.count(), d.seed, MGROC_BAND_BOTH,
                           d.two_sided_z, d.threads, d.keep_replicates};
}

mgroc_status mgroc_mg_run(const mgroc_gmm* f, const mgroc_gmm* g, const mgroc_mg_config* cfg, mgroc_ensemble** out) {
    return guarded([&] {
        require(f && g && out, "NULL argument");
        *out = new mgroc_ensemble{mgroc::run_mg(f->value, g->value, mg_config(cfg))};
    });
}

mgroc_status mgroc_mg_pipeline(const mgroc_dataset* ds, const mgroc_em_config* em, const mgroc_mg_config* mg,
                               mgroc_gmm** f_out, mgroc_gmm** g_out, mgroc_ensemble** out) {
    return guarded([&] {
        require(ds && out, "NULL argument");
        auto r = mgroc::mg_pipeline(ds->value, em_config(em), mg_config(mg));
        auto ens = std::make_unique<mgroc_ensemble>(mgroc_ensemble{std::move(r.ensemble)});
        auto f = f_out ? std::make_unique<mgroc_gmm>(mgroc_gmm{std::move(r.f_model)}) : nullptr;
        auto g = g_out ? std::make_unique<mgroc_gmm>(mgroc_gmm{std::move(r.g_model)}) : nullptr;
        *out = ens.release();
        if (f_out) *f_out = f.release();
        if (g_out) *g_out = g.release();
    });
}

namespace {

std::span<const double> series_view(const mgroc::MgEnsembleResult& e, mgroc_series s) {
    switch (s) {
        case MGROC_SERIES_GRID: return e.mean_curve.grid().points();
        case MGROC_SERIES_MEAN: return e.mean_curve.tpr();
        case MGROC_SERIES_SE: return e.se;
        case MGROC_SERIES_CI_LOWER: return e.ci_lower;
        case MGROC_SERIES_CI_UPPER: return e.ci_upper;
        case MGROC_SERIES_ENV_LOWER: return e.env_lower;
        case MGROC_SERIES_ENV_UPPER: return e.env_upper;
        case MGROC_SERIES_AUC_SAMPLES: return e.auc_samples;
        case MGROC_SERIES_AUC_MW_SAMPLES: return e.auc_mw_samples;
        case MGROC_SERIES_REPLICATES: return e.replicates;
    }
    throw mgroc::InputError("invalid series");
}

}  // namespace

size_t mgroc_ensemble_series_size(const mgroc_ensemble* e, mgroc_series series) {
    if (!e) return 0;
    try {
        return series_view(e->value, series).size();
    } catch (const std::exception&) {
        return 0;
    }
}

mgroc_status mgroc_ensemble_series(const mgroc_ensemble* e, mgroc_series series, double* out, size_t capacity) {
    return guarded([&] {
        require(e != nullptr, "NULL ensemble");
        copy_out(series_view(e->value, series), out, capacity);
    });
}

mgroc_status mgroc_ensemble_summary_get(const mgroc_ensemble* e, mgroc_ensemble_summary* out) {
    return guarded([&] {
        require(e && out, "NULL argument");
        const auto& v = e->value;
        *out = mgroc_ensemble_summary{v.auc_mg, v.auc_mean,      v.auc_se,        v.auc_mw_mean,
                                      v.z,      v.m,             v.replicate_n_x, v.replicate_n_y,
                                      v.mean_curve.grid().count()};
    });
}

void mgroc_ensemble_free(mgroc_ensemble* e) { delete e; }

void mgroc_run_config_init(mgroc_run_config* cfg) {
    if (!cfg) return;
    *cfg = mgroc_run_config{};
    mgroc_em_config_init(&cfg->em);
    mgroc_mg_config_init(&cfg->mg);
}

mgroc_status mgroc_run(const mgroc_run_config* cfg, char** report_json, char** rendered) {
    return guarded([&] {
        require(cfg != nullptr, "NULL config");
        mgroc::RunConfig rc;
        if (cfg->input_csv) rc.input.csv = cfg->input_csv;
        rc.input.csv_options = mgroc::CsvOptions{or_default(cfg->score_col, "score"), or_default(cfg->label_col, "label"),
                                                 or_default(cfg->non_diseased_label, "0"),
                                                 or_default(cfg->diseased_label, "1")};
        if (cfg->non_diseased_file) rc.input.non_diseased_file = cfg->non_diseased_file;
        if (cfg->diseased_file) rc.input.diseased_file = cfg->diseased_file;
        if (cfg->estimators) rc.estimators = split(cfg->estimators, ',');
        if (cfg->output_dir) rc.output_dir = cfg->output_dir;
        rc.format = mgroc::report_format_from_string(or_default(cfg->report_format, "json"));
        rc.pauc_intervals = parse_intervals(cfg->pauc_intervals);
        if (cfg->dataset_name) rc.dataset_name = cfg->dataset_name;
        rc.em = em_config(&cfg->em);
        rc.mg = mg_config(&cfg->mg);
        rc.plots = cfg->plots != 0;
        rc.dump_replicates = cfg->dump_replicates != 0;
        rc.reproducible = cfg->reproducible != 0;

        const auto outcome = mgroc::run_analysis(rc);
        std::string text;
        switch (rc.format) {
            case mgroc::ReportFormat::Json: text = mgroc::report_to_json(outcome.report); break;
            case mgroc::ReportFormat::Csv: text = mgroc::render_report_csv(outcome.report); break;
            case mgroc::ReportFormat::Table: text = mgroc::render_report_text(outcome.report); break;
        }
        // Allocate both before handing either out.
        std::unique_ptr<char, decltype(&std::free)> j(report_json ? dup_string(mgroc::report_to_json(outcome.report))
                                                                  : nullptr,
                                                      &std::free);
        std::unique_ptr<char, decltype(&std::free)> r(rendered ? dup_string(text) : nullptr, &std::free);
        if (report_json) *report_json = j.release();
        if (rendered) *rendered = r.release();
    });
}

mgroc_status mgroc_compare_table(const char* const* report_jsons, size_t n, const char* format, char** out) {
    return guarded([&] {
        require(out != nullptr && (report_jsons || n == 0), "NULL argument");
        std::vector<mgroc::Report> reports;
        for (size_t i = 0; i < n; ++i) {
            require(report_jsons[i] != nullptr, "NULL report");
            reports.push_back(mgroc::report_from_json(report_jsons[i]));
        }
        const auto table = mgroc::compare_table(reports);
        const std::string f = or_default(format, "table");
        if (f == "table") *out = dup_string(mgroc::render_table_text(table));
        else if (f == "csv") *out = dup_string(mgroc::render_table_csv(table));
        else throw mgroc::InputError("compare format must be 'table' or 'csv'");
    });
}

}  // extern "C"
