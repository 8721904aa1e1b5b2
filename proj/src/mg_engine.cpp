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

#include "mgroc/mg_engine.hpp"

#include "mgroc/error.hpp"
#include "mgroc/normal.hpp"
#include "mgroc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mgroc {

const char* to_string(BandKind kind) noexcept {
    switch (kind) {
        case BandKind::MeanCi: return "mean_ci";
        case BandKind::QuantileEnvelope: return "envelope";
        case BandKind::Both: return "both";
    }
    return "unknown";
}

BandKind band_kind_from_string(const std::string& s) {
    if (s == "mean_ci") return BandKind::MeanCi;
    if (s == "envelope") return BandKind::QuantileEnvelope;
    if (s == "both") return BandKind::Both;
    throw InputError("unknown band kind '" + s + "'");
}

void MgConfig::validate() const {
    if (m < 2) throw InputError("ensemble size M must be at least 2 (standard error undefined for M=1)");
    if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("alpha must lie in (0, 0.5)");
    if (replicate_n_x && *replicate_n_x < 2) throw InputError("replicate_n_x must be at least 2");
    if (replicate_n_y && *replicate_n_y < 2) throw InputError("replicate_n_y must be at least 2");
}

namespace {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> v, double p) {
    const double h = static_cast<double>(v.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

}  // namespace

MgEnsembleResult run_mg(const GmmModel& f_model, const GmmModel& g_model, const MgConfig& config) {
    config.validate();
    if (!config.replicate_n_x || !config.replicate_n_y) {
        throw InputError("run_mg needs explicit replicate sample sizes");
    }
    const std::size_t m = config.m;
    const std::size_t nx = *config.replicate_n_x;
    const std::size_t ny = *config.replicate_n_y;
    const FprGrid& grid = config.grid;
    const std::size_t g = grid.count();

    std::vector<double> matrix(m * g);
    std::vector<double> auc(m), auc_mw(m);

    std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    workers = std::clamp<std::size_t>(workers, 1, m);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](std::size_t first) {
        try {
            std::vector<double> x(nx), y(ny);
            for (std::size_t l = first; l < m; l += workers) {
                RngStream rng = derive_stream(config.seed, l);
                sample_into(f_model, x, rng);
                sample_into(g_model, y, rng);
                std::sort(x.begin(), x.end());
                std::sort(y.begin(), y.end());
                std::span<double> row(matrix.data() + l * g, g);
                empirical_roc_sorted(x, y, grid, row);
                auc[l] = auc_trapezoid(grid.points(), row);
                auc_mw[l] = auc_mann_whitney_sorted(x, y);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);

    const auto md = static_cast<double>(m);
    const double z = normal::quantile(config.two_sided_z ? 1.0 - 0.5 * config.alpha : 1.0 - config.alpha);

    std::vector<double> mean(g, 0.0), se(g, 0.0);
    std::vector<double> ci_lo(g), ci_hi(g), env_lo(g), env_hi(g);
    std::vector<double> column(m);
    for (std::size_t i = 0; i < g; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < m; ++l) s += matrix[l * g + i];
        mean[i] = std::min(s / md, 1.0);
    }

    for (std::size_t i = 0; i < g; ++i) {
        double ss = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            const double d = matrix[l * g + i] - mean[i];
            ss += d * d;
            column[l] = matrix[l * g + i];
        }
        se[i] = std::sqrt(ss / (md - 1.0));
        const double half = z * se[i] / std::sqrt(md);
        ci_lo[i] = std::clamp(mean[i] - half, 0.0, 1.0);
        ci_hi[i] = std::clamp(mean[i] + half, 0.0, 1.0);

        std::sort(column.begin(), column.end());
        // A skewed column can put the mean outside the quantile pair; the band
        // is widened to contain it.
        env_lo[i] = std::clamp(std::min(quantile_sorted(column, 0.5 * config.alpha), mean[i]), 0.0, 1.0);
        env_hi[i] = std::clamp(std::max(quantile_sorted(column, 1.0 - 0.5 * config.alpha), mean[i]), 0.0, 1.0);
    }

    MgEnsembleResult out{.mean_curve = RocCurveGrid(grid, std::move(mean), CurveLabel::Mg),
                         .se = std::move(se),
                         .ci_lower = std::move(ci_lo),
                         .ci_upper = std::move(ci_hi),
                         .env_lower = std::move(env_lo),
                         .env_upper = std::move(env_hi)};
    out.auc_mg = auc_trapezoid(out.mean_curve);

    double sa = 0.0, smw = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        sa += auc[l];
        smw += auc_mw[l];
    }
    out.auc_mean = sa / md;
    out.auc_mw_mean = smw / md;
    double ss = 0.0;
    for (double a : auc) ss += (a - out.auc_mean) * (a - out.auc_mean);
    out.auc_se = std::sqrt(ss / (md - 1.0));
    out.auc_samples = std::move(auc);
    out.auc_mw_samples = std::move(auc_mw);
    out.z = z;
    out.m = m;
    out.replicate_n_x = nx;
    out.replicate_n_y = ny;
    if (config.keep_replicates) out.replicates = std::move(matrix);
    return out;
}

MgPipelineResult mg_pipeline(const LabeledDataset& dataset, const EmConfig& em_config, MgConfig mg_config) {
    mg_config.validate();
    GmmModel f = select_k(dataset.non_diseased(), em_config);
    GmmModel g = select_k(dataset.diseased(), em_config);
    if (!mg_config.replicate_n_x) mg_config.replicate_n_x = dataset.non_diseased().size();
    if (!mg_config.replicate_n_y) mg_config.replicate_n_y = dataset.diseased().size();
    auto ensemble = run_mg(f, g, mg_config);
    return MgPipelineResult{std::move(f), std::move(g), std::move(ensemble)};
}

double second_difference_variation(std::span<const double> values) noexcept {
    double tv = 0.0;
    for (std::size_t i = 2; i < values.size(); ++i) {
        tv += std::fabs((values[i] - values[i - 1]) - (values[i - 1] - values[i - 2]));
    }
    return tv;
}

}  // namespace mgroc
