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

#pragma once

#include "mgroc/data_model.hpp"
#include "mgroc/gmm.hpp"
#include "mgroc/roc.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mgroc {

enum class BandKind { MeanCi, QuantileEnvelope, Both };

const char* to_string(BandKind kind) noexcept;
BandKind band_kind_from_string(const std::string& s);

struct MgConfig {
    std::size_t m = 1000;  // ensemble size
    double alpha = 0.05;
    /// Simulated sample sizes per replicate. mg_pipeline fills unset values
    /// with the observed sizes; run_mg requires both to be set.
    std::optional<std::size_t> replicate_n_x;
    std::optional<std::size_t> replicate_n_y;
    FprGrid grid = make_uniform_grid(kDefaultGridSize);
    std::uint64_t seed = 20160917;
    BandKind band_kind = BandKind::Both;
    /// Use z_{1-alpha/2} for the mean-curve interval; false gives z_{1-alpha}.
    bool two_sided_z = true;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
    /// Keep the full M x grid replicate matrix in the result.
    bool keep_replicates = false;

    void validate() const;
};

struct MgEnsembleResult {
    RocCurveGrid mean_curve;
    std::vector<double> se{};  // per-t standard deviation across replicates
    std::vector<double> ci_lower{};
    std::vector<double> ci_upper{};
    std::vector<double> env_lower{};
    std::vector<double> env_upper{};
    std::vector<double> auc_samples{};     // trapezoidal AUC of each replicate
    std::vector<double> auc_mw_samples{};  // Mann-Whitney AUC of each replicate
    double auc_mg = 0.0;                 // trapezoidal area of mean_curve
    double auc_mean = 0.0;
    double auc_se = 0.0;
    double auc_mw_mean = 0.0;
    double z = 0.0;
    std::size_t m = 0;
    std::size_t replicate_n_x = 0;
    std::size_t replicate_n_y = 0;
    std::vector<double> replicates{};  // row-major M x grid, only if requested

    bool operator==(const MgEnsembleResult&) const = default;
};

/// Simulates M replicate datasets from the two mixtures, builds each
/// replicate's empirical ROC on the shared grid, and summarizes the ensemble.
/// Output depends only on (models, config minus threads).
MgEnsembleResult run_mg(const GmmModel& f_model, const GmmModel& g_model, const MgConfig& config);

struct MgPipelineResult {
    GmmModel f_model;
    GmmModel g_model;
    MgEnsembleResult ensemble;
};

/// Fits both populations with select_k, then runs the ensemble. Replicate
/// sizes default to the observed sample sizes.
MgPipelineResult mg_pipeline(const LabeledDataset& dataset, const EmConfig& em_config, MgConfig mg_config);

/// sum_i |d_{i+1} - d_i| where d are first differences of `values`.
double second_difference_variation(std::span<const double> values) noexcept;

}  // namespace mgroc
