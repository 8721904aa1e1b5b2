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

#include "mgroc/binormal.hpp"
#include "mgroc/data_model.hpp"
#include "mgroc/gmm.hpp"
#include "mgroc/mg_engine.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mgroc {

inline constexpr int kReportSchemaVersion = 1;

struct PaucValue {
    double t_lo;
    double t_hi;
    double value;
    bool operator==(const PaucValue&) const = default;
};

struct EstimatorEntry {
    std::string name;  // "empirical", "binormal" or "mg"
    double auc_trapezoid = 0.0;
    std::optional<double> auc_mann_whitney;
    std::vector<PaucValue> pauc;
    bool operator==(const EstimatorEntry&) const = default;
};

struct ModelSummary {
    std::string population;
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> variances;
    double log_likelihood = 0.0;
    std::size_t n_train = 0;
    double bic = 0.0;
    bool operator==(const ModelSummary&) const = default;
};

struct BandSummary {
    std::string band_kind;
    double z = 0.0;
    double mean_ci_width = 0.0;
    double mean_envelope_width = 0.0;
    double auc_se = 0.0;
    double auc_mean = 0.0;
    double auc_q_lower = 0.0;  // alpha/2 quantile of replicate AUCs
    double auc_q_upper = 0.0;
    bool operator==(const BandSummary&) const = default;
};

struct RunMetadata {
    std::uint64_t seed = 0;
    std::size_t mc_reps = 0;
    double alpha = 0.0;
    std::size_t grid_size = 0;
    std::size_t k_max = 0;
    std::optional<std::size_t> k_non_diseased;
    std::optional<std::size_t> k_diseased;
    std::string version;
    std::optional<std::string> timestamp;        // omitted in reproducible mode
    std::optional<double> elapsed_seconds;       // omitted in reproducible mode
    bool operator==(const RunMetadata&) const = default;
};

struct Report {
    int schema_version = kReportSchemaVersion;
    std::string dataset;
    std::size_t n_non_diseased = 0;
    std::size_t n_diseased = 0;
    std::vector<EstimatorEntry> estimators;
    std::optional<BinormalParams> binormal;
    std::vector<ModelSummary> models;
    std::optional<BandSummary> bands;
    RunMetadata metadata;

    const EstimatorEntry* find(const std::string& name) const;
    bool operator==(const Report&) const = default;
};

std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

enum class ReportFormat { Json, Csv, Table };
ReportFormat report_format_from_string(const std::string& s);

/// Matrix of estimators x (trapezoidal, Mann-Whitney) per dataset, with the
/// non-empirical estimator(s) closest to the empirical trapezoidal AUC marked.
struct CompareTable {
    struct Cell {
        std::optional<double> trapezoidal;
        std::optional<double> mann_whitney;
        bool closest = false;
    };
    std::vector<std::string> datasets;
    std::vector<std::string> estimators;
    std::vector<std::vector<Cell>> cells;  // [estimator][dataset]
    std::vector<std::string> footnotes;
};

CompareTable compare_table(const std::vector<Report>& reports);
std::string render_table_text(const CompareTable& table);
std::string render_table_csv(const CompareTable& table);

/// Text rendering of a single report (comparison matrix plus model and band
/// summaries).
std::string render_report_text(const Report& report);
std::string render_report_csv(const Report& report);

struct InputSpec {
    std::filesystem::path csv;
    CsvOptions csv_options;
    std::filesystem::path non_diseased_file;  // two-file mode when both set
    std::filesystem::path diseased_file;
};

struct RunConfig {
    InputSpec input;
    std::vector<std::string> estimators{"empirical", "binormal", "mg"};
    EmConfig em;
    MgConfig mg;
    std::filesystem::path output_dir;
    bool plots = false;
    ReportFormat format = ReportFormat::Json;
    bool dump_replicates = false;
    bool reproducible = false;
    std::vector<std::pair<double, double>> pauc_intervals;
    /// Label used in the report; defaults to the input file name.
    std::string dataset_name;

    void validate() const;
};

struct RunOutcome {
    Report report;
    std::vector<std::filesystem::path> files;
};

/// Loads the data, runs the selected estimators on one grid and writes the
/// report, curve CSVs and optional plots. Nothing is written unless loading
/// and estimation succeed.
RunOutcome run_analysis(const RunConfig& config);

/// Estimation only, on an already loaded dataset; no files are touched.
Report analyze(const LabeledDataset& dataset, const RunConfig& config);

}  // namespace mgroc
