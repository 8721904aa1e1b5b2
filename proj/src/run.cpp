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

#include "mgroc/error.hpp"
#include "mgroc/report.hpp"
#include "mgroc/roc.hpp"

#include "svg_plot.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace mgroc {

void RunConfig::validate() const {
    if (estimators.empty()) throw InputError("select at least one estimator");
    std::set<std::string> seen;
    for (const auto& e : estimators) {
        if (e != "empirical" && e != "binormal" && e != "mg") throw InputError("unknown estimator '" + e + "'");
        if (!seen.insert(e).second) throw InputError("estimator '" + e + "' listed twice");
    }
    em.validate();
    mg.validate();
    for (const auto& [lo, hi] : pauc_intervals) {
        if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) throw InputError("pAUC interval must satisfy 0 <= lo < hi <= 1");
    }
}

namespace {

struct Analysis {
    Report report;
    std::optional<RocCurveGrid> empirical;
    std::vector<OperatingPoint> empirical_points;
    std::optional<BinormalParams> binormal_params;
    std::optional<RocCurveGrid> binormal;
    std::optional<MgPipelineResult> mg;
};

std::vector<PaucValue> paucs(const RocCurveGrid& curve, const RunConfig& config) {
    std::vector<PaucValue> out;
    for (const auto& [lo, hi] : config.pauc_intervals) out.push_back({lo, hi, pauc(curve, lo, hi)});
    return out;
}

double quantile7(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double h = static_cast<double>(v.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

double mean_gap(std::span<const double> lo, std::span<const double> hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) s += hi[i] - lo[i];
    return s / static_cast<double>(lo.size());
}

ModelSummary summarize(const GmmModel& m, Population p) {
    return ModelSummary{to_string(p),
                        {m.weights().begin(), m.weights().end()},
                        {m.means().begin(), m.means().end()},
                        {m.variances().begin(), m.variances().end()},
                        m.log_likelihood(),
                        m.n_train(),
                        m.bic()};
}

std::string dataset_label(const LabeledDataset& d, const RunConfig& c) {
    if (!c.dataset_name.empty()) return c.dataset_name;
    const auto& a = d.non_diseased().source_name();
    const auto& b = d.diseased().source_name();
    return a == b ? a : a + "|" + b;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Analysis analyze_full(const LabeledDataset& dataset, const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    Analysis a;
    Report& r = a.report;
    r.dataset = dataset_label(dataset, config);
    r.n_non_diseased = dataset.non_diseased().size();
    r.n_diseased = dataset.diseased().size();
    const FprGrid& grid = config.mg.grid;

    for (const auto& name : config.estimators) {
        EstimatorEntry e;
        e.name = name;
        if (name == "empirical") {
            a.empirical = empirical_roc(dataset, grid);
            a.empirical_points = empirical_roc_points(dataset);
            e.auc_trapezoid = auc_trapezoid(*a.empirical);
            e.auc_mann_whitney = auc_mann_whitney(dataset);
            e.pauc = paucs(*a.empirical, config);
        } else if (name == "binormal") {
            a.binormal_params = fit_binormal(dataset);
            a.binormal = binormal_curve(*a.binormal_params, grid);
            e.auc_trapezoid = auc_trapezoid(*a.binormal);
            // The closed form stands in for the Mann-Whitney column.
            e.auc_mann_whitney = binormal_auc(*a.binormal_params);
            e.pauc = paucs(*a.binormal, config);
            r.binormal = a.binormal_params;
        } else {
            MgConfig mg = config.mg;
            mg.keep_replicates = mg.keep_replicates || config.dump_replicates;
            a.mg = mg_pipeline(dataset, config.em, mg);
            const auto& ens = a.mg->ensemble;
            e.auc_trapezoid = ens.auc_mg;
            e.auc_mann_whitney = ens.auc_mw_mean;
            e.pauc = paucs(ens.mean_curve, config);
            r.models = {summarize(a.mg->f_model, Population::NonDiseased),
                        summarize(a.mg->g_model, Population::Diseased)};
            r.bands = BandSummary{to_string(config.mg.band_kind),
                                  ens.z,
                                  mean_gap(ens.ci_lower, ens.ci_upper),
                                  mean_gap(ens.env_lower, ens.env_upper),
                                  ens.auc_se,
                                  ens.auc_mean,
                                  quantile7(ens.auc_samples, 0.5 * config.mg.alpha),
                                  quantile7(ens.auc_samples, 1.0 - 0.5 * config.mg.alpha)};
            r.metadata.k_non_diseased = a.mg->f_model.k();
            r.metadata.k_diseased = a.mg->g_model.k();
        }
        r.estimators.push_back(std::move(e));
    }

    r.metadata.seed = config.mg.seed;
    r.metadata.mc_reps = config.mg.m;
    r.metadata.alpha = config.mg.alpha;
    r.metadata.grid_size = grid.count();
    r.metadata.k_max = config.em.k_max;
    r.metadata.version = MGROC_VERSION_STRING;
    if (!config.reproducible) {
        r.metadata.timestamp = utc_timestamp();
        r.metadata.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return a;
}

LabeledDataset load_input(const InputSpec& in) {
    const bool pair = !in.non_diseased_file.empty() || !in.diseased_file.empty();
    if (pair) {
        if (in.non_diseased_file.empty() || in.diseased_file.empty() || !in.csv.empty()) {
            throw InputError("two-file mode needs both population files and no CSV input");
        }
        return load_dataset_pair(in.non_diseased_file, in.diseased_file);
    }
    if (in.csv.empty()) throw InputError("no input given");
    return load_dataset(in.csv, in.csv_options);
}

std::string curve_csv(const RocCurveGrid& c) {
    std::ostringstream os;
    os << std::setprecision(17) << "t,tpr\n";
    for (std::size_t i = 0; i < c.grid().count(); ++i) os << c.grid()[i] << ',' << c.tpr()[i] << '\n';
    return os.str();
}

std::string mg_curve_csv(const MgEnsembleResult& e) {
    std::ostringstream os;
    os << std::setprecision(17) << "t,tpr,se,ci_lower,ci_upper,env_lower,env_upper\n";
    const auto& g = e.mean_curve.grid();
    for (std::size_t i = 0; i < g.count(); ++i) {
        os << g[i] << ',' << e.mean_curve.tpr()[i] << ',' << e.se[i] << ',' << e.ci_lower[i] << ',' << e.ci_upper[i]
           << ',' << e.env_lower[i] << ',' << e.env_upper[i] << '\n';
    }
    return os.str();
}

std::string replicates_csv(const MgEnsembleResult& e) {
    std::ostringstream os;
    os << std::setprecision(17) << "replicate";
    const auto& g = e.mean_curve.grid();
    for (std::size_t i = 0; i < g.count(); ++i) os << ",t=" << g[i];
    os << '\n';
    for (std::size_t l = 0; l < e.m; ++l) {
        os << l;
        for (std::size_t i = 0; i < g.count(); ++i) os << ',' << e.replicates[l * g.count() + i];
        os << '\n';
    }
    return os.str();
}

std::vector<svg::Series> roc_series(const Analysis& a, BandKind kind) {
    std::vector<svg::Series> s;
    const auto from_curve = [](const RocCurveGrid& c, std::string name, std::string color, bool dashed, double w) {
        return svg::Series{std::move(name), {c.grid().points().begin(), c.grid().points().end()},
                           {c.tpr().begin(), c.tpr().end()}, std::move(color), dashed, w};
    };
    if (a.mg) {
        const auto& e = a.mg->ensemble;
        const auto& g = e.mean_curve.grid().points();
        const std::vector<double> gx(g.begin(), g.end());
        if (kind != BandKind::MeanCi) {
            s.push_back({"MG 95% envelope", gx, e.env_lower, "#1f77b4", true, 1.0});
            s.push_back({"", gx, e.env_upper, "#1f77b4", true, 1.0});
        }
        if (kind != BandKind::QuantileEnvelope) {
            s.push_back({"MG mean CI", gx, e.ci_lower, "#17becf", true, 0.8});
            s.push_back({"", gx, e.ci_upper, "#17becf", true, 0.8});
        }
    }
    if (!a.empirical_points.empty()) {
        svg::Series emp{"empirical", {}, {}, "black", false, 1.2};
        for (const auto& p : a.empirical_points) {
            emp.x.push_back(p.fpr);
            emp.y.push_back(p.tpr);
        }
        s.push_back(std::move(emp));
    }
    if (a.binormal) s.push_back(from_curve(*a.binormal, "binormal", "#d62728", false, 1.5));
    if (a.mg) s.push_back(from_curve(a.mg->ensemble.mean_curve, "MG", "#1f77b4", false, 2.0));
    return s;
}

}  // namespace

Report analyze(const LabeledDataset& dataset, const RunConfig& config) {
    return analyze_full(dataset, config).report;
}

RunOutcome run_analysis(const RunConfig& config) {
    config.validate();
    if (config.output_dir.empty()) throw InputError("no output directory given");
    const LabeledDataset dataset = load_input(config.input);
    const Analysis a = analyze_full(dataset, config);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec || !std::filesystem::is_directory(config.output_dir)) {
        throw IoError("cannot create output directory '" + config.output_dir.string() + "'");
    }
    RunOutcome out{a.report, {}};
    const auto emit = [&](const std::string& name, const std::string& content) {
        const auto path = config.output_dir / name;
        svg::write_file(path, content);
        out.files.push_back(path);
    };

    emit("report.json", report_to_json(a.report));
    if (config.format == ReportFormat::Csv) emit("report.csv", render_report_csv(a.report));
    if (config.format == ReportFormat::Table) emit("report.txt", render_report_text(a.report));
    if (a.empirical) emit("curve_empirical.csv", curve_csv(*a.empirical));
    if (a.binormal) emit("curve_binormal.csv", curve_csv(*a.binormal));
    if (a.mg) {
        emit("curve_mg.csv", mg_curve_csv(a.mg->ensemble));
        emit("model_non_diseased.json", to_json(a.mg->f_model) + "\n");
        emit("model_diseased.json", to_json(a.mg->g_model) + "\n");
        if (config.dump_replicates) emit("replicates.csv", replicates_csv(a.mg->ensemble));
    }
    if (config.plots) {
        emit("histogram_non_diseased.svg",
             svg::histogram(dataset.non_diseased().scores(), a.report.dataset + ": non-diseased", "#2ca02c"));
        emit("histogram_diseased.svg",
             svg::histogram(dataset.diseased().scores(), a.report.dataset + ": diseased", "#d62728"));
        emit("roc.svg", svg::roc_plot(roc_series(a, config.mg.band_kind), a.report.dataset + ": ROC"));
    }
    return out;
}

}  // namespace mgroc
