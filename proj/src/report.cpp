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

#include "mgroc/report.hpp"

#include "mgroc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace mgroc {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const PaucValue& p) { j = json{{"t_lo", p.t_lo}, {"t_hi", p.t_hi}, {"value", p.value}}; }
void from_json(const json& j, PaucValue& p) {
    p = PaucValue{j.at("t_lo").get<double>(), j.at("t_hi").get<double>(), j.at("value").get<double>()};
}

void to_json(json& j, const EstimatorEntry& e) {
    j = json{{"name", e.name},
             {"auc_trapezoidal", e.auc_trapezoid},
             {"auc_mann_whitney", opt(e.auc_mann_whitney)},
             {"pauc", e.pauc}};
}
void from_json(const json& j, EstimatorEntry& e) {
    e.name = j.at("name").get<std::string>();
    e.auc_trapezoid = j.at("auc_trapezoidal").get<double>();
    e.auc_mann_whitney = get_opt<double>(j, "auc_mann_whitney");
    e.pauc = j.at("pauc").get<std::vector<PaucValue>>();
}

void to_json(json& j, const ModelSummary& m) {
    j = json{{"population", m.population}, {"k", m.weights.size()},     {"weights", m.weights},
             {"means", m.means},           {"variances", m.variances},  {"log_likelihood", m.log_likelihood},
             {"n_train", m.n_train},       {"bic", m.bic}};
}
void from_json(const json& j, ModelSummary& m) {
    m.population = j.at("population").get<std::string>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.means = j.at("means").get<std::vector<double>>();
    m.variances = j.at("variances").get<std::vector<double>>();
    m.log_likelihood = j.at("log_likelihood").get<double>();
    m.n_train = j.at("n_train").get<std::size_t>();
    m.bic = j.at("bic").get<double>();
}

void to_json(json& j, const BandSummary& b) {
    j = json{{"band_kind", b.band_kind},
             {"z", b.z},
             {"mean_ci_width", b.mean_ci_width},
             {"mean_envelope_width", b.mean_envelope_width},
             {"auc_mean", b.auc_mean},
             {"auc_se", b.auc_se},
             {"auc_q_lower", b.auc_q_lower},
             {"auc_q_upper", b.auc_q_upper}};
}
void from_json(const json& j, BandSummary& b) {
    b.band_kind = j.at("band_kind").get<std::string>();
    b.z = j.at("z").get<double>();
    b.mean_ci_width = j.at("mean_ci_width").get<double>();
    b.mean_envelope_width = j.at("mean_envelope_width").get<double>();
    b.auc_mean = j.at("auc_mean").get<double>();
    b.auc_se = j.at("auc_se").get<double>();
    b.auc_q_lower = j.at("auc_q_lower").get<double>();
    b.auc_q_upper = j.at("auc_q_upper").get<double>();
}

void to_json(json& j, const BinormalParams& p) {
    j = json{{"a", p.a},       {"b", p.b},       {"mu_n", p.mu_n},
             {"sigma_n", p.sigma_n}, {"mu_d", p.mu_d}, {"sigma_d", p.sigma_d}};
}
void from_json(const json& j, BinormalParams& p) {
    // Stored a and b are taken verbatim so a round trip is exact.
    p = BinormalParams{j.at("a").get<double>(),    j.at("b").get<double>(),    j.at("mu_n").get<double>(),
                       j.at("sigma_n").get<double>(), j.at("mu_d").get<double>(), j.at("sigma_d").get<double>()};
}

void to_json(json& j, const RunMetadata& m) {
    j = json{{"seed", m.seed},
             {"mc_reps", m.mc_reps},
             {"alpha", m.alpha},
             {"grid_size", m.grid_size},
             {"k_max", m.k_max},
             {"k_non_diseased", opt(m.k_non_diseased)},
             {"k_diseased", opt(m.k_diseased)},
             {"version", m.version}};
    if (m.timestamp) j["timestamp"] = *m.timestamp;
    if (m.elapsed_seconds) j["elapsed_seconds"] = *m.elapsed_seconds;
}
void from_json(const json& j, RunMetadata& m) {
    m.seed = j.at("seed").get<std::uint64_t>();
    m.mc_reps = j.at("mc_reps").get<std::size_t>();
    m.alpha = j.at("alpha").get<double>();
    m.grid_size = j.at("grid_size").get<std::size_t>();
    m.k_max = j.at("k_max").get<std::size_t>();
    m.k_non_diseased = get_opt<std::size_t>(j, "k_non_diseased");
    m.k_diseased = get_opt<std::size_t>(j, "k_diseased");
    m.version = j.at("version").get<std::string>();
    m.timestamp = get_opt<std::string>(j, "timestamp");
    m.elapsed_seconds = get_opt<double>(j, "elapsed_seconds");
}

const EstimatorEntry* Report::find(const std::string& name) const {
    const auto it = std::find_if(estimators.begin(), estimators.end(), [&](const auto& e) { return e.name == name; });
    return it == estimators.end() ? nullptr : &*it;
}

std::string report_to_json(const Report& r) {
    json j{{"schema_version", r.schema_version},
           {"dataset", r.dataset},
           {"n_non_diseased", r.n_non_diseased},
           {"n_diseased", r.n_diseased},
           {"estimators", r.estimators},
           {"binormal", r.binormal ? json(*r.binormal) : json(nullptr)},
           {"models", r.models},
           {"bands", r.bands ? json(*r.bands) : json(nullptr)},
           {"metadata", r.metadata}};
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Report r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kReportSchemaVersion) {
            throw InputError("unsupported report schema_version " + std::to_string(r.schema_version));
        }
        r.dataset = j.at("dataset").get<std::string>();
        r.n_non_diseased = j.at("n_non_diseased").get<std::size_t>();
        r.n_diseased = j.at("n_diseased").get<std::size_t>();
        r.estimators = j.at("estimators").get<std::vector<EstimatorEntry>>();
        r.binormal = get_opt<BinormalParams>(j, "binormal");
        r.models = j.at("models").get<std::vector<ModelSummary>>();
        r.bands = get_opt<BandSummary>(j, "bands");
        r.metadata = j.at("metadata").get<RunMetadata>();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "table") return ReportFormat::Table;
    throw InputError("unknown report format '" + s + "'");
}

CompareTable compare_table(const std::vector<Report>& reports) {
    if (reports.empty()) throw InputError("compare_table needs at least one report");
    CompareTable t;
    for (const auto& r : reports) {
        t.datasets.push_back(r.dataset);
        for (const auto& e : r.estimators) {
            if (std::find(t.estimators.begin(), t.estimators.end(), e.name) == t.estimators.end()) {
                t.estimators.push_back(e.name);
            }
        }
    }
    // Empirical first, then the rest in order of appearance.
    std::stable_partition(t.estimators.begin(), t.estimators.end(), [](const auto& n) { return n == "empirical"; });

    t.cells.assign(t.estimators.size(), std::vector<CompareTable::Cell>(reports.size()));
    for (std::size_t d = 0; d < reports.size(); ++d) {
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
            if (const auto* entry = reports[d].find(t.estimators[e])) {
                t.cells[e][d].trapezoidal = entry->auc_trapezoid;
                t.cells[e][d].mann_whitney = entry->auc_mann_whitney;
            }
        }
        const auto* emp = reports[d].find("empirical");
        if (!emp) {
            t.footnotes.push_back(reports[d].dataset + ": no empirical estimate, nothing marked");
            continue;
        }
        double best = INFINITY;
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
            const auto& cell = t.cells[e][d];
            if (t.estimators[e] == "empirical" || !cell.trapezoidal) continue;
            best = std::min(best, std::fabs(*cell.trapezoidal - emp->auc_trapezoid));
        }
        std::vector<std::string> tied;
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
            auto& cell = t.cells[e][d];
            if (t.estimators[e] == "empirical" || !cell.trapezoidal) continue;
            if (std::fabs(std::fabs(*cell.trapezoidal - emp->auc_trapezoid) - best) <= 1e-12) {
                cell.closest = true;
                tied.push_back(t.estimators[e]);
            }
        }
        if (tied.size() > 1) {
            std::string names;
            for (const auto& n : tied) names += (names.empty() ? "" : ", ") + n;
            t.footnotes.push_back(reports[d].dataset + ": tie between " + names +
                                  " (equidistant from the empirical trapezoidal AUC)");
        }
    }
    return t;
}

namespace {

std::string fmt4(const std::optional<double>& v) {
    if (!v) return "-";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << *v;
    return os.str();
}

}  // namespace

std::string render_table_text(const CompareTable& t) {
    std::ostringstream os;
    os << std::left << std::setw(12) << "estimator";
    for (const auto& d : t.datasets) {
        os << " | " << std::setw(24) << d.substr(0, 24);
    }
    os << '\n' << std::setw(12) << "";
    for (std::size_t d = 0; d < t.datasets.size(); ++d) os << " | " << std::setw(12) << "trapezoidal" << std::setw(12) << "mann-whitney";
    os << '\n';
    for (std::size_t e = 0; e < t.estimators.size(); ++e) {
        os << std::setw(12) << t.estimators[e];
        for (std::size_t d = 0; d < t.datasets.size(); ++d) {
            const auto& c = t.cells[e][d];
            os << " | " << std::setw(12) << (fmt4(c.trapezoidal) + (c.closest ? " *" : ""))
               << std::setw(12) << fmt4(c.mann_whitney);
        }
        os << '\n';
    }
    os << "* closest to the empirical trapezoidal AUC\n";
    for (const auto& f : t.footnotes) os << "note: " << f << '\n';
    return os.str();
}

std::string render_table_csv(const CompareTable& t) {
    std::ostringstream os;
    os << "dataset,estimator,trapezoidal,mann_whitney,closest\n";
    os << std::setprecision(17);
    for (std::size_t d = 0; d < t.datasets.size(); ++d) {
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
            const auto& c = t.cells[e][d];
            if (!c.trapezoidal) continue;
            os << t.datasets[d] << ',' << t.estimators[e] << ',' << *c.trapezoidal << ',';
            if (c.mann_whitney) os << *c.mann_whitney;
            os << ',' << (c.closest ? 1 : 0) << '\n';
        }
    }
    for (const auto& f : t.footnotes) os << "# " << f << '\n';
    return os.str();
}

std::string render_report_text(const Report& r) {
    std::ostringstream os;
    os << "dataset: " << r.dataset << "  (n_non_diseased=" << r.n_non_diseased << ", n_diseased=" << r.n_diseased
       << ")\n\n";
    os << render_table_text(compare_table({r}));
    for (const auto& e : r.estimators) {
        for (const auto& p : e.pauc) {
            os << "pAUC " << e.name << " [" << p.t_lo << ", " << p.t_hi << "] = " << fmt4(p.value) << '\n';
        }
    }
    if (r.binormal) {
        os << "\nbinormal: a=" << fmt4(r.binormal->a) << " b=" << fmt4(r.binormal->b) << '\n';
    }
    for (const auto& m : r.models) {
        os << "\nmixture (" << m.population << "): K=" << m.weights.size() << " logL=" << fmt4(m.log_likelihood)
           << " BIC=" << fmt4(m.bic) << '\n';
        for (std::size_t k = 0; k < m.weights.size(); ++k) {
            os << "  w=" << fmt4(m.weights[k]) << " mean=" << fmt4(m.means[k])
               << " sd=" << fmt4(std::sqrt(m.variances[k])) << '\n';
        }
    }
    if (r.bands) {
        os << "\nMG ensemble: M=" << r.metadata.mc_reps << " AUC mean=" << fmt4(r.bands->auc_mean)
           << " sd=" << fmt4(r.bands->auc_se) << " replicate AUC " << (1.0 - r.metadata.alpha) * 100.0
           << "% range [" << fmt4(r.bands->auc_q_lower) << ", " << fmt4(r.bands->auc_q_upper) << "]\n";
        os << "mean band widths: ci=" << fmt4(r.bands->mean_ci_width)
           << " envelope=" << fmt4(r.bands->mean_envelope_width) << '\n';
    }
    return os.str();
}

std::string render_report_csv(const Report& r) { return render_table_csv(compare_table({r})); }

}  // namespace mgroc
