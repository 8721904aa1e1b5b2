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

// Command-line front end. Talks to the library only through the C API.

#include "mgroc/mgroc.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CString {
    char* p = nullptr;
    ~CString() { mgroc_string_free(p); }
};

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int report_error(mgroc_status status) {
    std::cerr << "mgroc: error: " << mgroc_last_error() << '\n';
    return static_cast<int>(status);
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ROC curve estimation with Gaussian mixtures and Monte Carlo ensembles", "mgroc"};
    app.set_version_flag("--version", std::string(mgroc_version()));

    mgroc_run_config cfg;
    mgroc_run_config_init(&cfg);

    std::string input, nondiseased, diseased, score_col = "score", label_col = "label";
    std::string negative_label = "0", positive_label = "1", out_dir, format = "json", band_kind = "both", name;
    std::vector<std::string> estimators{"empirical", "binormal", "mg"};
    std::vector<std::string> pauc;
    std::size_t grid_size = cfg.mg.grid_size, mc_reps = cfg.mg.m, k_max = cfg.em.k_max, threads = 0;
    std::size_t n_restarts = cfg.em.n_restarts, rep_nx = 0, rep_ny = 0;
    double alpha = cfg.mg.alpha;
    std::uint64_t seed = cfg.mg.seed;
    bool plots = false, dump = false, reproducible = false, one_sided_z = false;

    auto* in_opt = app.add_option("--input", input, "CSV file with a header row, one subject per row");
    auto* x_opt = app.add_option("--nondiseased", nondiseased, "Two-file mode: non-diseased scores, one per line");
    auto* y_opt = app.add_option("--diseased", diseased, "Two-file mode: diseased scores, one per line");
    x_opt->excludes(in_opt)->needs(y_opt);
    y_opt->excludes(in_opt)->needs(x_opt);
    app.add_option("--score-col", score_col, "Score column name")->capture_default_str();
    app.add_option("--label-col", label_col, "Label column name")->capture_default_str();
    app.add_option("--negative-label", negative_label, "Label value of non-diseased rows")->capture_default_str();
    app.add_option("--positive-label", positive_label, "Label value of diseased rows")->capture_default_str();
    app.add_option("--estimators", estimators, "Any of empirical,binormal,mg")->delimiter(',')->capture_default_str();
    app.add_option("--grid-size", grid_size, "Number of FPR grid points")->capture_default_str();
    app.add_option("--mc-reps", mc_reps, "Monte Carlo ensemble size M")->capture_default_str();
    app.add_option("--alpha", alpha, "Band significance level")->capture_default_str();
    app.add_option("--k-max", k_max, "Largest mixture component count tried")->capture_default_str();
    app.add_option("--restarts", n_restarts, "EM restarts per component count")->capture_default_str();
    app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();
    app.add_option("--replicate-nx", rep_nx, "Simulated non-diseased size per replicate (0: observed)");
    app.add_option("--replicate-ny", rep_ny, "Simulated diseased size per replicate (0: observed)");
    app.add_option("--threads", threads, "Worker threads for the ensemble (0: all cores)");
    app.add_option("--band-kind", band_kind, "mean_ci, envelope or both")
        ->check(CLI::IsMember({"mean_ci", "envelope", "both"}))
        ->capture_default_str();
    app.add_flag("--one-sided-z", one_sided_z, "Use z_{1-alpha} instead of z_{1-alpha/2} for the mean-curve CI");
    app.add_option("--pauc", pauc, "Partial AUC interval lo:hi (repeatable)");
    app.add_option("--name", name, "Dataset label used in the report");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--plots", plots, "Write SVG histograms and ROC overlay");
    app.add_option("--report-format", format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_flag("--dump-replicates", dump, "Write the full replicate matrix to replicates.csv");
    app.add_flag("--reproducible", reproducible, "Omit timestamp and timing so equal runs give identical reports");

    auto* compare = app.add_subcommand("compare", "Tabulate AUCs from several report.json files");
    std::vector<std::string> report_files;
    std::string compare_format = "table";
    compare->add_option("reports", report_files, "report.json files")->required();
    compare->add_option("--format", compare_format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return MGROC_ERR_INPUT;
    }

    if (compare->parsed()) {
        std::vector<std::string> docs;
        for (const auto& path : report_files) {
            std::ifstream in(path);
            if (!in) {
                std::cerr << "mgroc: error: cannot read '" << path << "'\n";
                return MGROC_ERR_IO;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            docs.push_back(ss.str());
        }
        std::vector<const char*> ptrs;
        for (const auto& d : docs) ptrs.push_back(d.c_str());
        CString table;
        if (const auto st = mgroc_compare_table(ptrs.data(), ptrs.size(), compare_format.c_str(), &table.p)) {
            return report_error(st);
        }
        std::cout << table.p;
        return 0;
    }

    if (input.empty() && nondiseased.empty()) {
        std::cerr << "mgroc: error: give --input or --nondiseased/--diseased\n";
        return MGROC_ERR_INPUT;
    }
    if (out_dir.empty()) {
        std::cerr << "mgroc: error: --out is required\n";
        return MGROC_ERR_INPUT;
    }

    const std::string estimator_list = join(estimators);
    std::string pauc_list = join(pauc);

    cfg.input_csv = or_null(input);
    cfg.non_diseased_file = or_null(nondiseased);
    cfg.diseased_file = or_null(diseased);
    cfg.score_col = score_col.c_str();
    cfg.label_col = label_col.c_str();
    cfg.non_diseased_label = negative_label.c_str();
    cfg.diseased_label = positive_label.c_str();
    cfg.estimators = estimator_list.c_str();
    cfg.output_dir = out_dir.c_str();
    cfg.report_format = format.c_str();
    cfg.pauc_intervals = or_null(pauc_list);
    cfg.dataset_name = or_null(name);
    cfg.em.k_max = k_max;
    cfg.em.n_restarts = n_restarts;
    cfg.em.seed = seed;
    cfg.mg.m = mc_reps;
    cfg.mg.alpha = alpha;
    cfg.mg.grid_size = grid_size;
    cfg.mg.seed = seed;
    cfg.mg.replicate_n_x = rep_nx;
    cfg.mg.replicate_n_y = rep_ny;
    cfg.mg.threads = threads;
    cfg.mg.two_sided_z = one_sided_z ? 0 : 1;
    cfg.mg.band_kind = band_kind == "mean_ci" ? MGROC_BAND_MEAN_CI
                       : band_kind == "envelope" ? MGROC_BAND_ENVELOPE
                                                 : MGROC_BAND_BOTH;
    cfg.plots = plots;
    cfg.dump_replicates = dump;
    cfg.reproducible = reproducible;

    CString rendered;
    if (const auto st = mgroc_run(&cfg, nullptr, &rendered.p)) return report_error(st);
    std::cout << rendered.p;
    return 0;
}
