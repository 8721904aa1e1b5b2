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

#include <doctest.h>

#include "mgroc/error.hpp"
#include "mgroc/report.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace mgroc;
namespace fs = std::filesystem;

namespace {

Report two_estimators(const std::string& name, double emp, double bin, double mg) {
    Report r;
    r.dataset = name;
    r.estimators = {{"empirical", emp, emp, {}}, {"binormal", bin, bin, {}}, {"mg", mg, std::nullopt, {}}};
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("mgroc_rep_" + tag + std::to_string(std::random_device{}()));
    fs::create_directories(p);
    return p;
}

LabeledDataset synthetic(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto x = oracle::normal_draws(rng, 40, 0, 1);
    auto y = oracle::normal_draws(rng, 60, 1, 1.3);
    return make_dataset(x, y, "synthetic");
}

}  // namespace

TEST_CASE("report JSON round trip") {
    RunConfig cfg;
    cfg.mg.m = 50;
    cfg.pauc_intervals = {{0.0, 0.2}, {0.1, 0.35}};
    auto r = analyze(synthetic(1), cfg);
    REQUIRE(r.find("empirical"));
    REQUIRE(r.find("binormal"));
    REQUIRE(r.find("mg"));
    CHECK(r.find("mg")->pauc.size() == 2);
    CHECK(r.models.size() == 2);
    CHECK(r.bands.has_value());
    CHECK(r.binormal.has_value());
    auto back = report_from_json(report_to_json(r));
    CHECK(back == r);
    CHECK(report_to_json(back) == report_to_json(r));
    CHECK_THROWS_AS(report_from_json("{\"schema_version\": 99}"), InputError);
    CHECK_THROWS_AS(report_from_json("[1,2"), InputError);
}

TEST_CASE("every AUC in a report lies in [0,1]") {
    RunConfig cfg;
    cfg.mg.m = 30;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto r = analyze(synthetic(s), cfg);
        for (const auto& e : r.estimators) {
            CHECK(e.auc_trapezoid >= 0.0);
            CHECK(e.auc_trapezoid <= 1.0);
            if (e.auc_mann_whitney) CHECK(*e.auc_mann_whitney >= 0.0);
            if (e.auc_mann_whitney) CHECK(*e.auc_mann_whitney <= 1.0);
        }
    }
}

TEST_CASE("empirical only on a separated sample") {
    RunConfig cfg;
    cfg.estimators = {"empirical"};
    auto r = analyze(make_dataset(std::vector<double>{1, 2}, std::vector<double>{3, 4}), cfg);
    REQUIRE(r.estimators.size() == 1);
    CHECK(r.estimators[0].auc_trapezoid == 1.0);
    CHECK(r.estimators[0].auc_mann_whitney == 1.0);
    CHECK(r.models.empty());
    CHECK_FALSE(r.binormal.has_value());
}

TEST_CASE("run configuration validation") {
    RunConfig cfg;
    cfg.estimators = {};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.estimators = {"empirical", "lab"};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.estimators = {"mg", "mg"};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.estimators = {"mg"};
    cfg.pauc_intervals = {{0.5, 0.2}};
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("same seed and config give byte-identical output files") {
    auto dir = scratch("repro");
    write_dataset_csv(synthetic(3), dir / "in.csv");
    RunConfig cfg;
    cfg.input.csv = dir / "in.csv";
    cfg.mg.m = 100;
    cfg.reproducible = true;
    cfg.plots = true;
    cfg.output_dir = dir / "a";
    auto a = run_analysis(cfg);
    cfg.output_dir = dir / "b";
    cfg.mg.threads = 3;
    auto b = run_analysis(cfg);
    CHECK(a.report == b.report);
    REQUIRE(a.files.size() == b.files.size());
    for (const auto& f : a.files) {
        CHECK(slurp(f) == slurp(dir / "b" / f.filename()));
    }
    CHECK_FALSE(a.report.metadata.timestamp.has_value());
    CHECK(fs::exists(dir / "a" / "roc.svg"));
    CHECK(fs::exists(dir / "a" / "histogram_diseased.svg"));
    CHECK(fs::exists(dir / "a" / "curve_mg.csv"));
    CHECK(fs::exists(dir / "a" / "model_non_diseased.json"));

    cfg.reproducible = false;
    cfg.output_dir = dir / "c";
    auto c = run_analysis(cfg);
    CHECK(c.report.metadata.timestamp.has_value());
    fs::remove_all(dir);
}

TEST_CASE("missing input writes nothing") {
    auto dir = scratch("missing");
    RunConfig cfg;
    cfg.input.csv = dir / "absent.csv";
    cfg.output_dir = dir / "out";
    CHECK_THROWS_AS(run_analysis(cfg), IoError);
    CHECK_FALSE(fs::exists(dir / "out"));
    fs::remove_all(dir);
}

TEST_CASE("compare_table marks the unique closest estimator") {
    auto t = compare_table({two_estimators("d1", 0.70, 0.60, 0.71)});
    REQUIRE(t.estimators.size() == 3);
    CHECK(t.estimators[0] == "empirical");
    CHECK_FALSE(t.cells[0][0].closest);
    CHECK_FALSE(t.cells[1][0].closest);
    CHECK(t.cells[2][0].closest);
    CHECK(t.footnotes.empty());
    CHECK(render_table_text(t).find('*') != std::string::npos);
}

TEST_CASE("compare_table marks every estimator in a tie and adds a footnote") {
    auto t = compare_table({two_estimators("d1", 0.75, 0.5, 1.0), two_estimators("d2", 0.8, 0.7, 0.95)});
    CHECK(t.cells[1][0].closest);
    CHECK(t.cells[2][0].closest);
    CHECK(t.cells[1][1].closest);
    CHECK_FALSE(t.cells[2][1].closest);
    REQUIRE(t.footnotes.size() == 1);
    CHECK(t.footnotes[0].find("d1") != std::string::npos);
    CHECK(render_table_csv(t).find("d2") != std::string::npos);
    CHECK_THROWS_AS(compare_table({}), InputError);
}

TEST_CASE("renderers mention every estimator") {
    RunConfig cfg;
    cfg.mg.m = 20;
    auto r = analyze(synthetic(4), cfg);
    for (const auto& text : {render_report_text(r), render_report_csv(r)}) {
        CHECK(text.find("empirical") != std::string::npos);
        CHECK(text.find("binormal") != std::string::npos);
        CHECK(text.find("mg") != std::string::npos);
    }
}
