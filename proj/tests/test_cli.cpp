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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir = fs::temp_directory_path() / ("mgroc_cli_" + std::to_string(std::random_device{}()));
    Sandbox() { fs::create_directories(dir); }
    ~Sandbox() { fs::remove_all(dir); }

    fs::path file(const std::string& name, const std::string& body) const {
        std::ofstream(dir / name) << body;
        return dir / name;
    }

    // Runs the CLI and returns its exit status; stdout and stderr land in files.
    int run(const std::string& args) const {
        const std::string cmd = std::string("\"") + MGROC_CLI_PATH + "\" " + args + " >\"" + (dir / "stdout").string() +
                                "\" 2>\"" + (dir / "stderr").string() + "\"";
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    }

    std::string read(const std::string& name) const {
        std::ifstream in(dir / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

std::string synthetic_csv() {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> z;
    std::ostringstream os;
    os.precision(17);
    os << "score,label\n";
    for (int i = 0; i < 40; ++i) os << z(rng) << ",0\n";
    for (int i = 0; i < 50; ++i) os << z(rng) + 1.2 << ",1\n";
    return os.str();
}

}  // namespace

TEST_CASE("empirical run on a separated sample") {
    Sandbox s;
    auto in = s.file("in.csv", "score,label\n1,0\n2,0\n3,1\n4,1\n");
    CHECK(s.run("--input \"" + in.string() + "\" --estimators empirical --out \"" + (s.dir / "o").string() + "\"") == 0);
    const auto report = s.read("o/report.json");
    CHECK(report.find("\"auc_trapezoidal\": 1.0") != std::string::npos);
    CHECK_FALSE(fs::exists(s.dir / "o" / "model_diseased.json"));
    CHECK(fs::exists(s.dir / "o" / "curve_empirical.csv"));
}

TEST_CASE("full run with plots, table output and replicate dump") {
    Sandbox s;
    auto in = s.file("in.csv", synthetic_csv());
    const auto out = (s.dir / "o").string();
    REQUIRE(s.run("--input \"" + in.string() + "\" --mc-reps 80 --grid-size 129 --seed 5 --plots --dump-replicates "
                  "--report-format table --pauc 0:0.2 --reproducible --out \"" + out + "\"") == 0);
    for (const char* f : {"report.json", "report.txt", "curve_mg.csv", "curve_binormal.csv", "replicates.csv",
                          "roc.svg", "histogram_non_diseased.svg", "model_non_diseased.json"}) {
        CHECK_MESSAGE(fs::exists(s.dir / "o" / f), f);
    }
    CHECK(s.read("stdout").find("binormal") != std::string::npos);

    // the same invocation reproduces the report byte for byte
    const auto first = s.read("o/report.json");
    REQUIRE(s.run("--input \"" + in.string() + "\" --mc-reps 80 --grid-size 129 --seed 5 --threads 2 "
                  "--pauc 0:0.2 --reproducible --out \"" + (s.dir / "p").string() + "\"") == 0);
    CHECK(s.read("p/report.json") == first);

    REQUIRE(s.run("compare \"" + out + "/report.json\" \"" + (s.dir / "p").string() + "/report.json\" --format csv") == 0);
    CHECK(s.read("stdout").find("empirical") != std::string::npos);
}

TEST_CASE("two-file input mode") {
    Sandbox s;
    auto x = s.file("x.txt", "1\n2\n3\n");
    auto y = s.file("y.txt", "2.5\n3.5\n");
    CHECK(s.run("--nondiseased \"" + x.string() + "\" --diseased \"" + y.string() +
                "\" --estimators empirical --report-format csv --out \"" + (s.dir / "o").string() + "\"") == 0);
    CHECK(s.read("stdout").find("0.8333") != std::string::npos);
}

TEST_CASE("exit statuses") {
    Sandbox s;
    const auto out = (s.dir / "o").string();
    // I/O: missing input, and nothing written
    CHECK(s.run("--input \"" + (s.dir / "missing.csv").string() + "\" --out \"" + out + "\"") == 4);
    CHECK_FALSE(fs::exists(s.dir / "o"));
    CHECK(s.read("stderr").find("mgroc: error:") != std::string::npos);

    // input validation
    auto bad = s.file("bad.csv", "score,label\n1,0\n2,0\nNaN,1\n3,1\n");
    CHECK(s.run("--input \"" + bad.string() + "\" --out \"" + out + "\"") == 2);
    auto good = s.file("good.csv", synthetic_csv());
    CHECK(s.run("--input \"" + good.string() + "\" --mc-reps 1 --out \"" + out + "\"") == 2);
    CHECK(s.run("--input \"" + good.string() + "\" --estimators lab --out \"" + out + "\"") == 2);
    CHECK(s.run("--bogus-flag") == 2);
    CHECK(s.run("--input \"" + good.string() + "\"") == 2);  // no output dir

    // unwritable output: a regular file stands where the directory should be
    auto blocker = s.file("blocker", "x");
    CHECK(s.run("--input \"" + good.string() + "\" --estimators empirical --out \"" + blocker.string() + "/sub\"") == 4);
}

TEST_CASE("help and version") {
    Sandbox s;
    CHECK(s.run("--help") == 0);
    CHECK(s.read("stdout").find("--mc-reps") != std::string::npos);
    CHECK(s.run("--version") == 0);
}
