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

#include "mgroc/data_model.hpp"

#include "mgroc/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

namespace mgroc {

const char* to_string(Population p) noexcept {
    return p == Population::Diseased ? "diseased" : "non_diseased";
}

ScoreSample::ScoreSample(std::vector<double> scores, Population population, std::string source_name)
    : scores_(std::move(scores)), population_(population), source_name_(std::move(source_name)) {
    if (scores_.size() < 2) {
        throw InputError(std::string("population '") + to_string(population_) + "' needs at least 2 scores, got " +
                         std::to_string(scores_.size()));
    }
    for (double s : scores_) {
        if (!std::isfinite(s)) throw InputError("scores must be finite");
    }
    std::sort(scores_.begin(), scores_.end());
}

LabeledDataset::LabeledDataset(ScoreSample non_diseased, ScoreSample diseased)
    : non_diseased_(std::move(non_diseased)), diseased_(std::move(diseased)) {
    if (non_diseased_.population() != Population::NonDiseased || diseased_.population() != Population::Diseased) {
        throw InputError("dataset samples carry the wrong population tags");
    }
}

LabeledDataset make_dataset(std::span<const double> non_diseased, std::span<const double> diseased,
                            std::string source_name) {
    return LabeledDataset(
        ScoreSample({non_diseased.begin(), non_diseased.end()}, Population::NonDiseased, source_name),
        ScoreSample({diseased.begin(), diseased.end()}, Population::Diseased, source_name));
}

FprGrid::FprGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw InputError("FPR grid needs at least 2 points");
    if (!(points_.front() >= 0.0) || !(points_.back() <= 1.0)) {
        throw InputError("FPR grid points must lie in [0,1]");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i] > points_[i - 1])) throw InputError("FPR grid must be strictly increasing");
    }
}

FprGrid make_uniform_grid(std::size_t count) {
    if (count < 2) throw InputError("grid size must be at least 2");
    std::vector<double> pts(count);
    const double denom = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = static_cast<double>(i) / denom;
    pts.back() = 1.0;
    return FprGrid(std::move(pts));
}

FprGrid make_cosine_grid(std::size_t count) {
    if (count < 2) throw InputError("grid size must be at least 2");
    std::vector<double> pts(count);
    const double denom = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        pts[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / denom));
    }
    pts.front() = 0.0;
    pts.back() = 1.0;
    return FprGrid(std::move(pts));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        std::string out;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            out.push_back(s[i]);
            if (s[i] == '"' && i + 2 < s.size() && s[i + 1] == '"') ++i;
        }
        return out;
    }
    return std::string(s);
}

// RFC 4180-ish split: commas inside double quotes do not separate fields.
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == ',' && !quoted) {
            fields.push_back(unquote(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    fields.push_back(unquote(line.substr(start)));
    return fields;
}

std::optional<double> parse_finite(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read input file '" + path.string() + "'");
    return in;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::filesystem::path& path) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw InputError("column '" + name + "' not found in header of '" + path.string() + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> read_score_lines(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<double> scores;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto v = parse_finite(t);
        if (!v) {
            throw InputError("non-numeric score '" + std::string(t) + "' at " + path.string() + ":" +
                             std::to_string(line_no));
        }
        scores.push_back(*v);
    }
    return scores;
}

}  // namespace

LabeledDataset load_dataset(const std::filesystem::path& path, const CsvOptions& options) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw InputError("input file '" + path.string() + "' is empty");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const auto header = split_csv_line(line);
    const std::size_t score_idx = column_index(header, options.score_column, path);
    const std::size_t label_idx = column_index(header, options.label_column, path);

    std::vector<double> non_diseased, diseased;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (fields.size() != header.size()) {
            throw InputError("expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()) + " at " + where);
        }
        const auto score = parse_finite(fields[score_idx]);
        if (!score) throw InputError("non-numeric score '" + fields[score_idx] + "' at " + where);
        const std::string label(trim(fields[label_idx]));
        if (label == options.non_diseased_label) non_diseased.push_back(*score);
        else if (label == options.diseased_label) diseased.push_back(*score);
        else throw InputError("unknown label '" + label + "' at " + where);
    }

    const std::string name = path.filename().string();
    return LabeledDataset(ScoreSample(std::move(non_diseased), Population::NonDiseased, name),
                          ScoreSample(std::move(diseased), Population::Diseased, name));
}

LabeledDataset load_dataset_pair(const std::filesystem::path& non_diseased_path,
                                 const std::filesystem::path& diseased_path) {
    auto x = read_score_lines(non_diseased_path);
    auto y = read_score_lines(diseased_path);
    return LabeledDataset(ScoreSample(std::move(x), Population::NonDiseased, non_diseased_path.filename().string()),
                          ScoreSample(std::move(y), Population::Diseased, diseased_path.filename().string()));
}

void write_dataset_csv(const LabeledDataset& dataset, const std::filesystem::path& path, const CsvOptions& options) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << options.score_column << ',' << options.label_column << '\n';
    out << std::setprecision(17);
    for (double s : dataset.non_diseased().scores()) out << s << ',' << options.non_diseased_label << '\n';
    for (double s : dataset.diseased().scores()) out << s << ',' << options.diseased_label << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace mgroc
