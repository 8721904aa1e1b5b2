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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mgroc {

enum class Population { NonDiseased, Diseased };

const char* to_string(Population p) noexcept;

/// Scalar scores for one population, stored sorted ascending.
///
/// Construction validates that every score is finite and that there are at
/// least two of them. Duplicates are kept.
class ScoreSample {
public:
    ScoreSample(std::vector<double> scores, Population population, std::string source_name = {});

    std::span<const double> scores() const noexcept { return scores_; }
    std::size_t size() const noexcept { return scores_.size(); }
    Population population() const noexcept { return population_; }
    const std::string& source_name() const noexcept { return source_name_; }

    double min() const noexcept { return scores_.front(); }
    double max() const noexcept { return scores_.back(); }

    bool operator==(const ScoreSample&) const = default;

private:
    std::vector<double> scores_;
    Population population_;
    std::string source_name_;
};

/// A non-diseased (X) sample paired with a diseased (Y) sample.
class LabeledDataset {
public:
    LabeledDataset(ScoreSample non_diseased, ScoreSample diseased);

    const ScoreSample& non_diseased() const noexcept { return non_diseased_; }
    const ScoreSample& diseased() const noexcept { return diseased_; }
    const ScoreSample& sample(Population p) const noexcept {
        return p == Population::Diseased ? diseased_ : non_diseased_;
    }

    bool operator==(const LabeledDataset&) const = default;

private:
    ScoreSample non_diseased_;
    ScoreSample diseased_;
};

/// Convenience for tests and the C API: builds a dataset from raw arrays.
LabeledDataset make_dataset(std::span<const double> non_diseased, std::span<const double> diseased,
                            std::string source_name = {});

/// Strictly increasing false-positive-rate abscissae in [0,1], at least two.
class FprGrid {
public:
    explicit FprGrid(std::vector<double> points);

    std::span<const double> points() const noexcept { return points_; }
    std::size_t count() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const noexcept { return points_[i]; }

    bool operator==(const FprGrid&) const = default;

private:
    std::vector<double> points_;
};

inline constexpr std::size_t kDefaultGridSize = 512;

/// `count` equally spaced points covering [0,1] including both endpoints.
FprGrid make_uniform_grid(std::size_t count);

/// `count` points t_i = (1 - cos(pi i / (count-1))) / 2, clustered at both
/// ends. Suits curves that rise almost vertically at t = 0 or t = 1.
FprGrid make_cosine_grid(std::size_t count);

struct CsvOptions {
    std::string score_column = "score";
    std::string label_column = "label";
    std::string non_diseased_label = "0";
    std::string diseased_label = "1";
};

/// Reads a headed CSV with one row per subject.
LabeledDataset load_dataset(const std::filesystem::path& path, const CsvOptions& options = {});

/// Two-file mode: one score per line, one file per population. Blank lines
/// and lines starting with '#' are skipped.
LabeledDataset load_dataset_pair(const std::filesystem::path& non_diseased_path,
                                 const std::filesystem::path& diseased_path);

/// Writes the dataset back out in the CSV layout accepted by load_dataset.
void write_dataset_csv(const LabeledDataset& dataset, const std::filesystem::path& path,
                       const CsvOptions& options = {});

}  // namespace mgroc
