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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mgroc::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    bool dashed = false;
    double width = 1.5;
};

std::string histogram(std::span<const double> values, const std::string& title, const std::string& color);
std::string roc_plot(const std::vector<Series>& series, const std::string& title);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mgroc::svg
