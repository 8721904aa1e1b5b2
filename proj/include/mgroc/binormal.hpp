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
#include "mgroc/roc.hpp"

namespace mgroc {

/// Crude binormal fit: a = (mu_d - mu_n) / sigma_d, b = sigma_n / sigma_d.
struct BinormalParams {
    double a;
    double b;
    double mu_n;
    double sigma_n;
    double mu_d;
    double sigma_d;

    /// Derives a and b from the population moments.
    static BinormalParams from_moments(double mu_n, double sigma_n, double mu_d, double sigma_d);

    bool operator==(const BinormalParams&) const = default;
};

/// Moment fit per population (sample mean, n-1 standard deviation).
BinormalParams fit_binormal(const LabeledDataset& dataset);

/// R(t) = Phi(a + b Phi^{-1}(t)) with R(0)=0 and R(1)=1.
RocCurveGrid binormal_curve(const BinormalParams& params, const FprGrid& grid);

/// Phi(a / sqrt(1 + b^2))
double binormal_auc(const BinormalParams& params) noexcept;

}  // namespace mgroc
