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

#include "mgroc/binormal.hpp"

#include "mgroc/error.hpp"
#include "mgroc/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mgroc {

namespace {

struct Moments {
    double mean;
    double sd;
};

Moments sample_moments(const ScoreSample& s) {
    const auto x = s.scores();
    const auto n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

BinormalParams BinormalParams::from_moments(double mu_n, double sigma_n, double mu_d, double sigma_d) {
    if (!(sigma_n > 0.0) || !(sigma_d > 0.0)) throw InputError("binormal fit needs positive standard deviations");
    return BinormalParams{(mu_d - mu_n) / sigma_d, sigma_n / sigma_d, mu_n, sigma_n, mu_d, sigma_d};
}

BinormalParams fit_binormal(const LabeledDataset& dataset) {
    const Moments n = sample_moments(dataset.non_diseased());
    const Moments d = sample_moments(dataset.diseased());
    if (!(n.sd > 0.0)) throw InputError("non-diseased sample has zero variance; binormal fit undefined");
    if (!(d.sd > 0.0)) throw InputError("diseased sample has zero variance; binormal fit undefined");
    return BinormalParams::from_moments(n.mean, n.sd, d.mean, d.sd);
}

RocCurveGrid binormal_curve(const BinormalParams& params, const FprGrid& grid) {
    std::vector<double> tpr(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double t = grid[i];
        if (t <= 0.0) tpr[i] = 0.0;
        else if (t >= 1.0) tpr[i] = 1.0;
        else tpr[i] = normal::cdf(params.a + params.b * normal::quantile(t));
    }
    return RocCurveGrid(grid, std::move(tpr), CurveLabel::Binormal);
}

double binormal_auc(const BinormalParams& params) noexcept {
    return normal::cdf(params.a / std::sqrt(1.0 + params.b * params.b));
}

}  // namespace mgroc
