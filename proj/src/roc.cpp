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

#include "mgroc/roc.hpp"

#include "mgroc/error.hpp"

#include <algorithm>
#include <cmath>

namespace mgroc {

const char* to_string(CurveLabel label) noexcept {
    switch (label) {
        case CurveLabel::Empirical: return "empirical";
        case CurveLabel::Mg: return "mg";
        case CurveLabel::Binormal: return "binormal";
        case CurveLabel::Replicate: return "replicate";
    }
    return "unknown";
}

std::optional<std::string> find_invariant_violation(std::span<const double> grid, std::span<const double> tpr) {
    if (grid.size() != tpr.size()) return "tpr length does not match grid";
    for (std::size_t i = 0; i < tpr.size(); ++i) {
        if (!(tpr[i] >= 0.0 && tpr[i] <= 1.0)) return "tpr outside [0,1] at index " + std::to_string(i);
        if (i > 0 && tpr[i] < tpr[i - 1]) return "tpr decreases at index " + std::to_string(i);
    }
    return std::nullopt;
}

RocCurveGrid::RocCurveGrid(FprGrid grid, std::vector<double> tpr, CurveLabel label)
    : grid_(std::move(grid)), tpr_(std::move(tpr)), label_(label) {
    if (auto err = find_invariant_violation(grid_.points(), tpr_)) {
        throw NumericalError(std::string("invalid ") + to_string(label_) + " ROC curve: " + *err);
    }
}

void empirical_roc_sorted(std::span<const double> x_sorted, std::span<const double> y_sorted, const FprGrid& grid,
                          std::span<double> tpr) {
    const std::size_t n = x_sorted.size();
    const auto m = static_cast<double>(y_sorted.size());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        // At most j false positives are allowed at FPR t.
        const auto j = static_cast<std::size_t>(std::floor(grid[i] * static_cast<double>(n) + 1e-9));
        if (j >= n) {
            tpr[i] = 1.0;
            continue;
        }
        const double c = x_sorted[n - 1 - j];
        const auto above = y_sorted.end() - std::upper_bound(y_sorted.begin(), y_sorted.end(), c);
        tpr[i] = static_cast<double>(above) / m;
    }
}

RocCurveGrid empirical_roc(const LabeledDataset& dataset, const FprGrid& grid) {
    std::vector<double> tpr(grid.count());
    empirical_roc_sorted(dataset.non_diseased().scores(), dataset.diseased().scores(), grid, tpr);
    return RocCurveGrid(grid, std::move(tpr), CurveLabel::Empirical);
}

std::vector<OperatingPoint> empirical_roc_points(const LabeledDataset& dataset) {
    const auto x = dataset.non_diseased().scores();
    const auto y = dataset.diseased().scores();
    const auto n = static_cast<double>(x.size());
    const auto m = static_cast<double>(y.size());

    std::vector<OperatingPoint> pts{{0.0, 0.0}};
    // Walk both sorted arrays from the top; each distinct score drops the
    // threshold just below it.
    auto xi = x.size();
    auto yi = y.size();
    while (xi > 0 || yi > 0) {
        double v = -INFINITY;
        if (xi > 0) v = x[xi - 1];
        if (yi > 0) v = std::max(v, y[yi - 1]);
        while (xi > 0 && x[xi - 1] == v) --xi;
        while (yi > 0 && y[yi - 1] == v) --yi;
        pts.push_back({static_cast<double>(x.size() - xi) / n, static_cast<double>(y.size() - yi) / m});
    }
    return pts;
}

RocCurveGrid functional_roc(const GmmModel& f_model, const GmmModel& g_model, const FprGrid& grid) {
    std::vector<double> tpr(grid.count());
    double running = 0.0;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double t = grid[i];
        double r;
        if (t <= 0.0) r = 0.0;
        else if (t >= 1.0) r = 1.0;
        else r = survival(g_model, survival_inverse(f_model, t));
        // Bisection noise can cost an ulp of monotonicity.
        running = std::max(running, std::clamp(r, 0.0, 1.0));
        tpr[i] = running;
    }
    return RocCurveGrid(grid, std::move(tpr), CurveLabel::Mg);
}

double auc_trapezoid(std::span<const double> grid, std::span<const double> tpr) noexcept {
    double area = grid.front() * tpr.front() + (1.0 - grid.back()) * tpr.back();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        area += 0.5 * (tpr[i] + tpr[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return std::clamp(area, 0.0, 1.0);
}

double auc_trapezoid(const RocCurveGrid& curve) { return auc_trapezoid(curve.grid().points(), curve.tpr()); }

double auc_trapezoid(std::span<const OperatingPoint> points) noexcept {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += 0.5 * (points[i].tpr + points[i - 1].tpr) * (points[i].fpr - points[i - 1].fpr);
    }
    return std::clamp(area, 0.0, 1.0);
}

double auc_mann_whitney_sorted(std::span<const double> x_sorted, std::span<const double> y_sorted) noexcept {
    const std::size_t n = x_sorted.size();
    const std::size_t m = y_sorted.size();
    // Merge pass assigning midranks to each block of equal values.
    double rank_sum_y = 0.0;
    std::size_t i = 0, j = 0, position = 0;
    while (i < n || j < m) {
        double v;
        if (i == n) v = y_sorted[j];
        else if (j == m) v = x_sorted[i];
        else v = std::min(x_sorted[i], y_sorted[j]);
        std::size_t cx = 0, cy = 0;
        while (i < n && x_sorted[i] == v) ++i, ++cx;
        while (j < m && y_sorted[j] == v) ++j, ++cy;
        const std::size_t block = cx + cy;
        const double midrank = static_cast<double>(position) + 0.5 * static_cast<double>(block + 1);
        rank_sum_y += midrank * static_cast<double>(cy);
        position += block;
    }
    const double md = static_cast<double>(m);
    const double u = rank_sum_y - 0.5 * md * (md + 1.0);
    return std::clamp(u / (static_cast<double>(n) * md), 0.0, 1.0);
}

double auc_mann_whitney(const LabeledDataset& dataset) {
    return auc_mann_whitney_sorted(dataset.non_diseased().scores(), dataset.diseased().scores());
}

namespace {

double interpolate(std::span<const double> grid, std::span<const double> tpr, double t) {
    if (t <= grid.front()) return tpr.front();
    if (t >= grid.back()) return tpr.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), t) - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
    return tpr[lo] + w * (tpr[hi] - tpr[lo]);
}

}  // namespace

double pauc(const RocCurveGrid& curve, double t_lo, double t_hi) {
    if (!(t_lo >= 0.0 && t_hi <= 1.0)) throw InputError("pAUC bounds must lie in [0,1]");
    if (!(t_lo < t_hi)) throw InputError("pAUC requires t_lo < t_hi");
    const auto grid = curve.grid().points();
    const auto tpr = curve.tpr();

    double prev_t = t_lo;
    double prev_r = interpolate(grid, tpr, t_lo);
    double area = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= t_lo) continue;
        if (grid[i] >= t_hi) break;
        area += 0.5 * (prev_r + tpr[i]) * (grid[i] - prev_t);
        prev_t = grid[i];
        prev_r = tpr[i];
    }
    area += 0.5 * (prev_r + interpolate(grid, tpr, t_hi)) * (t_hi - prev_t);
    return area;
}

}  // namespace mgroc
