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
#include "mgroc/gmm.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mgroc {

enum class CurveLabel { Empirical, Mg, Binormal, Replicate };

const char* to_string(CurveLabel label) noexcept;

/// A ROC curve sampled on an FPR grid: pairs (t, R(t)).
///
/// Invariants, checked at construction: one TPR per grid point, every TPR in
/// [0,1], and TPR non-decreasing along the grid.
class RocCurveGrid {
public:
    RocCurveGrid(FprGrid grid, std::vector<double> tpr, CurveLabel label);

    const FprGrid& grid() const noexcept { return grid_; }
    std::span<const double> tpr() const noexcept { return tpr_; }
    CurveLabel label() const noexcept { return label_; }

    bool operator==(const RocCurveGrid&) const = default;

private:
    FprGrid grid_;
    std::vector<double> tpr_;
    CurveLabel label_;
};

/// Returns a description of the first violated invariant, if any. Useful for
/// curves assembled outside the constructor (e.g. deserialized data).
std::optional<std::string> find_invariant_violation(std::span<const double> grid, std::span<const double> tpr);

/// One vertex of the full empirical ROC polyline.
struct OperatingPoint {
    double fpr;
    double tpr;
    bool operator==(const OperatingPoint&) const = default;
};

/// Empirical ROC resampled on `grid`. For each t the threshold is the smallest
/// c with FP(c) <= t; a score equal to the threshold counts as negative.
RocCurveGrid empirical_roc(const LabeledDataset& dataset, const FprGrid& grid);

/// Same as empirical_roc on pre-sorted raw arrays; writes grid.count() values to `tpr`.
void empirical_roc_sorted(std::span<const double> x_sorted, std::span<const double> y_sorted, const FprGrid& grid,
                          std::span<double> tpr);

/// Every vertex (FP(c), TP(c)) as c sweeps from +inf to -inf, starting at
/// (0,0) and ending at (1,1). Tied X/Y scores produce diagonal segments.
std::vector<OperatingPoint> empirical_roc_points(const LabeledDataset& dataset);

/// R(t) = Gbar(Fbar^{-1}(t)) on interior grid points; R(0)=0, R(1)=1.
RocCurveGrid functional_roc(const GmmModel& f_model, const GmmModel& g_model, const FprGrid& grid);

/// Trapezoidal area. Grids not touching 0 or 1 are extended flat.
double auc_trapezoid(const RocCurveGrid& curve);
double auc_trapezoid(std::span<const double> grid, std::span<const double> tpr) noexcept;
/// Trapezoidal area of the empirical polyline.
double auc_trapezoid(std::span<const OperatingPoint> points) noexcept;

/// U/(nm) with ties counted one half; midrank computation, O((n+m) log(n+m)).
double auc_mann_whitney(const LabeledDataset& dataset);
double auc_mann_whitney_sorted(std::span<const double> x_sorted, std::span<const double> y_sorted) noexcept;

/// Unnormalized partial area over [t_lo, t_hi], interpolating linearly between
/// grid points.
double pauc(const RocCurveGrid& curve, double t_lo, double t_hi);

}  // namespace mgroc
