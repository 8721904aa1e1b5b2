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

// Reference computations used only by tests. Each one takes the slow, obvious
// route so it stays independent of the library code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// AUC by enumerating every (x, y) pair; ties count one half.
inline double pairwise_auc(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (double xi : x) {
        for (double yj : y) {
            if (yj > xi) s += 1.0;
            else if (yj == xi) s += 0.5;
        }
    }
    return s / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

inline double fraction_above(std::span<const double> v, double c) {
    double k = 0;
    for (double s : v) k += s > c ? 1.0 : 0.0;
    return k / static_cast<double>(v.size());
}

/// Empirical TPR at FPR t by scanning every candidate threshold: the smallest
/// candidate c with FP(c) <= t. Candidates are the observed X values and -inf.
inline double scan_empirical_tpr(std::span<const double> x, std::span<const double> y, double t) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> cands(x.begin(), x.end());
    cands.push_back(-std::numeric_limits<double>::infinity());
    for (double c : cands) {
        if (fraction_above(x, c) <= t + 1e-12) best = std::min(best, c);
    }
    return fraction_above(y, best);
}

/// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50) {
    const auto step = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole,
                          double eps, int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
        return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
               self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return step(step, a, b, fa, fm, fb, whole, tol, depth);
}

/// Integrates over [a, b] by splitting into `pieces` panels first, so narrow
/// peaks are not missed by the initial Simpson sample.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol, int pieces = 200) {
    double s = 0.0;
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) s += simpson(f, a + i * h, a + (i + 1) * h, tol / pieces);
    return s;
}

/// Normal density written out directly.
inline double normal_density(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * M_PI * var);
}

/// Phi^{-1} by bisection on erfc. Above the median the upper tail is
/// bisected instead, so 1 - p keeps its relative precision.
inline double bisect_quantile(double p) {
    const bool upper = p > 0.5;
    const double target = upper ? 1.0 - p : p;
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double tail = upper ? 0.5 * std::erfc(mid / std::sqrt(2.0)) : 0.5 * std::erfc(-mid / std::sqrt(2.0));
        if ((upper && tail > target) || (!upper && tail < target)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::vector<double> normal_draws(std::mt19937_64& rng, std::size_t n, double mean, double sd) {
    std::normal_distribution<double> z(mean, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = z(rng);
    return v;
}

}  // namespace oracle
