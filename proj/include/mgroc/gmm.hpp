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
#include "mgroc/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mgroc {

/// Univariate Gaussian mixture sum_k w_k N(mean_k, var_k).
///
/// Invariants checked at construction: equal-length parameter vectors with
/// K >= 1, weights > 0 summing to 1 within 1e-12, variances > 0, all finite.
class GmmModel {
public:
    GmmModel(std::vector<double> weights, std::vector<double> means, std::vector<double> variances,
             double log_likelihood = 0.0, std::size_t n_train = 0);

    static GmmModel single(double mean, double variance) { return GmmModel({1.0}, {mean}, {variance}); }

    std::size_t k() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> means() const noexcept { return means_; }
    std::span<const double> variances() const noexcept { return variances_; }
    double log_likelihood() const noexcept { return log_likelihood_; }
    std::size_t n_train() const noexcept { return n_train_; }

    /// -2 log L + (3K - 1) ln n
    double bic() const noexcept;

    bool operator==(const GmmModel&) const = default;

private:
    std::vector<double> weights_;
    std::vector<double> means_;
    std::vector<double> variances_;
    double log_likelihood_;
    std::size_t n_train_;
};

struct EmConfig {
    std::size_t k_min = 1;
    std::size_t k_max = 5;
    std::size_t max_iter = 500;
    double tol = 1e-8;  // relative log-likelihood change
    std::size_t n_restarts = 5;
    /// Unset means 1e-6 * (sample range)^2.
    std::optional<double> variance_floor;
    std::uint64_t seed = 20160917;

    void validate() const;
};

/// Per-restart diagnostics kept for inspection and testing.
struct EmRun {
    std::vector<double> log_likelihood_trace;  // after each E-step
    std::vector<std::size_t> reset_iterations;  // trace indices where a component was re-seeded
    bool converged = false;
};

struct EmFit {
    GmmModel model;
    std::vector<EmRun> runs;  // one per restart
    std::size_t best_run = 0;
};

double default_variance_floor(const ScoreSample& sample) noexcept;

/// EM for a fixed component count; returns the best of `config.n_restarts` runs.
EmFit fit_em_detailed(const ScoreSample& sample, std::size_t k, const EmConfig& config);
GmmModel fit_em(const ScoreSample& sample, std::size_t k, const EmConfig& config);

/// Fits every K in [k_min, min(k_max, n)] and keeps the lowest BIC
/// (ties go to the smaller K).
GmmModel select_k(const ScoreSample& sample, const EmConfig& config);

double pdf(const GmmModel& model, double x) noexcept;
double cdf(const GmmModel& model, double c) noexcept;
/// P(X > c) under the mixture.
double survival(const GmmModel& model, double c) noexcept;
/// Threshold c with survival(c) = t, t in (0,1). Bracket expansion then bisection
/// down to adjacent doubles.
double survival_inverse(const GmmModel& model, double t);

/// n draws: component from categorical(weights), then a normal draw.
ScoreSample sample_from(const GmmModel& model, std::size_t n, RngStream& rng,
                        Population population = Population::NonDiseased);
/// Same draws as sample_from, written into `out` without allocating.
void sample_into(const GmmModel& model, std::span<double> out, RngStream& rng);

/// {weights, means, variances, log_likelihood, n_train}
std::string to_json(const GmmModel& model);
GmmModel gmm_from_json(const std::string& text);

}  // namespace mgroc
