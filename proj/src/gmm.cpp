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

#include "mgroc/gmm.hpp"

#include "mgroc/error.hpp"
#include "mgroc/normal.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace mgroc {

GmmModel::GmmModel(std::vector<double> weights, std::vector<double> means, std::vector<double> variances,
                   double log_likelihood, std::size_t n_train)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      variances_(std::move(variances)),
      log_likelihood_(log_likelihood),
      n_train_(n_train) {
    const std::size_t k = weights_.size();
    if (k == 0) throw InputError("mixture needs at least one component");
    if (means_.size() != k || variances_.size() != k) {
        throw InputError("mixture weights, means and variances must have equal length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) throw InputError("mixture weights must be positive");
        if (!std::isfinite(means_[i])) throw InputError("mixture means must be finite");
        if (!(variances_[i] > 0.0) || !std::isfinite(variances_[i])) {
            throw InputError("mixture variances must be positive and finite");
        }
        total += weights_[i];
    }
    if (std::fabs(total - 1.0) > 1e-12) throw InputError("mixture weights must sum to 1");
}

double GmmModel::bic() const noexcept {
    const double params = 3.0 * static_cast<double>(k()) - 1.0;
    return -2.0 * log_likelihood_ + params * std::log(static_cast<double>(n_train_));
}

void EmConfig::validate() const {
    if (k_min < 1 || k_min > k_max) throw InputError("EM config requires 1 <= k_min <= k_max");
    if (max_iter < 1) throw InputError("EM config requires max_iter >= 1");
    if (!(tol > 0.0)) throw InputError("EM config requires tol > 0");
    if (n_restarts < 1) throw InputError("EM config requires n_restarts >= 1");
    if (variance_floor && !(*variance_floor > 0.0)) throw InputError("EM config requires variance_floor > 0");
}

double default_variance_floor(const ScoreSample& sample) noexcept {
    const double range = sample.max() - sample.min();
    if (range > 0.0) return 1e-6 * range * range;
    // Constant sample: scale by magnitude instead of range.
    const double scale = std::max(1.0, std::fabs(sample.min()));
    return 1e-6 * scale * scale;
}

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

struct Params {
    std::vector<double> w, mu, var;
};

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Lloyd iterations in 1-D from the given centers; returns per-cluster mean and
// biased variance (floored). Empty clusters keep their center.
Params kmeans_init(std::span<const double> x, std::vector<double> centers, double floor) {
    const std::size_t k = centers.size();
    std::vector<std::size_t> assign(x.size(), 0);
    for (int iter = 0; iter < 25; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = std::fabs(x[i] - centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) changed = true;
            assign[i] = best;
        }
        std::vector<double> sum(k, 0.0);
        std::vector<std::size_t> cnt(k, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            sum[assign[i]] += x[i];
            ++cnt[assign[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (cnt[c] > 0) centers[c] = sum[c] / static_cast<double>(cnt[c]);
        }
        if (!changed && iter > 0) break;
    }
    Params p;
    p.w.assign(k, 1.0 / static_cast<double>(k));
    p.mu = centers;
    p.var.assign(k, floor);
    std::vector<double> ss(k, 0.0);
    std::vector<std::size_t> cnt(k, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - centers[assign[i]];
        ss[assign[i]] += d * d;
        ++cnt[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (cnt[c] > 0) p.var[c] = std::max(ss[c] / static_cast<double>(cnt[c]), floor);
    }
    return p;
}

// Deterministic farthest-point seeding starting at the median.
std::vector<double> farthest_point_centers(std::span<const double> sorted, std::size_t k) {
    std::vector<double> centers{sorted[sorted.size() / 2]};
    std::vector<double> dist(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) dist[i] = std::fabs(sorted[i] - centers[0]);
    while (centers.size() < k) {
        const auto far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        centers.push_back(sorted[far]);
        for (std::size_t i = 0; i < sorted.size(); ++i) dist[i] = std::min(dist[i], std::fabs(sorted[i] - sorted[far]));
    }
    return centers;
}

// Randomized farthest-point seeding: next center drawn with probability
// proportional to squared distance (k-means++).
std::vector<double> sampled_centers(std::span<const double> sorted, std::size_t k, RngStream& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
    std::vector<double> centers{sorted[pick(rng)]};
    std::vector<double> d2(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) d2[i] = (sorted[i] - centers[0]) * (sorted[i] - centers[0]);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (centers.size() < k) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t chosen = pick(rng);
        if (total > 0.0) {
            double u = unit(rng) * total;
            for (std::size_t i = 0; i < d2.size(); ++i) {
                u -= d2[i];
                if (u <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        }
        const double c = sorted[chosen];
        centers.push_back(c);
        for (std::size_t i = 0; i < sorted.size(); ++i) d2[i] = std::min(d2[i], (sorted[i] - c) * (sorted[i] - c));
    }
    return centers;
}

// E-step: fills resp (n x k, row-major) and returns the log-likelihood.
double e_step(std::span<const double> x, const Params& p, std::vector<double>& resp) {
    const std::size_t k = p.w.size();
    std::vector<double> log_coef(k), inv_two_var(k);
    for (std::size_t c = 0; c < k; ++c) {
        log_coef[c] = std::log(p.w[c]) - kLogSqrt2Pi - 0.5 * std::log(p.var[c]);
        inv_two_var[c] = 0.5 / p.var[c];
    }
    double ll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double* row = resp.data() + i * k;
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double d = x[i] - p.mu[c];
            row[c] = log_coef[c] - d * d * inv_two_var[c];
            top = std::max(top, row[c]);
        }
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            row[c] = std::exp(row[c] - top);
            s += row[c];
        }
        for (std::size_t c = 0; c < k; ++c) row[c] /= s;
        ll += top + std::log(s);
    }
    return ll;
}

// M-step with variance floor. Components whose weight drops below 1/n are
// re-seeded at a random data point. Returns true if any reset happened.
bool m_step(std::span<const double> x, const std::vector<double>& resp, Params& p, double floor, RngStream& rng) {
    const std::size_t k = p.w.size();
    const auto n = static_cast<double>(x.size());
    bool reset = false;
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    for (std::size_t c = 0; c < k; ++c) {
        double nk = 0.0, sx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            nk += resp[i * k + c];
            sx += resp[i * k + c] * x[i];
        }
        if (!(nk / n >= 1.0 / n)) {
            p.mu[c] = x[pick(rng)];
            p.var[c] = floor;
            p.w[c] = 1.0 / n;
            reset = true;
            continue;
        }
        const double mu = sx / nk;
        double sv = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - mu;
            sv += resp[i * k + c] * d * d;
        }
        p.mu[c] = mu;
        p.var[c] = std::max(sv / nk, floor);
        p.w[c] = nk / n;
    }
    const double total = std::accumulate(p.w.begin(), p.w.end(), 0.0);
    for (double& w : p.w) w /= total;
    return reset;
}

bool params_finite(const Params& p) {
    for (std::size_t c = 0; c < p.w.size(); ++c) {
        if (!std::isfinite(p.w[c]) || !std::isfinite(p.mu[c]) || !std::isfinite(p.var[c]) || !(p.w[c] > 0.0)) {
            return false;
        }
    }
    return true;
}

std::uint64_t fit_seed(std::uint64_t seed, std::size_t k) {
    return splitmix64(seed ^ (0xA24BAED4963EE407ULL * static_cast<std::uint64_t>(k)));
}

// Re-normalizes after the 1e-12 weight check; EM sums drift by a few ulps.
GmmModel make_model(Params p, double ll, std::size_t n) {
    const double total = std::accumulate(p.w.begin(), p.w.end(), 0.0);
    for (double& w : p.w) w /= total;
    return GmmModel(std::move(p.w), std::move(p.mu), std::move(p.var), ll, n);
}

}  // namespace

EmFit fit_em_detailed(const ScoreSample& sample, std::size_t k, const EmConfig& config) {
    config.validate();
    if (k < 1) throw InputError("component count must be at least 1");
    const auto x = sample.scores();
    const std::size_t n = x.size();
    if (k > n) {
        throw InputError("component count " + std::to_string(k) + " exceeds sample size " + std::to_string(n));
    }
    const double floor = config.variance_floor.value_or(default_variance_floor(sample));

    if (k == 1) {
        // Closed-form M-step.
        const double mu = mean_of(x);
        double ss = 0.0;
        for (double v : x) ss += (v - mu) * (v - mu);
        Params p{{1.0}, {mu}, {std::max(ss / static_cast<double>(n), floor)}};
        std::vector<double> resp(n);
        const double ll = e_step(x, p, resp);
        if (!std::isfinite(ll)) throw NumericalError("single-component fit produced a non-finite likelihood");
        EmRun run;
        run.log_likelihood_trace = {ll};
        run.converged = true;
        return EmFit{make_model(std::move(p), ll, n), {std::move(run)}, 0};
    }

    const std::uint64_t base = fit_seed(config.seed, k);
    std::vector<EmRun> runs;
    std::optional<Params> best;
    double best_ll = -std::numeric_limits<double>::infinity();
    std::size_t best_run = 0;
    std::vector<double> resp(n * k);

    for (std::size_t r = 0; r < config.n_restarts; ++r) {
        RngStream rng = derive_stream(base, r);
        Params p = kmeans_init(x, r == 0 ? farthest_point_centers(x, k) : sampled_centers(x, k, rng), floor);
        EmRun run;
        bool after_reset = false;
        double ll = e_step(x, p, resp);
        run.log_likelihood_trace.push_back(ll);
        for (std::size_t iter = 0; iter < config.max_iter && std::isfinite(ll); ++iter) {
            after_reset = m_step(x, resp, p, floor, rng);
            const double prev = ll;
            ll = e_step(x, p, resp);
            if (after_reset) run.reset_iterations.push_back(run.log_likelihood_trace.size());
            run.log_likelihood_trace.push_back(ll);
            if (!after_reset && std::fabs(ll - prev) < config.tol * std::max(std::fabs(prev), 1e-300)) {
                run.converged = true;
                break;
            }
        }
        if (std::isfinite(ll) && params_finite(p) && ll > best_ll) {
            best_ll = ll;
            best = p;
            best_run = r;
        }
        runs.push_back(std::move(run));
    }
    if (!best) {
        throw NumericalError("EM collapsed in every restart for K=" + std::to_string(k));
    }
    return EmFit{make_model(std::move(*best), best_ll, n), std::move(runs), best_run};
}

GmmModel fit_em(const ScoreSample& sample, std::size_t k, const EmConfig& config) {
    return fit_em_detailed(sample, k, config).model;
}

GmmModel select_k(const ScoreSample& sample, const EmConfig& config) {
    config.validate();
    const std::size_t n = sample.size();
    if (config.k_min > n) {
        throw InputError("k_min " + std::to_string(config.k_min) + " exceeds sample size " + std::to_string(n));
    }
    const std::size_t k_hi = std::min(config.k_max, n);
    std::optional<GmmModel> best;
    std::optional<NumericalError> last_error;
    for (std::size_t k = config.k_min; k <= k_hi; ++k) {
        try {
            GmmModel m = fit_em(sample, k, config);
            if (!best || m.bic() < best->bic()) best = std::move(m);
        } catch (const NumericalError& e) {
            last_error = e;
        }
    }
    if (!best) throw *last_error;
    return *best;
}

double pdf(const GmmModel& model, double x) noexcept {
    double s = 0.0;
    for (std::size_t c = 0; c < model.k(); ++c) {
        const double sd = std::sqrt(model.variances()[c]);
        s += model.weights()[c] * normal::pdf((x - model.means()[c]) / sd) / sd;
    }
    return s;
}

double cdf(const GmmModel& model, double c) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < model.k(); ++i) {
        s += model.weights()[i] * normal::cdf((c - model.means()[i]) / std::sqrt(model.variances()[i]));
    }
    return std::clamp(s, 0.0, 1.0);
}

double survival(const GmmModel& model, double c) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < model.k(); ++i) {
        s += model.weights()[i] * normal::upper_tail((c - model.means()[i]) / std::sqrt(model.variances()[i]));
    }
    return std::clamp(s, 0.0, 1.0);
}

double survival_inverse(const GmmModel& model, double t) {
    if (!(t > 0.0 && t < 1.0)) throw InputError("survival_inverse needs t in (0,1)");
    const auto [mu_lo, mu_hi] = std::minmax_element(model.means().begin(), model.means().end());
    const double sd_max = std::sqrt(*std::max_element(model.variances().begin(), model.variances().end()));
    double lo = *mu_lo - 10.0 * sd_max;
    double hi = *mu_hi + 10.0 * sd_max;
    for (int i = 0; i < 64 && survival(model, lo) < t; ++i) lo -= (hi - lo);
    for (int i = 0; i < 64 && survival(model, hi) > t; ++i) hi += (hi - lo);

    // survival(lo) >= t >= survival(hi)
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const double s = survival(model, mid);
        if (s == t) return mid;
        if (s > t) lo = mid;
        else hi = mid;
    }
    return std::fabs(survival(model, lo) - t) <= std::fabs(survival(model, hi) - t) ? lo : hi;
}

void sample_into(const GmmModel& model, std::span<double> out, RngStream& rng) {
    const std::size_t k = model.k();
    std::vector<double> cum(k), sd(k);
    double acc = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        acc += model.weights()[c];
        cum[c] = acc;
        sd[c] = std::sqrt(model.variances()[c]);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 1.0);
    for (double& v : out) {
        std::size_t c = 0;
        if (k > 1) {
            const double u = unit(rng) * acc;
            while (c + 1 < k && u >= cum[c]) ++c;
        }
        v = model.means()[c] + sd[c] * z(rng);
    }
}

ScoreSample sample_from(const GmmModel& model, std::size_t n, RngStream& rng, Population population) {
    if (n < 2) throw InputError("sample_from needs n >= 2");
    std::vector<double> draws(n);
    sample_into(model, draws, rng);
    return ScoreSample(std::move(draws), population, "simulated");
}

std::string to_json(const GmmModel& model) {
    nlohmann::json j;
    j["weights"] = std::vector<double>(model.weights().begin(), model.weights().end());
    j["means"] = std::vector<double>(model.means().begin(), model.means().end());
    j["variances"] = std::vector<double>(model.variances().begin(), model.variances().end());
    j["log_likelihood"] = model.log_likelihood();
    j["n_train"] = model.n_train();
    return j.dump(2);
}

GmmModel gmm_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return GmmModel(j.at("weights").get<std::vector<double>>(), j.at("means").get<std::vector<double>>(),
                        j.at("variances").get<std::vector<double>>(), j.at("log_likelihood").get<double>(),
                        j.at("n_train").get<std::size_t>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid mixture JSON: ") + e.what());
    }
}

}  // namespace mgroc
