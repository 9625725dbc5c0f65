/* Copyright 2026 The sigreg Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "sigreg/crossval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sigreg/ar_model.hpp"
#include "sigreg/least_squares.hpp"

namespace sigreg {

namespace {

double next_value(const LabeledSeries& data, std::size_t k) { return data.ts[k + 1].r; }

Eigen::MatrixXd lag_rows(const LabeledSeries& data, std::span<const std::size_t> ends, int p) {
    const auto values = data.ts.values();
    Eigen::MatrixXd x(static_cast<Eigen::Index>(ends.size()), p);
    for (std::size_t i = 0; i < ends.size(); ++i)
        x.row(static_cast<Eigen::Index>(i)) = lag_vector(values, ends[i], p).transpose();
    return x;
}

Eigen::VectorXd next_values(const LabeledSeries& data, std::span<const std::size_t> ends) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(ends.size()));
    for (std::size_t i = 0; i < ends.size(); ++i) y(static_cast<Eigen::Index>(i)) = next_value(data, ends[i]);
    return y;
}

class ARRegressor final : public Regressor {
public:
    explicit ARRegressor(int p) : p_(p) {
        if (p < 1) throw std::invalid_argument("AR: lags must be at least 1");
    }
    std::string name() const override { return "ar"; }
    std::size_t min_end() const override { return static_cast<std::size_t>(p_ - 1); }
    void fit(const LabeledSeries& data, std::span<const std::size_t> ends) override {
        model_ = ar_fit_rows(lag_rows(data, ends, p_), next_values(data, ends));
    }
    std::vector<double> predict(const LabeledSeries& data, std::span<const std::size_t> ends) const override {
        const Eigen::MatrixXd x = lag_rows(data, ends, p_);
        const Eigen::VectorXd pred = (x * model_.phi.tail(p_)).array() + model_.phi(0);
        return {pred.data(), pred.data() + pred.size()};
    }
    std::optional<long> explanatory() const override { return p_; }

private:
    int p_;
    ARModel model_;
};

class ESRegressor final : public Regressor {
public:
    explicit ESRegressor(ESModelSpec spec) : spec_(std::move(spec)) {
        spec_.mode = TargetMode::Reduced;
        spec_.validate();
    }
    std::string name() const override { return "es"; }
    std::size_t min_end() const override { return static_cast<std::size_t>(spec_.p); }
    void fit(const LabeledSeries& data, std::span<const std::size_t> ends) override {
        model_ = fit_es_features(features(data, ends), next_values(data, ends), spec_);
    }
    std::vector<double> predict(const LabeledSeries& data, std::span<const std::size_t> ends) const override {
        const Eigen::VectorXd pred = features(data, ends) * model_.coefficients.row(0).transpose();
        return {pred.data(), pred.data() + pred.size()};
    }
    std::optional<long> explanatory() const override { return static_cast<long>(model_.rank) - 1; }

private:
    Eigen::MatrixXd features(const LabeledSeries& data, std::span<const std::size_t> ends) const {
        const auto p = static_cast<std::size_t>(spec_.p);
        Eigen::MatrixXd f(static_cast<Eigen::Index>(ends.size()), static_cast<Eigen::Index>(spec_.feature_count()));
        for (std::size_t i = 0; i < ends.size(); ++i)
            f.row(static_cast<Eigen::Index>(i)) = window_features(data.ts.slice(ends[i] - p, p + 1), spec_).transpose();
        return f;
    }

    ESModelSpec spec_;
    FittedESModel model_;
};

class GPRegressor final : public Regressor {
public:
    GPRegressor(int p, GPFitOptions options) : p_(p), options_(std::move(options)) {
        if (p < 1) throw std::invalid_argument("GP: lags must be at least 1");
    }
    std::string name() const override { return "gp"; }
    std::size_t min_end() const override { return static_cast<std::size_t>(p_ - 1); }
    void fit(const LabeledSeries& data, std::span<const std::size_t> ends) override {
        model_ = gp_fit(lag_rows(data, ends, p_), next_values(data, ends), options_);
    }
    std::vector<double> predict(const LabeledSeries& data, std::span<const std::size_t> ends) const override {
        const Eigen::VectorXd pred = gp_predict_mean(model_, lag_rows(data, ends, p_));
        return {pred.data(), pred.data() + pred.size()};
    }

private:
    int p_;
    GPFitOptions options_;
    GPModel model_;
};

class OracleRegressor final : public Regressor {
public:
    std::string name() const override { return "oracle"; }
    std::size_t min_end() const override { return 0; }
    void fit(const LabeledSeries&, std::span<const std::size_t>) override {}
    std::vector<double> predict(const LabeledSeries& data, std::span<const std::size_t> ends) const override {
        std::vector<double> out;
        out.reserve(ends.size());
        for (auto k : ends) out.push_back(data.true_means.at(k));
        return out;
    }
};

class ZeroRegressor final : public Regressor {
public:
    std::string name() const override { return "zero"; }
    std::size_t min_end() const override { return 0; }
    void fit(const LabeledSeries&, std::span<const std::size_t>) override {}
    std::vector<double> predict(const LabeledSeries&, std::span<const std::size_t> ends) const override {
        return std::vector<double>(ends.size(), 0.0);
    }
    std::optional<long> explanatory() const override { return 0; }
};

}  // namespace

std::unique_ptr<Regressor> make_regressor(std::string_view name, const ModelSettings& settings) {
    if (name == "ar") return std::make_unique<ARRegressor>(settings.lags);
    if (name == "es") return std::make_unique<ESRegressor>(settings.es);
    if (name == "gp") return std::make_unique<GPRegressor>(settings.lags, settings.gp);
    if (name == "oracle") return std::make_unique<OracleRegressor>();
    if (name == "zero") return std::make_unique<ZeroRegressor>();
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected ar|es|gp|oracle|zero)");
}

void CrossValConfig::validate() const {
    if (folds < 1) throw std::invalid_argument("crossval: folds must be at least 1");
    if (!(holdout > 0.0 && holdout < 1.0)) throw std::invalid_argument("crossval: holdout must lie in (0, 1)");
    if (!(train_fraction > 0.0 && train_fraction <= 1.0))
        throw std::invalid_argument("crossval: train fraction must lie in (0, 1]");
}

const ModelReport& ExperimentReport::model(std::string_view name) const {
    for (const auto& m : models)
        if (m.name == name) return m;
    throw std::out_of_range("report has no model '" + std::string(name) + "'");
}

std::vector<std::size_t> admissible_ends(const LabeledSeries& data, std::span<Regressor* const> models) {
    if (data.true_means.size() != data.ts.size())
        throw std::invalid_argument("crossval: true means and series differ in length");
    std::size_t first = 0;
    for (const auto* m : models) first = std::max(first, m->min_end());
    std::vector<std::size_t> ends;
    for (std::size_t k = first; k + 1 < data.ts.size(); ++k) ends.push_back(k);
    return ends;
}

ExperimentReport run_crossval(const LabeledSeries& data, std::span<Regressor* const> models,
                              const CrossValConfig& config) {
    config.validate();
    const auto ends = admissible_ends(data, models);
    const auto held = static_cast<std::size_t>(std::llround(config.holdout * static_cast<double>(ends.size())));
    if (held < 1 || held + 2 > ends.size())
        throw std::invalid_argument("crossval: series too short for the requested holdout");

    ExperimentReport report;
    report.length = data.ts.size();
    report.config = config;

    // In-sample fit on the leading windows.
    const auto lead = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::floor(config.train_fraction * static_cast<double>(ends.size()))));
    const std::span<const std::size_t> lead_ends(ends.data(), std::min(lead, ends.size()));
    Eigen::VectorXd lead_y(static_cast<Eigen::Index>(lead_ends.size()));
    for (std::size_t i = 0; i < lead_ends.size(); ++i)
        lead_y(static_cast<Eigen::Index>(i)) = next_value(data, lead_ends[i]);
    for (auto* m : models) {
        m->fit(data, lead_ends);
        const auto fitted = m->predict(data, lead_ends);
        ModelReport mr;
        mr.name = m->name();
        mr.r2 = r_squared(lead_y, Eigen::Map<const Eigen::VectorXd>(fitted.data(), lead_y.size()));
        const auto k = m->explanatory();
        mr.adjusted_r2 = k ? adjusted_r_squared(mr.r2, lead_y.size(), *k) : std::numeric_limits<double>::quiet_NaN();
        report.models.push_back(mr);
    }

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(ends.size());
    std::vector<std::vector<double>> mses(models.size());
    for (int fold = 0; fold < config.folds; ++fold) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> test, train;
        for (std::size_t i = 0; i < order.size(); ++i) (i < held ? test : train).push_back(ends[order[i]]);
        std::sort(test.begin(), test.end());
        std::sort(train.begin(), train.end());
        for (std::size_t j = 0; j < models.size(); ++j) {
            const auto start = std::chrono::steady_clock::now();
            models[j]->fit(data, train);
            const auto pred = models[j]->predict(data, test);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            double sse = 0.0;
            for (std::size_t i = 0; i < test.size(); ++i) {
                const double e = pred[i] - data.true_means[test[i]];
                sse += e * e;
            }
            const double mse = sse / static_cast<double>(test.size());
            mses[j].push_back(mse);
            report.models[j].seconds += secs;
            report.folds.push_back({report.models[j].name, fold, mse, secs});
        }
    }
    for (std::size_t j = 0; j < models.size(); ++j) {
        const auto& v = mses[j];
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        report.models[j].mse_mean = mean;
        report.models[j].mse_std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    }
    return report;
}

}  // namespace sigreg
