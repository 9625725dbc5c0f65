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

#ifndef SIGREG_CROSSVAL_HPP
#define SIGREG_CROSSVAL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigreg/datagen.hpp"
#include "sigreg/es_model.hpp"
#include "sigreg/gaussian_process.hpp"

namespace sigreg {

/// A one-step-ahead predictor of the conditional mean E[r_{k+1} | F_k],
/// trained and queried by window end k.
class Regressor {
public:
    virtual ~Regressor() = default;
    virtual std::string name() const = 0;
    /// Smallest admissible window end.
    virtual std::size_t min_end() const = 0;
    /// Fit with targets r_{k+1} for every k in ends.
    virtual void fit(const LabeledSeries& data, std::span<const std::size_t> ends) = 0;
    virtual std::vector<double> predict(const LabeledSeries& data, std::span<const std::size_t> ends) const = 0;
    /// Explanatory variables of the last fit (intercept excluded), when meaningful.
    virtual std::optional<long> explanatory() const { return std::nullopt; }
};

struct ModelSettings {
    /// Lags for AR and GP.
    int lags = 3;
    ESModelSpec es{};
    GPFitOptions gp{};
};

/// ar | es | gp | oracle (true mean passthrough) | zero.
std::unique_ptr<Regressor> make_regressor(std::string_view name, const ModelSettings& settings);

struct CrossValConfig {
    /// Repetitions of random sub-sampling.
    int folds = 20;
    /// Fraction of admissible windows held out in each repetition.
    double holdout = 0.2;
    std::uint64_t seed = 0;
    /// In-sample R^2 is measured on a fit to this leading fraction of windows.
    double train_fraction = 0.8;

    void validate() const;
};

struct FoldRecord {
    std::string model;
    int fold = 0;
    double mse = 0.0;
    double seconds = 0.0;
};

struct ModelReport {
    std::string name;
    double r2 = 0.0;
    /// NaN when the model has no parameter count.
    double adjusted_r2 = 0.0;
    double mse_mean = 0.0;
    double mse_std = 0.0;
    /// Fit + predict time summed over folds.
    double seconds = 0.0;
};

struct ExperimentReport {
    std::string dataset;
    std::size_t length = 0;
    CrossValConfig config;
    std::vector<ModelReport> models;
    std::vector<FoldRecord> folds;

    const ModelReport& model(std::string_view name) const;
};

/// Admissible window ends shared by all models: k in [max min_end, len-2].
std::vector<std::size_t> admissible_ends(const LabeledSeries& data, std::span<Regressor* const> models);

/// Repeated random sub-sampling: in each fold a random subset of window ends
/// is held out, every model is fitted on the rest and scored by the mean
/// squared distance of its predictions to the true conditional means.
ExperimentReport run_crossval(const LabeledSeries& data, std::span<Regressor* const> models,
                              const CrossValConfig& config);

}  // namespace sigreg

#endif  // SIGREG_CROSSVAL_HPP
