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

#ifndef SIGREG_ES_MODEL_HPP
#define SIGREG_ES_MODEL_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "sigreg/least_squares.hpp"
#include "sigreg/path_embedding.hpp"
#include "sigreg/tensor_algebra.hpp"
#include "sigreg/time_series.hpp"

namespace sigreg {

/// Reduced: predict the next value r_{k+1} directly.
/// Tensor: predict every coordinate of the degree-m signature of the next q points.
enum class TargetMode { Reduced, Tensor };

TargetMode parse_target_mode(std::string_view name);
std::string_view to_string(TargetMode m);

/// ES(p, q, n, m): the past window holds the p+1 points k-p..k and is
/// described by its degree-n signature; the future window holds the q points
/// k+1..k+q and is described by its degree-m signature.
struct ESModelSpec {
    int p = 3;
    int q = 1;
    int n = 4;
    int m = 2;
    Embedding embedding = Embedding::TimeJoined;
    OriginPolicy origin = OriginPolicy::Shift;
    TargetMode mode = TargetMode::Reduced;
    LeastSquaresOptions solver{};

    void validate() const;
    std::size_t feature_count() const;
    std::size_t target_count() const;
    /// Words labelling feature columns / target columns, shortlex.
    std::vector<Word> feature_words() const;
    std::vector<Word> target_words() const;
};

struct FeatureMatrix {
    Eigen::MatrixXd features;
    Eigen::MatrixXd targets;
    /// Row i describes the window ending at point window_end[i].
    std::vector<std::size_t> window_end;
};

/// Signature coordinates of one past window (length p+1).
Eigen::VectorXd window_features(const TimeSeries& window, const ESModelSpec& spec);

/// One row per admissible window end k in [p, len-1-q].
FeatureMatrix build_feature_matrix(const TimeSeries& ts, const ESModelSpec& spec);

struct FittedESModel {
    ESModelSpec spec;
    /// (#targets) x (#features).
    Eigen::MatrixXd coefficients;
    Eigen::VectorXd residual_variance;
    Eigen::VectorXd r2;
    Eigen::VectorXd adjusted_r2;
    Eigen::Index rank = 0;
    std::size_t samples = 0;
    /// Feature columns left at zero because they were linearly dependent.
    std::vector<Word> dropped_features;
};

FittedESModel fit_es(const TimeSeries& ts, const ESModelSpec& spec);

/// Fit on precomputed rows. targets may be anything aligned with the rows,
/// e.g. known conditional means.
FittedESModel fit_es_features(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets,
                              const ESModelSpec& spec);

/// Coefficients applied to a feature vector; returns one value per target.
Eigen::VectorXd predict_features(const FittedESModel& model, const Eigen::VectorXd& features);

/// Reduced mode: the predicted next value. Window must have exactly p+1 points.
double predict_next(const FittedESModel& model, const TimeSeries& window);

/// Tensor mode: the predicted expected signature of the future window, with
/// level 0 pinned to 1.
TruncatedTensor predict_mean_signature(const FittedESModel& model, const TimeSeries& window);

/// Conditional covariance of pi^I and pi^J induced by an expected signature mu:
///   (pi^I ш pi^J)(mu) - pi^I(mu) pi^J(mu).
double induced_covariance(const TruncatedTensor& mu, const Word& I, const Word& J);

struct Moments {
    double mean;
    double variance;
};

/// One-step mean and variance from the expected signature of the next point:
/// m = pi^(2)(mu), sigma^2 = 2 pi^(2,2)(mu) - m^2.
Moments moments_from_mu(const TruncatedTensor& mu);

}  // namespace sigreg

#endif  // SIGREG_ES_MODEL_HPP
