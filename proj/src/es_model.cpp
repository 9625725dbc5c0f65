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

#include "sigreg/es_model.hpp"

#include <stdexcept>
#include <string>

#include "sigreg/signature.hpp"

namespace sigreg {

TargetMode parse_target_mode(std::string_view name) {
    if (name == "reduced") return TargetMode::Reduced;
    if (name == "tensor") return TargetMode::Tensor;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected reduced|tensor)");
}

std::string_view to_string(TargetMode m) { return m == TargetMode::Reduced ? "reduced" : "tensor"; }

void ESModelSpec::validate() const {
    if (p < 1 || q < 1 || n < 1 || m < 1)
        throw std::invalid_argument("ES model: p, q, n and m must all be at least 1");
    if (solver.ridge < 0.0) throw std::invalid_argument("ES model: negative ridge");
}

std::size_t ESModelSpec::feature_count() const { return tensor_size(2, n); }

std::size_t ESModelSpec::target_count() const { return mode == TargetMode::Reduced ? 1 : tensor_size(2, m); }

std::vector<Word> ESModelSpec::feature_words() const { return all_words(2, n); }

std::vector<Word> ESModelSpec::target_words() const {
    if (mode == TargetMode::Reduced) return {Word{2}};
    return all_words(2, m);
}

namespace {

Eigen::VectorXd to_vector(const TruncatedTensor& t) {
    const auto c = t.coefficients();
    return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

TruncatedTensor window_signature(const TimeSeries& window, int degree, const ESModelSpec& spec) {
    return signature_of_time_series(rebase_window(window, spec.origin), degree, spec.embedding);
}

}  // namespace

Eigen::VectorXd window_features(const TimeSeries& window, const ESModelSpec& spec) {
    if (window.size() != static_cast<std::size_t>(spec.p) + 1)
        throw std::invalid_argument("ES model: window has " + std::to_string(window.size()) + " points, expected " +
                                    std::to_string(spec.p + 1));
    return to_vector(window_signature(window, spec.n, spec));
}

FeatureMatrix build_feature_matrix(const TimeSeries& ts, const ESModelSpec& spec) {
    spec.validate();
    const auto p = static_cast<std::size_t>(spec.p);
    const auto q = static_cast<std::size_t>(spec.q);
    if (ts.size() < p + q + 1)
        throw std::invalid_argument("ES model: series of length " + std::to_string(ts.size()) +
                                    " too short for p+q+1 = " + std::to_string(p + q + 1));
    const std::size_t rows = ts.size() - p - q;
    FeatureMatrix out;
    out.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(spec.feature_count()));
    out.targets.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(spec.target_count()));
    out.window_end.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t k = i + p;
        const auto row = static_cast<Eigen::Index>(i);
        out.features.row(row) = window_features(ts.slice(k - p, p + 1), spec).transpose();
        if (spec.mode == TargetMode::Reduced) {
            out.targets(row, 0) = ts[k + 1].r;
        } else {
            out.targets.row(row) = to_vector(window_signature(ts.slice(k + 1, q), spec.m, spec)).transpose();
        }
        out.window_end.push_back(k);
    }
    return out;
}

FittedESModel fit_es_features(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets,
                              const ESModelSpec& spec) {
    spec.validate();
    if (features.cols() != static_cast<Eigen::Index>(spec.feature_count()))
        throw std::invalid_argument("ES model: feature matrix has the wrong number of columns");
    // Column 0 is pi^() = 1 and acts as the intercept.
    const LinearFit lf = fit_least_squares(features, targets, Eigen::Index{0}, spec.solver);
    FittedESModel model;
    model.spec = spec;
    model.coefficients = lf.coefficients.transpose();
    model.residual_variance = lf.residual_variance;
    model.r2 = lf.r2;
    model.adjusted_r2 = lf.adjusted_r2;
    model.rank = lf.rank;
    model.samples = static_cast<std::size_t>(features.rows());
    const auto words = spec.feature_words();
    for (auto c : lf.dropped_columns) model.dropped_features.push_back(words[static_cast<std::size_t>(c)]);
    return model;
}

FittedESModel fit_es(const TimeSeries& ts, const ESModelSpec& spec) {
    const auto fm = build_feature_matrix(ts, spec);
    return fit_es_features(fm.features, fm.targets, spec);
}

Eigen::VectorXd predict_features(const FittedESModel& model, const Eigen::VectorXd& features) {
    if (features.size() != model.coefficients.cols())
        throw std::invalid_argument("ES model: feature vector has the wrong length");
    return model.coefficients * features;
}

double predict_next(const FittedESModel& model, const TimeSeries& window) {
    if (model.spec.mode != TargetMode::Reduced)
        throw std::invalid_argument("predict_next: model was fitted in tensor mode");
    return predict_features(model, window_features(window, model.spec))(0);
}

TruncatedTensor predict_mean_signature(const FittedESModel& model, const TimeSeries& window) {
    if (model.spec.mode != TargetMode::Tensor)
        throw std::invalid_argument("predict_mean_signature: model was fitted in reduced mode");
    const Eigen::VectorXd v = predict_features(model, window_features(window, model.spec));
    std::vector<double> coeffs(v.data(), v.data() + v.size());
    coeffs[0] = 1.0;
    return TruncatedTensor(2, model.spec.m, std::move(coeffs));
}

double induced_covariance(const TruncatedTensor& mu, const Word& I, const Word& J) {
    if (static_cast<int>(I.size() + J.size()) > mu.degree())
        throw std::invalid_argument("induced_covariance: |I|+|J| = " + std::to_string(I.size() + J.size()) +
                                    " exceeds degree " + std::to_string(mu.degree()));
    return apply_form(shuffle_words(I, J, mu.dimension()), mu) - mu[I] * mu[J];
}

Moments moments_from_mu(const TruncatedTensor& mu) {
    if (mu.dimension() != 2) throw std::invalid_argument("moments_from_mu: expected a 2-dimensional tensor");
    if (mu.degree() < 2) throw std::invalid_argument("moments_from_mu: degree must be at least 2");
    const double mean = mu[Word{2}];
    return {mean, 2.0 * mu[Word{2, 2}] - mean * mean};
}

}  // namespace sigreg
