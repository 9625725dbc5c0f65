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

#include "sigreg/ar_model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sigreg {

Eigen::VectorXd lag_vector(std::span<const double> values, std::size_t k, int p) {
    if (p < 1) throw std::invalid_argument("lag_vector: p must be at least 1");
    if (k + 1 < static_cast<std::size_t>(p) || k >= values.size())
        throw std::out_of_range("lag_vector: window end out of range");
    Eigen::VectorXd out(p);
    for (int i = 0; i < p; ++i) out(i) = values[k - static_cast<std::size_t>(i)];
    return out;
}

ARModel ar_fit_rows(const Eigen::MatrixXd& lags, const Eigen::VectorXd& y) {
    const auto rows = lags.rows();
    const auto p = lags.cols();
    if (p < 1) throw std::invalid_argument("ar_fit: p must be at least 1");
    if (y.size() != rows) throw std::invalid_argument("ar_fit: lag/target size mismatch");
    Eigen::MatrixXd design(rows, p + 1);
    design.col(0).setOnes();
    design.rightCols(p) = lags;
    LeastSquaresOptions opts;
    opts.rank_policy = RankPolicy::Strict;
    const LinearFit lf = fit_least_squares(design, y, Eigen::Index{0}, opts);

    ARModel model;
    model.p = static_cast<int>(p);
    model.phi = lf.coefficients.col(0);
    model.innovation_variance = lf.residual_variance(0);
    model.r2 = lf.r2(0);
    model.adjusted_r2 = lf.adjusted_r2(0);
    return model;
}

ARModel ar_fit(const TimeSeries& ts, int p) {
    if (p < 1) throw std::invalid_argument("ar_fit: p must be at least 1");
    const auto pu = static_cast<std::size_t>(p);
    if (ts.size() < 2 * pu + 2)
        throw std::invalid_argument("ar_fit: series of length " + std::to_string(ts.size()) + " too short for p = " +
                                    std::to_string(p));
    const auto values = ts.values();
    const std::size_t first = pu - 1;
    const auto rows = static_cast<Eigen::Index>(values.size() - 1 - first);
    Eigen::MatrixXd lags(rows, p);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::size_t k = first + static_cast<std::size_t>(i);
        lags.row(i) = lag_vector(values, k, p).transpose();
        y(i) = values[k + 1];
    }
    return ar_fit_rows(lags, y);
}

double ar_predict(const ARModel& model, const Eigen::VectorXd& lags) {
    if (lags.size() != model.p) throw std::invalid_argument("ar_predict: lag vector has the wrong length");
    return model.phi(0) + model.phi.tail(model.p).dot(lags);
}

}  // namespace sigreg
