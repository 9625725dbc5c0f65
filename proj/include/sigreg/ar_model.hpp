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

#ifndef SIGREG_AR_MODEL_HPP
#define SIGREG_AR_MODEL_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "sigreg/least_squares.hpp"
#include "sigreg/time_series.hpp"

namespace sigreg {

/// r_{t+1} = phi_0 + phi_1 r_t + ... + phi_p r_{t-p+1} + a_{t+1}
struct ARModel {
    int p = 0;
    /// phi_0 .. phi_p.
    Eigen::VectorXd phi;
    /// Estimated variance of a_t.
    double innovation_variance = 0.0;
    double r2 = 0.0;
    double adjusted_r2 = 0.0;
};

/// Lag vector (r_k, r_{k-1}, ..., r_{k-p+1}) for window end k. Requires k >= p-1.
Eigen::VectorXd lag_vector(std::span<const double> values, std::size_t k, int p);

/// Least squares fit on every t in [p-1, len-2]. Requires len >= 2p+2.
/// Rank-deficient designs throw RankDeficientError.
ARModel ar_fit(const TimeSeries& ts, int p);

/// Fit on explicit rows: each row of lags is a lag_vector, y the next value.
ARModel ar_fit_rows(const Eigen::MatrixXd& lags, const Eigen::VectorXd& y);

/// One-step conditional mean given the lag vector.
double ar_predict(const ARModel& model, const Eigen::VectorXd& lags);

}  // namespace sigreg

#endif  // SIGREG_AR_MODEL_HPP
