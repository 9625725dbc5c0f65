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

#ifndef SIGREG_GAUSSIAN_PROCESS_HPP
#define SIGREG_GAUSSIAN_PROCESS_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace sigreg {

/// Squared-exponential kernel h^2 exp(-|xi - xj|^2 / lambda^2).
double se_kernel(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj, double h, double lambda);

/// Hyperparameters in log space: output scale h, input scale lambda and
/// observation noise standard deviation sigma.
struct GPHyperparameters {
    double log_h = 0.0;
    double log_lambda = 0.0;
    double log_sigma = 0.0;

    double h() const;
    double lambda() const;
    double noise_variance() const;
};

enum class GPMean { Zero, Constant };

struct LogLikelihood {
    double value = 0.0;
    /// d value / d (log h, log lambda, log sigma).
    Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
    /// Diagonal jitter that made V = K + sigma^2 I factorizable.
    double jitter = 0.0;
};

/// log N(y | 0, K + sigma^2 I) for inputs x (one row per sample). Throws
/// NumericalError when V cannot be factorized even with maximal jitter.
LogLikelihood gp_log_marginal_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                         const GPHyperparameters& hyper, bool with_gradient = true);

struct GPFitOptions {
    int restarts = 5;
    int max_iterations = 100;
    std::uint64_t seed = 0;
    GPMean mean = GPMean::Zero;
    /// Hyperparameters are fitted on a seeded random subset of at most this
    /// many rows; the posterior always conditions on every row. 0 = no limit.
    std::size_t max_likelihood_rows = 400;
    /// Skip optimization and use these hyperparameters.
    std::optional<GPHyperparameters> fixed;
};

struct GPModel {
    GPHyperparameters hyper;
    GPMean mean_policy = GPMean::Zero;
    double mean_value = 0.0;
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    double jitter = 0.0;
    double log_likelihood = 0.0;
    /// Lower Cholesky factor of V = K + (sigma^2 + jitter) I.
    Eigen::MatrixXd chol;
    /// V^{-1} (y - mean).
    Eigen::VectorXd alpha;
};

/// Maximum-likelihood hyperparameters by gradient ascent with backtracking in
/// log space, restarted from perturbed moment-based guesses. Deterministic for
/// a fixed seed.
GPModel gp_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const GPFitOptions& options = {});

/// Conditions a GP with given hyperparameters on (x, y).
GPModel gp_condition(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const GPHyperparameters& hyper,
                     GPMean mean = GPMean::Zero);

struct GPPrediction {
    double mean;
    /// Posterior variance of the latent function (noise excluded).
    double variance;
};

GPPrediction gp_predict(const GPModel& model, const Eigen::VectorXd& x_star);

/// Posterior means for every row of x_star.
Eigen::VectorXd gp_predict_mean(const GPModel& model, const Eigen::MatrixXd& x_star);

}  // namespace sigreg

#endif  // SIGREG_GAUSSIAN_PROCESS_HPP
