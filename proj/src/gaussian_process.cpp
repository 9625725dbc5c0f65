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

#include "sigreg/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "sigreg/errors.hpp"

namespace sigreg {

namespace {

constexpr double kLogBound = 15.0;

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd d2(a.rows(), b.rows());
    for (Eigen::Index j = 0; j < b.rows(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) d2(i, j) = (a.row(i) - b.row(j)).squaredNorm();
    return d2;
}

Eigen::MatrixXd se_matrix(const Eigen::MatrixXd& d2, const GPHyperparameters& hp) {
    const double h2 = hp.h() * hp.h();
    const double inv_l2 = 1.0 / (hp.lambda() * hp.lambda());
    return (h2 * (-d2.array() * inv_l2).exp()).matrix();
}

struct Factorization {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
};

// Factorizes v in place, adding diagonal jitter 1e-10 tr/N, doubling up to
// 1e-4 tr/N, when the plain matrix is not numerically positive definite.
Factorization factorize(Eigen::MatrixXd v) {
    Factorization f;
    f.llt.compute(v);
    if (f.llt.info() == Eigen::Success) return f;
    const double base = v.trace() / static_cast<double>(v.rows());
    for (double j = 1e-10 * base; j <= 1e-4 * base * (1 + 1e-12); j *= 2.0) {
        Eigen::MatrixXd vj = v;
        vj.diagonal().array() += j;
        f.llt.compute(vj);
        if (f.llt.info() == Eigen::Success) {
            f.jitter = j;
            return f;
        }
    }
    throw NumericalError("gaussian process: covariance matrix not positive definite even with maximal jitter");
}

double centre_value(const Eigen::VectorXd& y, GPMean mean) { return mean == GPMean::Constant ? y.mean() : 0.0; }

double stddev(const Eigen::VectorXd& y) {
    if (y.size() < 2) return 0.0;
    return std::sqrt((y.array() - y.mean()).square().sum() / static_cast<double>(y.size() - 1));
}

GPHyperparameters clamp(GPHyperparameters hp) {
    hp.log_h = std::clamp(hp.log_h, -kLogBound, kLogBound);
    hp.log_lambda = std::clamp(hp.log_lambda, -kLogBound, kLogBound);
    hp.log_sigma = std::clamp(hp.log_sigma, -kLogBound, kLogBound);
    return hp;
}

Eigen::Vector3d to_vec(const GPHyperparameters& hp) { return {hp.log_h, hp.log_lambda, hp.log_sigma}; }
GPHyperparameters from_vec(const Eigen::Vector3d& v) { return clamp({v(0), v(1), v(2)}); }

double safe_value(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const GPHyperparameters& hp,
                  LogLikelihood* out) {
    try {
        *out = gp_log_marginal_likelihood(x, y, hp, true);
        return std::isfinite(out->value) && out->gradient.allFinite() ? out->value
                                                                       : -std::numeric_limits<double>::infinity();
    } catch (const NumericalError&) {
        return -std::numeric_limits<double>::infinity();
    }
}

// Gradient ascent with Armijo backtracking. The ascent direction is the
// gradient preconditioned by a BFGS estimate of the inverse negative Hessian,
// which matters along the long ridge between log h and log lambda.
GPHyperparameters ascend(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, GPHyperparameters start,
                         int max_iterations, double* best_value) {
    Eigen::Vector3d theta = to_vec(clamp(start));
    LogLikelihood cur;
    double f = safe_value(x, y, from_vec(theta), &cur);
    if (!std::isfinite(f)) {
        *best_value = f;
        return from_vec(theta);
    }
    Eigen::Matrix3d h = Eigen::Matrix3d::Identity() / std::max(cur.gradient.norm(), 1.0);
    int quiet = 0;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::Vector3d g = cur.gradient;
        if (g.lpNorm<Eigen::Infinity>() < 1e-6) break;
        Eigen::Vector3d dir = h * g;
        if (g.dot(dir) <= 0.0) {
            h = Eigen::Matrix3d::Identity() / std::max(g.norm(), 1.0);
            dir = h * g;
        }
        // At most one e-fold per coordinate per iteration.
        double s = std::min(1.0, 1.0 / std::max(dir.lpNorm<Eigen::Infinity>(), 1e-300));
        bool accepted = false;
        LogLikelihood trial;
        Eigen::Vector3d next;
        double fn = f;
        for (int bt = 0; bt < 40; ++bt, s *= 0.5) {
            next = to_vec(from_vec(theta + s * dir));
            fn = safe_value(x, y, from_vec(next), &trial);
            if (fn >= f + 1e-4 * g.dot(next - theta)) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        const Eigen::Vector3d ds = next - theta;
        const Eigen::Vector3d dg = g - trial.gradient;  // gradient change of -f
        const double sy = ds.dot(dg);
        if (sy > 1e-12 * ds.norm() * dg.norm()) {
            const Eigen::Matrix3d v = Eigen::Matrix3d::Identity() - (ds * dg.transpose()) / sy;
            h = v * h * v.transpose() + (ds * ds.transpose()) / sy;
        }
        const double gain = fn - f;
        theta = next;
        f = fn;
        cur = trial;
        quiet = gain < 1e-9 * (1.0 + std::abs(f)) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    *best_value = f;
    return from_vec(theta);
}

}  // namespace

double se_kernel(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj, double h, double lambda) {
    if (!(h > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("se_kernel: h and lambda must be positive");
    return h * h * std::exp(-(xi - xj).squaredNorm() / (lambda * lambda));
}

double GPHyperparameters::h() const { return std::exp(log_h); }
double GPHyperparameters::lambda() const { return std::exp(log_lambda); }
double GPHyperparameters::noise_variance() const { return std::exp(2.0 * log_sigma); }

LogLikelihood gp_log_marginal_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                         const GPHyperparameters& hyper, bool with_gradient) {
    const auto n = x.rows();
    if (n == 0 || y.size() != n) throw std::invalid_argument("gp_log_marginal_likelihood: bad input sizes");
    const Eigen::MatrixXd d2 = squared_distances(x, x);
    const Eigen::MatrixXd k = se_matrix(d2, hyper);
    Eigen::MatrixXd v = k;
    v.diagonal().array() += hyper.noise_variance();
    const Factorization fac = factorize(std::move(v));
    const Eigen::VectorXd alpha = fac.llt.solve(y);

    LogLikelihood out;
    out.jitter = fac.jitter;
    const Eigen::MatrixXd l = fac.llt.matrixL();
    out.value = -0.5 * y.dot(alpha) - l.diagonal().array().log().sum() -
                0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    if (!with_gradient) return out;

    // d/dtheta = 1/2 (alpha^T dV alpha - tr(V^{-1} dV))
    const Eigen::MatrixXd linv = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd vinv = Eigen::MatrixXd::Zero(n, n);
    vinv.selfadjointView<Eigen::Lower>().rankUpdate(linv.transpose());
    vinv = vinv.selfadjointView<Eigen::Lower>();
    const double inv_l2 = 1.0 / (hyper.lambda() * hyper.lambda());
    const Eigen::MatrixXd dk_h = 2.0 * k;
    const Eigen::MatrixXd dk_l = (k.array() * d2.array() * (2.0 * inv_l2)).matrix();
    out.gradient(0) = 0.5 * (alpha.dot(dk_h * alpha) - (vinv.array() * dk_h.array()).sum());
    out.gradient(1) = 0.5 * (alpha.dot(dk_l * alpha) - (vinv.array() * dk_l.array()).sum());
    out.gradient(2) = hyper.noise_variance() * (alpha.squaredNorm() - vinv.trace());
    return out;
}

GPModel gp_condition(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const GPHyperparameters& hyper,
                     GPMean mean) {
    if (x.rows() == 0 || y.size() != x.rows()) throw std::invalid_argument("gp_condition: bad input sizes");
    GPModel model;
    model.hyper = hyper;
    model.mean_policy = mean;
    model.mean_value = centre_value(y, mean);
    model.x = x;
    model.y = y;
    Eigen::MatrixXd v = se_matrix(squared_distances(x, x), hyper);
    v.diagonal().array() += hyper.noise_variance();
    const Factorization fac = factorize(std::move(v));
    model.jitter = fac.jitter;
    model.chol = fac.llt.matrixL();
    const Eigen::VectorXd centred = y.array() - model.mean_value;
    model.alpha = fac.llt.solve(centred);
    model.log_likelihood = -0.5 * centred.dot(model.alpha) - model.chol.diagonal().array().log().sum() -
                           0.5 * static_cast<double>(x.rows()) * std::log(2.0 * std::numbers::pi);
    return model;
}

GPModel gp_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const GPFitOptions& options) {
    const auto n = x.rows();
    if (n < 2 || y.size() != n) throw std::invalid_argument("gp_fit: need at least two rows with matching targets");
    if (options.fixed) return gp_condition(x, y, *options.fixed, options.mean);

    std::mt19937_64 rng(options.seed);

    // Likelihood subset.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    if (options.max_likelihood_rows > 0 && static_cast<std::size_t>(n) > options.max_likelihood_rows) {
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(options.max_likelihood_rows);
        std::sort(idx.begin(), idx.end());
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd xs(m, x.cols());
    Eigen::VectorXd ys(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        xs.row(i) = x.row(idx[static_cast<std::size_t>(i)]);
        ys(i) = y(idx[static_cast<std::size_t>(i)]);
    }
    ys.array() -= centre_value(ys, options.mean);

    // Moment-based starting point.
    const double scale = std::max(stddev(ys), 1e-6);
    std::vector<double> dists;
    const Eigen::Index probe = std::min<Eigen::Index>(m, 200);
    for (Eigen::Index i = 0; i < probe; ++i)
        for (Eigen::Index j = i + 1; j < probe; ++j) dists.push_back((xs.row(i) - xs.row(j)).norm());
    double typical = 1.0;
    if (!dists.empty()) {
        std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2), dists.end());
        typical = std::max(dists[dists.size() / 2], 1e-6);
    }
    const GPHyperparameters base{std::log(scale), std::log(typical), std::log(0.5 * scale)};

    std::normal_distribution<double> perturb(0.0, 0.5);
    GPHyperparameters best = base;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(options.restarts, 1); ++r) {
        GPHyperparameters start = base;
        if (r > 0) {
            start.log_h += perturb(rng);
            start.log_lambda += perturb(rng);
            start.log_sigma += perturb(rng);
        }
        double value = 0.0;
        const GPHyperparameters found = ascend(xs, ys, start, options.max_iterations, &value);
        if (value > best_value) {
            best_value = value;
            best = found;
        }
    }
    if (!std::isfinite(best_value)) throw NumericalError("gp_fit: every restart failed to produce a finite likelihood");
    return gp_condition(x, y, best, options.mean);
}

GPPrediction gp_predict(const GPModel& model, const Eigen::VectorXd& x_star) {
    if (x_star.size() != model.x.cols()) throw std::invalid_argument("gp_predict: input has the wrong dimension");
    const double h = model.hyper.h(), lambda = model.hyper.lambda();
    Eigen::VectorXd ks(model.x.rows());
    for (Eigen::Index i = 0; i < ks.size(); ++i) ks(i) = se_kernel(model.x.row(i).transpose(), x_star, h, lambda);
    const Eigen::VectorXd v = model.chol.triangularView<Eigen::Lower>().solve(ks);
    const double var = h * h - v.squaredNorm();
    return {model.mean_value + ks.dot(model.alpha), std::max(var, 0.0)};
}

Eigen::VectorXd gp_predict_mean(const GPModel& model, const Eigen::MatrixXd& x_star) {
    if (x_star.cols() != model.x.cols()) throw std::invalid_argument("gp_predict_mean: inputs have the wrong dimension");
    const Eigen::MatrixXd ks = se_matrix(squared_distances(x_star, model.x), model.hyper);
    return (ks * model.alpha).array() + model.mean_value;
}

}  // namespace sigreg
