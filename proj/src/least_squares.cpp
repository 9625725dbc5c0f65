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

#include "sigreg/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sigreg {

RankPolicy parse_rank_policy(std::string_view name) {
    if (name == "basic") return RankPolicy::Basic;
    if (name == "strict") return RankPolicy::Strict;
    throw std::invalid_argument("unknown rank policy '" + std::string(name) + "' (expected basic|strict)");
}

std::string_view to_string(RankPolicy p) { return p == RankPolicy::Basic ? "basic" : "strict"; }

double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    const double ss_res = (y - fitted).squaredNorm();
    if (ss_tot == 0.0) return ss_res <= 1e-24 * static_cast<double>(y.size()) ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

double adjusted_r_squared(double r2, Eigen::Index samples, Eigen::Index explanatory) {
    const auto dof = samples - explanatory - 1;
    if (dof <= 0) return r2;
    return 1.0 - (1.0 - r2) * static_cast<double>(samples - 1) / static_cast<double>(dof);
}

LinearFit fit_least_squares(const Eigen::MatrixXd& design, const Eigen::MatrixXd& targets,
                            std::optional<Eigen::Index> intercept_column, const LeastSquaresOptions& options) {
    const Eigen::Index rows = design.rows();
    const Eigen::Index cols = design.cols();
    if (targets.rows() != rows) throw std::invalid_argument("fit_least_squares: design/target row mismatch");
    if (rows == 0 || cols == 0) throw std::invalid_argument("fit_least_squares: empty design");
    if (options.ridge < 0.0) throw std::invalid_argument("fit_least_squares: negative ridge");
    if (!design.allFinite() || !targets.allFinite())
        throw NumericalError("fit_least_squares: non-finite entries in design or targets");

    // Columns taking part in the pivoted solve (everything except the intercept).
    std::vector<Eigen::Index> active;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!intercept_column || c != *intercept_column) active.push_back(c);
    const auto k = static_cast<Eigen::Index>(active.size());

    Eigen::RowVectorXd x_mean = Eigen::RowVectorXd::Zero(k);
    Eigen::RowVectorXd y_mean = Eigen::RowVectorXd::Zero(targets.cols());
    if (intercept_column) {
        const Eigen::VectorXd ic = design.col(*intercept_column);
        if ((ic.array() != ic(0)).any() || ic(0) == 0.0)
            throw std::invalid_argument("fit_least_squares: intercept column must be a non-zero constant");
        for (Eigen::Index j = 0; j < k; ++j) x_mean(j) = design.col(active[j]).mean();
        y_mean = targets.colwise().mean();
    }

    const Eigen::Index ridge_rows = options.ridge > 0.0 ? k : 0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows + ridge_rows, k);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rows + ridge_rows, targets.cols());
    for (Eigen::Index j = 0; j < k; ++j) a.col(j).head(rows) = design.col(active[j]).array() - x_mean(j);
    b.topRows(rows) = targets.rowwise() - y_mean;
    if (ridge_rows) a.bottomRows(k).diagonal().setConstant(std::sqrt(options.ridge));

    // Equilibrate so the rank threshold measures collinearity, not scale.
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(k);
    const double max_norm = k ? a.colwise().norm().maxCoeff() : 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        const double nrm = a.col(j).norm();
        if (nrm > 1e-13 * max_norm && nrm > 0.0) {
            scale(j) = 1.0 / nrm;
            a.col(j) *= scale(j);
        } else {
            a.col(j).setZero();
        }
    }

    LinearFit fit;
    fit.coefficients = Eigen::MatrixXd::Zero(cols, targets.cols());
    Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(k, targets.cols());
    Eigen::Index rank = 0;
    if (k > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.rows(), a.cols());
        qr.setThreshold(options.rank_tolerance);
        qr.compute(a);
        rank = qr.rank();
        if (rank < k && options.rank_policy == RankPolicy::Strict) {
            // Null vector from the first dependent pivot column: R11 z = R12 e_j.
            const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(std::min(a.rows(), k), k)
                                          .template triangularView<Eigen::Upper>();
            Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
            z(rank) = -1.0;
            if (rank > 0) {
                z.head(rank) = r.topLeftCorner(rank, rank).template triangularView<Eigen::Upper>().solve(
                    r.col(rank).head(rank));
            }
            const Eigen::VectorXd scaled = qr.colsPermutation() * z;
            Eigen::VectorXd direction = Eigen::VectorXd::Zero(cols);
            double shift = 0.0;
            for (Eigen::Index j = 0; j < k; ++j) {
                direction(active[j]) = scaled(j) * scale(j);
                shift += x_mean(j) * direction(active[j]);
            }
            if (intercept_column) direction(*intercept_column) = -shift / design(0, *intercept_column);
            direction.normalize();
            std::ostringstream msg;
            msg << "fit_least_squares: design has rank " << rank + (intercept_column ? 1 : 0) << " < " << cols
                << "; near-null direction over columns:";
            for (Eigen::Index c = 0; c < cols; ++c)
                if (std::abs(direction(c)) > 1e-8) msg << ' ' << c << ':' << direction(c);
            throw RankDeficientError(msg.str(), direction);
        }
        // Basic solution on the leading rank pivots. Eigen's own solve() cuts at
        // machine precision instead of the configured threshold.
        Eigen::MatrixXd c = b;
        c.applyOnTheLeft(qr.householderQ().setLength(qr.nonzeroPivots()).adjoint());
        Eigen::MatrixXd z = Eigen::MatrixXd::Zero(k, targets.cols());
        if (rank > 0)
            z.topRows(rank) = qr.matrixR().topLeftCorner(rank, rank).template triangularView<Eigen::Upper>().solve(
                c.topRows(rank));
        beta = qr.colsPermutation() * z;
        for (Eigen::Index j = 0; j < k; ++j) beta.row(j) *= scale(j);
        for (Eigen::Index j = rank; j < k; ++j) fit.dropped_columns.push_back(active[qr.colsPermutation().indices()(j)]);
        std::sort(fit.dropped_columns.begin(), fit.dropped_columns.end());
    }
    for (Eigen::Index j = 0; j < k; ++j) fit.coefficients.row(active[j]) = beta.row(j);
    if (intercept_column) {
        const double ic = design(0, *intercept_column);
        fit.coefficients.row(*intercept_column) = (y_mean - x_mean * beta) / ic;
    }

    fit.rank = rank + (intercept_column ? 1 : 0);
    const Eigen::MatrixXd fitted = design * fit.coefficients;
    const auto nt = targets.cols();
    fit.residual_variance.resize(nt);
    fit.r2.resize(nt);
    fit.adjusted_r2.resize(nt);
    const auto dof = std::max<Eigen::Index>(rows - fit.rank, 1);
    for (Eigen::Index t = 0; t < nt; ++t) {
        const Eigen::VectorXd y = targets.col(t);
        const Eigen::VectorXd f = fitted.col(t);
        fit.residual_variance(t) = (y - f).squaredNorm() / static_cast<double>(dof);
        fit.r2(t) = r_squared(y, f);
        fit.adjusted_r2(t) = adjusted_r_squared(fit.r2(t), rows, rank);
    }
    return fit;
}

}  // namespace sigreg
