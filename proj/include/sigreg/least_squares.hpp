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

#ifndef SIGREG_LEAST_SQUARES_HPP
#define SIGREG_LEAST_SQUARES_HPP

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

#include "sigreg/errors.hpp"

namespace sigreg {

/// What to do when the design matrix has linearly dependent columns.
///  - Basic: keep a maximal independent set of columns (chosen by pivoted QR)
///    and give the rest zero coefficients.
///  - Strict: throw RankDeficientError.
enum class RankPolicy { Basic, Strict };

RankPolicy parse_rank_policy(std::string_view name);
std::string_view to_string(RankPolicy p);

struct LeastSquaresOptions {
    double ridge = 0.0;
    RankPolicy rank_policy = RankPolicy::Basic;
    /// Relative pivot threshold on the column-equilibrated design.
    double rank_tolerance = 1e-10;
};

class RankDeficientError : public NumericalError {
public:
    RankDeficientError(const std::string& what, Eigen::VectorXd null_direction)
        : NumericalError(what), null_direction_(std::move(null_direction)) {}
    /// Unit vector v with X v ~ 0 (intercept column included at its index).
    const Eigen::VectorXd& null_direction() const noexcept { return null_direction_; }

private:
    Eigen::VectorXd null_direction_;
};

struct LinearFit {
    /// (#columns) x (#targets). The intercept, when present, sits in its column's row.
    Eigen::MatrixXd coefficients;
    /// Number of columns actually used, intercept included.
    Eigen::Index rank = 0;
    std::vector<Eigen::Index> dropped_columns;
    Eigen::VectorXd residual_variance;
    Eigen::VectorXd r2;
    Eigen::VectorXd adjusted_r2;
};

/// Ordinary (optionally ridge) least squares of every column of targets on
/// design, by Householder QR with column pivoting.
///
/// When intercept_column is set, that column must be constant; it is handled
/// by centring, so constant columns elsewhere end up with zero coefficients
/// and the intercept carries the level. The ridge penalty never touches the
/// intercept.
LinearFit fit_least_squares(const Eigen::MatrixXd& design, const Eigen::MatrixXd& targets,
                            std::optional<Eigen::Index> intercept_column, const LeastSquaresOptions& options = {});

/// R^2 and adjusted R^2 for one target given the number of explanatory
/// variables (excluding the intercept).
double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted);
double adjusted_r_squared(double r2, Eigen::Index samples, Eigen::Index explanatory);

}  // namespace sigreg

#endif  // SIGREG_LEAST_SQUARES_HPP
