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

#include "sigreg/diffusion_study.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigreg/least_squares.hpp"
#include "sigreg/path_embedding.hpp"
#include "sigreg/signature.hpp"

namespace sigreg {

std::vector<DiffusionStudyRow> run_diffusion_study(const DiffusionData& data, std::span<const int> degrees,
                                                   double train_fraction) {
    if (degrees.empty()) throw std::invalid_argument("diffusion study: no degrees requested");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("diffusion study: train fraction must lie in (0, 1)");
    const int top = *std::max_element(degrees.begin(), degrees.end());
    if (*std::min_element(degrees.begin(), degrees.end()) < 1)
        throw std::invalid_argument("diffusion study: degrees must be positive");
    const auto n = static_cast<Eigen::Index>(data.samples.size());
    const auto n_train = static_cast<Eigen::Index>(std::floor(train_fraction * static_cast<double>(n)));
    if (n_train < 2 || n - n_train < 2) throw std::invalid_argument("diffusion study: too few samples");

    // Signatures at the highest degree; lower degrees are leading blocks.
    Eigen::MatrixXd sig(n, static_cast<Eigen::Index>(tensor_size(2, top)));
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = data.samples[static_cast<std::size_t>(i)];
        const TruncatedTensor t = signature(embed_piecewise_linear(s.driver), top);
        sig.row(i) = Eigen::Map<const Eigen::RowVectorXd>(t.coefficients().data(), sig.cols());
        y(i) = s.terminal;
    }

    std::vector<DiffusionStudyRow> rows;
    for (int degree : degrees) {
        const auto cols = static_cast<Eigen::Index>(tensor_size(2, degree));
        const Eigen::MatrixXd train = sig.topLeftCorner(n_train, cols);
        const LinearFit fit = fit_least_squares(train, y.head(n_train), Eigen::Index{0});
        const Eigen::VectorXd pred = sig.bottomLeftCorner(n - n_train, cols) * fit.coefficients.col(0);
        DiffusionStudyRow row;
        row.degree = degree;
        row.features = static_cast<std::size_t>(cols);
        row.r2_train = fit.r2(0);
        row.r2_backtest = r_squared(y.tail(n - n_train), pred);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sigreg
