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

#include "sigreg/signature.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigreg {

TruncatedTensor signature(const PiecewiseLinearPath& path, int n) {
    if (n < 0) throw std::invalid_argument("signature: negative degree");
    TruncatedTensor sig = TruncatedTensor::unit(path.dimension(), n);
    for (std::size_t i = 0; i < path.num_segments(); ++i) {
        const auto inc = path.increment(i);
        if (std::all_of(inc.begin(), inc.end(), [](double x) { return x == 0.0; })) continue;
        sig.mul_exp_inplace(inc);
    }
    return sig;
}

TruncatedTensor signature_of_time_series(const TimeSeries& ts, int n) {
    if (n < 0) throw std::invalid_argument("signature_of_time_series: negative degree");
    if (ts.size() == 0) throw std::invalid_argument("signature_of_time_series: empty series");
    TruncatedTensor sig = TruncatedTensor::unit(2, n);
    std::array<double, 2> inc{0.0, ts[0].r};
    if (inc[1] != 0.0) sig.mul_exp_inplace(inc);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        inc = {ts[i + 1].t - ts[i].t, 0.0};
        sig.mul_exp_inplace(inc);
        inc = {0.0, ts[i + 1].r - ts[i].r};
        if (inc[1] != 0.0) sig.mul_exp_inplace(inc);
    }
    return sig;
}

TruncatedTensor signature_of_time_series(const TimeSeries& ts, int n, Embedding embedding) {
    if (embedding == Embedding::TimeJoined) return signature_of_time_series(ts, n);
    return signature(embed_piecewise_linear(ts), n);
}

double oracle_iterated_integral(const PiecewiseLinearPath& path, const Word& w, std::size_t steps) {
    w.validate(path.dimension());
    if (steps < 10 * std::max<std::size_t>(w.size(), 1))
        throw std::invalid_argument("oracle_iterated_integral: steps must be at least 10 |w|");
    if (w.empty()) return 1.0;

    const double span = static_cast<double>(path.num_segments());
    const double h = span / static_cast<double>(steps);

    // Path positions at the grid points.
    std::vector<std::vector<double>> grid(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) grid[j] = path.at(h * static_cast<double>(j));

    // prev[j] holds I_k at grid point j.
    std::vector<double> prev(steps + 1, 1.0), cur(steps + 1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        const auto coord = static_cast<std::size_t>(w[k] - 1);
        cur[0] = 0.0;
        for (std::size_t j = 0; j < steps; ++j)
            cur[j + 1] = cur[j] + prev[j] * (grid[j + 1][coord] - grid[j][coord]);
        prev.swap(cur);
    }
    return prev[steps];
}

}  // namespace sigreg
