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

#include "sigreg/recovery.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sigreg/errors.hpp"

namespace sigreg {

TimeSeries reconstruct_time_series(const TruncatedTensor& sig, std::span<const double> times,
                                   const ReconstructOptions& options) {
    const auto len = static_cast<int>(times.size());
    if (len == 0) throw std::invalid_argument("reconstruct_time_series: no timestamps");
    if (sig.dimension() != 2) throw std::invalid_argument("reconstruct_time_series: signature must be 2-dimensional");
    if (sig.degree() < len)
        throw std::invalid_argument("reconstruct_time_series: degree " + std::to_string(sig.degree()) +
                                    " too low for " + std::to_string(len) + " timestamps");
    for (int i = 1; i < len; ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("reconstruct_time_series: timestamps must be strictly increasing");

    Eigen::VectorXd rhs(len);
    Eigen::MatrixXd vander(len, len);
    double factorial = 1.0;
    std::vector<int> letters;
    for (int k = 0; k < len; ++k) {
        if (k > 0) factorial *= k;
        letters.assign(static_cast<std::size_t>(k), 1);
        letters.push_back(2);
        rhs(k) = factorial * sig[Word(letters)];
        for (int i = 0; i < len; ++i) vander(k, i) = std::pow(times[i] - times[0], k);
    }

    if (len > 1) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(vander);
        const auto& s = svd.singularValues();
        const double cond = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
        if (!(cond <= options.max_condition))
            throw NumericalError("reconstruct_time_series: Vandermonde condition number " + std::to_string(cond) +
                                 " exceeds " + std::to_string(options.max_condition));
    }

    const Eigen::VectorXd increments = vander.partialPivLu().solve(rhs);
    std::vector<Observation> pts;
    pts.reserve(times.size());
    double value = 0.0;
    for (int i = 0; i < len; ++i) {
        value += increments(i);
        pts.push_back({times[i], value});
    }
    return TimeSeries(std::move(pts));
}

std::optional<Word> separating_word(const TruncatedTensor& a, const TruncatedTensor& b, double gap_tolerance) {
    if (a.dimension() != b.dimension() || a.degree() != b.degree())
        throw std::invalid_argument("separating_word: signatures must share dimension and degree");
    for (const auto& w : all_words(a.dimension(), a.degree())) {
        const double x = a[w], y = b[w];
        if (std::abs(x - y) > gap_tolerance * (1.0 + std::max(std::abs(x), std::abs(y)))) return w;
    }
    return std::nullopt;
}

SeparatingForms build_separating_forms(std::span<const TruncatedTensor> signatures, const SeparationOptions& options) {
    const std::size_t count = signatures.size();
    if (count == 0) throw std::invalid_argument("build_separating_forms: no signatures");
    if (count > options.max_components)
        throw std::invalid_argument("build_separating_forms: " + std::to_string(count) +
                                    " components exceeds the cap of " + std::to_string(options.max_components));
    const int d = signatures[0].dimension();
    const int n = signatures[0].degree();
    for (const auto& s : signatures)
        if (s.dimension() != d || s.degree() != n)
            throw std::invalid_argument("build_separating_forms: signatures must share dimension and degree");

    SeparatingForms out;
    out.words.assign(count, std::vector<Word>(count));
    out.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        LinearForm sigma = LinearForm::coordinate(d, Word{});
        for (std::size_t j = 0; j < count; ++j) {
            if (j == i) continue;
            auto word = separating_word(signatures[i], signatures[j], options.gap_tolerance);
            if (!word)
                throw NumericalError("build_separating_forms: signatures " + std::to_string(i) + " and " +
                                     std::to_string(j) + " coincide up to degree " + std::to_string(n));
            const double at_i = signatures[i][*word];
            const double at_j = signatures[j][*word];
            const double gap = at_j - at_i;
            out.min_gap = std::min(out.min_gap, std::abs(gap));

            LinearForm factor = LinearForm::coordinate(d, Word{}, at_j / gap);
            factor.add_term(*word, -1.0 / gap);
            sigma = shuffle_forms(sigma, factor);
            out.words[i][j] = std::move(*word);
        }
        if (static_cast<int>(sigma.max_word_length()) > n)
            throw std::invalid_argument("build_separating_forms: form " + std::to_string(i) + " needs degree " +
                                        std::to_string(sigma.max_word_length()) + " but signatures are truncated at " +
                                        std::to_string(n));
        out.forms.push_back(std::move(sigma));
    }
    return out;
}

std::vector<double> recover_mixture_weights(const TruncatedTensor& expected_sig,
                                            std::span<const TruncatedTensor> signatures,
                                            const SeparationOptions& options) {
    const auto sep = build_separating_forms(signatures, options);
    std::vector<double> weights;
    weights.reserve(sep.forms.size());
    for (const auto& f : sep.forms) weights.push_back(apply_form(f, expected_sig));
    return weights;
}

}  // namespace sigreg
