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

#ifndef SIGREG_RECOVERY_HPP
#define SIGREG_RECOVERY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sigreg/tensor_algebra.hpp"
#include "sigreg/time_series.hpp"

namespace sigreg {

struct ReconstructOptions {
    /// Reject Vandermonde systems whose 2-norm condition number exceeds this.
    double max_condition = 1e12;
};

/// Recovers the values of a series from the signature of its time-joined path,
/// given the timestamps.
///
/// With tau_i = t_i - t_0, the words (1,...,1,2) with k-1 ones satisfy
///   (k-1)! pi^{(1..1,2)}(S) = sum_i tau_i^{k-1} (r_i - r_{i-1}),   r_{-1} = 0,
/// a square Vandermonde system in the tau_i. Requires degree(sig) >= len(times).
/// Throws NumericalError when the system is too ill-conditioned.
TimeSeries reconstruct_time_series(const TruncatedTensor& sig, std::span<const double> times,
                                   const ReconstructOptions& options = {});

struct SeparationOptions {
    /// Components beyond this are rejected: the shuffle expansion of each form
    /// has up to prod |I_ij| words.
    std::size_t max_components = 16;
    /// A word separates two signatures when their coefficients differ by more
    /// than tolerance * (1 + max magnitude).
    double gap_tolerance = 1e-9;
};

struct SeparatingForms {
    /// forms[i] evaluates to 1 on signature i and 0 on every other signature.
    std::vector<LinearForm> forms;
    /// words[i][j] is the word used to separate i from j (empty for i == j).
    std::vector<std::vector<Word>> words;
    /// Smallest coefficient gap |pi^I(S_j) - pi^I(S_i)| among the chosen words.
    double min_gap = 0.0;
};

/// First word, in shortlex order, on which a and b differ by more than the
/// tolerance; nullopt if none exists up to the common degree.
std::optional<Word> separating_word(const TruncatedTensor& a, const TruncatedTensor& b, double gap_tolerance);

/// Builds sigma_i = ш_{j != i} (a_ij pi^() + b_ij pi^{I_ij}) with
///   a_ij = pi^I(S_j) / (pi^I(S_j) - pi^I(S_i)),  b_ij = -1 / (pi^I(S_j) - pi^I(S_i)),
/// expanded into a single linear form. Each form has degree sum_j |I_ij|, which
/// must not exceed the truncation degree of the signatures.
SeparatingForms build_separating_forms(std::span<const TruncatedTensor> signatures,
                                       const SeparationOptions& options = {});

/// Weights lambda_i = sigma_i(expected_sig) of a finite mixture of paths.
std::vector<double> recover_mixture_weights(const TruncatedTensor& expected_sig,
                                            std::span<const TruncatedTensor> signatures,
                                            const SeparationOptions& options = {});

}  // namespace sigreg

#endif  // SIGREG_RECOVERY_HPP
