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

#ifndef SIGREG_SIGNATURE_HPP
#define SIGREG_SIGNATURE_HPP

#include <cstddef>

#include "sigreg/path_embedding.hpp"
#include "sigreg/tensor_algebra.hpp"
#include "sigreg/time_series.hpp"

namespace sigreg {

/// Truncated signature of a piecewise-linear path: the ordered product of the
/// segment exponentials (Chen). Zero segments are skipped.
TruncatedTensor signature(const PiecewiseLinearPath& path, int n);

/// Signature of the time-joined embedding of ts, built directly as
/// exp(r_0 e2) (x) prod_i exp(dt_i e1) (x) exp(dr_i e2).
TruncatedTensor signature_of_time_series(const TimeSeries& ts, int n);

/// Signature of ts under the chosen embedding.
TruncatedTensor signature_of_time_series(const TimeSeries& ts, int n, Embedding embedding);

/// Brute-force value of the iterated integral indexed by w, for testing.
///
/// Runs the recursion I_k(s) = int_0^s I_{k-1} dX^{(w_k)} with left-endpoint
/// sums on a uniform grid of `steps` cells over the whole parameter range, so
/// the error is first order in 1/steps. Requires steps >= 10 |w|.
double oracle_iterated_integral(const PiecewiseLinearPath& path, const Word& w, std::size_t steps);

}  // namespace sigreg

#endif  // SIGREG_SIGNATURE_HPP
