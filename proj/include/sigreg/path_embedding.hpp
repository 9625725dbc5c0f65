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

#ifndef SIGREG_PATH_EMBEDDING_HPP
#define SIGREG_PATH_EMBEDDING_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sigreg/time_series.hpp"

namespace sigreg {

/// A continuous path through an ordered list of vertices in R^d, each segment
/// traversed in unit parameter time. Zero-length segments are allowed.
class PiecewiseLinearPath {
public:
    PiecewiseLinearPath(int d, std::vector<double> flat_vertices);

    int dimension() const noexcept { return d_; }
    std::size_t num_vertices() const noexcept { return data_.size() / static_cast<std::size_t>(d_); }
    std::size_t num_segments() const noexcept { return num_vertices() - 1; }
    std::span<const double> vertex(std::size_t i) const;
    /// vertex(i + 1) - vertex(i).
    std::vector<double> increment(std::size_t i) const;
    /// Position at parameter s in [0, num_segments()].
    std::vector<double> at(double s) const;

    void append_vertex(std::span<const double> v);

    const std::vector<double>& flat() const noexcept { return data_; }

private:
    int d_;
    std::vector<double> data_;
};

/// X * Y: Y translated so it starts where X ends, then appended.
PiecewiseLinearPath concatenate(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y);

enum class Embedding { TimeJoined, Linear };
enum class OriginPolicy { Shift, Absolute };

Embedding parse_embedding(std::string_view name);
std::string_view to_string(Embedding e);
OriginPolicy parse_origin_policy(std::string_view name);
std::string_view to_string(OriginPolicy p);

/// Staircase embedding in R^2 (time, value). Starts at (t_0, 0), rises to
/// (t_0, r_0), then for every step moves right to (t_{i+1}, r_i) and up to
/// (t_{i+1}, r_{i+1}). Always has 2 * len(ts) vertices.
PiecewiseLinearPath embed_time_joined(const TimeSeries& ts);

/// Vertices (t_i, r_i) joined linearly. A single-point series yields a
/// degenerate path with two identical vertices.
PiecewiseLinearPath embed_piecewise_linear(const TimeSeries& ts);

PiecewiseLinearPath embed(const TimeSeries& ts, Embedding e);

/// Shift moves the first timestamp to 0; Absolute returns the input.
TimeSeries rebase_window(const TimeSeries& ts, OriginPolicy policy);

}  // namespace sigreg

#endif  // SIGREG_PATH_EMBEDDING_HPP
