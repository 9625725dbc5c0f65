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

#include "sigreg/path_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sigreg {

PiecewiseLinearPath::PiecewiseLinearPath(int d, std::vector<double> flat_vertices)
    : d_(d), data_(std::move(flat_vertices)) {
    if (d < 1) throw std::invalid_argument("PiecewiseLinearPath: dimension must be positive");
    if (data_.size() % static_cast<std::size_t>(d) != 0)
        throw std::invalid_argument("PiecewiseLinearPath: vertex data not a multiple of the dimension");
    if (num_vertices() < 2) throw std::invalid_argument("PiecewiseLinearPath: needs at least two vertices");
}

std::span<const double> PiecewiseLinearPath::vertex(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_));
}

std::vector<double> PiecewiseLinearPath::increment(std::size_t i) const {
    const auto a = vertex(i);
    const auto b = vertex(i + 1);
    std::vector<double> out(static_cast<std::size_t>(d_));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = b[k] - a[k];
    return out;
}

std::vector<double> PiecewiseLinearPath::at(double s) const {
    const double segs = static_cast<double>(num_segments());
    s = std::clamp(s, 0.0, segs);
    auto seg = static_cast<std::size_t>(std::floor(s));
    if (seg >= num_segments()) seg = num_segments() - 1;
    const double frac = s - static_cast<double>(seg);
    const auto a = vertex(seg);
    const auto b = vertex(seg + 1);
    std::vector<double> out(static_cast<std::size_t>(d_));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + frac * (b[k] - a[k]);
    return out;
}

void PiecewiseLinearPath::append_vertex(std::span<const double> v) {
    if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("append_vertex: wrong dimension");
    data_.insert(data_.end(), v.begin(), v.end());
}

PiecewiseLinearPath concatenate(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y) {
    if (x.dimension() != y.dimension()) throw std::invalid_argument("concatenate: dimension mismatch");
    PiecewiseLinearPath out = x;
    const auto end = x.vertex(x.num_vertices() - 1);
    const auto start = y.vertex(0);
    std::vector<double> v(end.size());
    for (std::size_t i = 1; i < y.num_vertices(); ++i) {
        const auto yi = y.vertex(i);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = end[k] + yi[k] - start[k];
        out.append_vertex(v);
    }
    return out;
}

Embedding parse_embedding(std::string_view name) {
    if (name == "time-joined") return Embedding::TimeJoined;
    if (name == "linear") return Embedding::Linear;
    throw std::invalid_argument("unknown embedding '" + std::string(name) + "' (expected time-joined|linear)");
}

std::string_view to_string(Embedding e) { return e == Embedding::TimeJoined ? "time-joined" : "linear"; }

OriginPolicy parse_origin_policy(std::string_view name) {
    if (name == "shift") return OriginPolicy::Shift;
    if (name == "absolute") return OriginPolicy::Absolute;
    throw std::invalid_argument("unknown origin policy '" + std::string(name) + "' (expected shift|absolute)");
}

std::string_view to_string(OriginPolicy p) { return p == OriginPolicy::Shift ? "shift" : "absolute"; }

PiecewiseLinearPath embed_time_joined(const TimeSeries& ts) {
    if (ts.size() == 0) throw std::invalid_argument("embed_time_joined: empty series");
    std::vector<double> v;
    v.reserve(4 * ts.size());
    const auto& p = ts.points();
    v.insert(v.end(), {p[0].t, 0.0, p[0].t, p[0].r});
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        v.insert(v.end(), {p[i + 1].t, p[i].r});
        v.insert(v.end(), {p[i + 1].t, p[i + 1].r});
    }
    return PiecewiseLinearPath(2, std::move(v));
}

PiecewiseLinearPath embed_piecewise_linear(const TimeSeries& ts) {
    if (ts.size() == 0) throw std::invalid_argument("embed_piecewise_linear: empty series");
    std::vector<double> v;
    v.reserve(2 * ts.size() + 2);
    for (const auto& p : ts.points()) v.insert(v.end(), {p.t, p.r});
    if (ts.size() == 1) v.insert(v.end(), {ts[0].t, ts[0].r});
    return PiecewiseLinearPath(2, std::move(v));
}

PiecewiseLinearPath embed(const TimeSeries& ts, Embedding e) {
    return e == Embedding::TimeJoined ? embed_time_joined(ts) : embed_piecewise_linear(ts);
}

TimeSeries rebase_window(const TimeSeries& ts, OriginPolicy policy) {
    if (policy == OriginPolicy::Absolute || ts.front().t == 0.0) return ts;
    const double t0 = ts.front().t;
    std::vector<Observation> pts = ts.points();
    for (auto& p : pts) p.t -= t0;
    return TimeSeries(std::move(pts));
}

}  // namespace sigreg
