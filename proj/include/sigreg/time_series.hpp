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

#ifndef SIGREG_TIME_SERIES_HPP
#define SIGREG_TIME_SERIES_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace sigreg {

struct Observation {
    double t;
    double r;
    friend bool operator==(const Observation&, const Observation&) = default;
};

/// A univariate series with strictly increasing timestamps and at least one point.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<Observation> points);
    /// Values on the integer grid t = t0, t0+1, ...
    static TimeSeries uniform(std::span<const double> values, double t0 = 0.0);

    const std::vector<Observation>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Observation& operator[](std::size_t i) const { return points_[i]; }
    const Observation& front() const { return points_.front(); }
    const Observation& back() const { return points_.back(); }

    std::vector<double> times() const;
    std::vector<double> values() const;

    /// Points [first, first + count).
    TimeSeries slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Observation> points_;
};

/// CSV with header "t,r" (further columns are ignored). Throws on malformed input.
TimeSeries read_time_series_csv(std::istream& in);
void write_time_series_csv(std::ostream& out, const TimeSeries& ts);

}  // namespace sigreg

#endif  // SIGREG_TIME_SERIES_HPP
