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

#include "sigreg/time_series.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sigreg/csv.hpp"

namespace sigreg {

TimeSeries::TimeSeries(std::vector<Observation> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("TimeSeries: empty series");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].r))
            throw std::invalid_argument("TimeSeries: non-finite entry at index " + std::to_string(i));
        if (i > 0 && !(points_[i].t > points_[i - 1].t))
            throw std::invalid_argument("TimeSeries: timestamps not strictly increasing at index " +
                                        std::to_string(i));
    }
}

TimeSeries TimeSeries::uniform(std::span<const double> values, double t0) {
    std::vector<Observation> pts;
    pts.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) pts.push_back({t0 + static_cast<double>(i), values[i]});
    return TimeSeries(std::move(pts));
}

std::vector<double> TimeSeries::times() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.t);
    return out;
}

std::vector<double> TimeSeries::values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.r);
    return out;
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > points_.size()) throw std::out_of_range("TimeSeries::slice out of range");
    return TimeSeries(std::vector<Observation>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                               points_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

TimeSeries read_time_series_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    const std::size_t ti = table.column("t");
    const std::size_t ri = table.column("r");
    std::vector<Observation> pts;
    pts.reserve(table.rows.size());
    for (const auto& row : table.rows) pts.push_back({parse_double(row.at(ti)), parse_double(row.at(ri))});
    return TimeSeries(std::move(pts));
}

void write_time_series_csv(std::ostream& out, const TimeSeries& ts) {
    out << "t,r\n";
    for (const auto& p : ts.points()) out << format_double(p.t) << ',' << format_double(p.r) << '\n';
}

}  // namespace sigreg
