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

#ifndef SIGREG_CSV_HPP
#define SIGREG_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sigreg {

// Minimal comma-separated tables: one header line, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of the named column; throws std::invalid_argument if absent.
    std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

double parse_double(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

}  // namespace sigreg

#endif  // SIGREG_CSV_HPP
