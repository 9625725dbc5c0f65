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

#ifndef SIGREG_ERRORS_HPP
#define SIGREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigreg {

// Contract violations (bad shapes, too-short series, out-of-range letters)
// throw std::invalid_argument. Failures of the numerics themselves throw
// NumericalError so callers such as the CLI can tell the two apart.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sigreg

#endif  // SIGREG_ERRORS_HPP
