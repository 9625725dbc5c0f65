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

#ifndef SIGREG_SERIALIZATION_HPP
#define SIGREG_SERIALIZATION_HPP

#include <string>
#include <string_view>

#include "sigreg/ar_model.hpp"
#include "sigreg/es_model.hpp"
#include "sigreg/gaussian_process.hpp"
#include "sigreg/tensor_algebra.hpp"

namespace sigreg {

// JSON documents. Every model document carries a "model" field (es, ar, gp);
// words are stored as arrays of letters. Parsing failures throw
// std::invalid_argument.

std::string tensor_to_json(const TruncatedTensor& t);
TruncatedTensor tensor_from_json(std::string_view text);

std::string model_to_json(const FittedESModel& model);
std::string model_to_json(const ARModel& model);
/// Stores hyperparameters and training data; loading re-conditions.
std::string model_to_json(const GPModel& model);

/// The "model" field of a model document.
std::string model_kind(std::string_view text);

FittedESModel es_model_from_json(std::string_view text);
ARModel ar_model_from_json(std::string_view text);
GPModel gp_model_from_json(std::string_view text);

}  // namespace sigreg

#endif  // SIGREG_SERIALIZATION_HPP
