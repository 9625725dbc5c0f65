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

#ifndef SIGREG_DIFFUSION_STUDY_HPP
#define SIGREG_DIFFUSION_STUDY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sigreg/datagen.hpp"

namespace sigreg {

struct DiffusionStudyRow {
    int degree = 0;
    std::size_t features = 0;
    double r2_train = 0.0;
    double r2_backtest = 0.0;
};

/// Regresses the terminal value on the truncated signature of the driver for
/// every degree; the first train_fraction of samples train, the rest backtest.
std::vector<DiffusionStudyRow> run_diffusion_study(const DiffusionData& data, std::span<const int> degrees,
                                                   double train_fraction = 0.8);

}  // namespace sigreg

#endif  // SIGREG_DIFFUSION_STUDY_HPP
