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

#ifndef SIGREG_REPORT_HPP
#define SIGREG_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "sigreg/crossval.hpp"
#include "sigreg/diffusion_study.hpp"

namespace sigreg {

enum class ReportFormat { Csv, Text };

ReportFormat parse_report_format(std::string_view name);

// Data tables never contain wall-clock values, so they are reproducible
// byte for byte; timings go to their own table.

/// model,r2,adj_r2,mse_cv_mean,mse_cv_std
void write_metrics_csv(std::ostream& out, const ExperimentReport& report);
/// model,fold,mse (plot data: one curve per model).
void write_folds_csv(std::ostream& out, const ExperimentReport& report);
/// model,seconds,seconds_per_fold
void write_timing_csv(std::ostream& out, const ExperimentReport& report);
/// Aligned metrics and per-fold tables.
void write_report_text(std::ostream& out, const ExperimentReport& report);
void write_timing_text(std::ostream& out, const ExperimentReport& report);

/// Parses write_metrics_csv output; seconds are left at zero.
std::vector<ModelReport> read_metrics_csv(std::istream& in);
/// Parses write_folds_csv output; seconds are left at zero.
std::vector<FoldRecord> read_folds_csv(std::istream& in);

/// Writes metrics.csv, folds.csv and timing.csv (or report.txt and
/// timing.txt) into dir, creating it if needed. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                               ReportFormat format);

/// degree,features,r2_train,r2_backtest
void write_diffusion_csv(std::ostream& out, std::span<const DiffusionStudyRow> rows);
void write_diffusion_text(std::ostream& out, std::span<const DiffusionStudyRow> rows);
std::vector<DiffusionStudyRow> read_diffusion_csv(std::istream& in);

}  // namespace sigreg

#endif  // SIGREG_REPORT_HPP
