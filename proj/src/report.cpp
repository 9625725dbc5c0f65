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

#include "sigreg/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sigreg/csv.hpp"

namespace sigreg {

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|text)");
}

namespace {

std::string sci(double x, int digits = 6) {
    std::ostringstream s;
    s << std::setprecision(digits) << std::scientific << x;
    return s.str();
}

// Renders rows as left-aligned columns separated by two spaces.
void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_metrics_csv(std::ostream& out, const ExperimentReport& report) {
    out << "model,r2,adj_r2,mse_cv_mean,mse_cv_std\n";
    for (const auto& m : report.models)
        out << m.name << ',' << format_double(m.r2) << ',' << format_double(m.adjusted_r2) << ','
            << format_double(m.mse_mean) << ',' << format_double(m.mse_std) << '\n';
}

void write_folds_csv(std::ostream& out, const ExperimentReport& report) {
    out << "model,fold,mse\n";
    for (const auto& f : report.folds) out << f.model << ',' << f.fold << ',' << format_double(f.mse) << '\n';
}

void write_timing_csv(std::ostream& out, const ExperimentReport& report) {
    out << "model,seconds,seconds_per_fold\n";
    const double folds = std::max(1, report.config.folds);
    for (const auto& m : report.models)
        out << m.name << ',' << format_double(m.seconds) << ',' << format_double(m.seconds / folds) << '\n';
}

void write_report_text(std::ostream& out, const ExperimentReport& report) {
    out << "dataset: " << (report.dataset.empty() ? "-" : report.dataset) << "  length: " << report.length
        << "  folds: " << report.config.folds << "  holdout: " << report.config.holdout
        << "  seed: " << report.config.seed << "\n\n";
    std::vector<std::vector<std::string>> rows{{"model", "R2", "adj-R2", "MSE_cv mean", "MSE_cv std"}};
    for (const auto& m : report.models)
        rows.push_back({m.name, sci(m.r2), sci(m.adjusted_r2), sci(m.mse_mean), sci(m.mse_std)});
    write_aligned(out, rows);
    out << '\n';
    rows = {{"model", "fold", "MSE"}};
    for (const auto& f : report.folds) rows.push_back({f.model, std::to_string(f.fold), sci(f.mse)});
    write_aligned(out, rows);
}

void write_timing_text(std::ostream& out, const ExperimentReport& report) {
    std::vector<std::vector<std::string>> rows{{"model", "seconds"}};
    for (const auto& m : report.models) rows.push_back({m.name, sci(m.seconds, 3)});
    write_aligned(out, rows);
}

std::vector<ModelReport> read_metrics_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const std::size_t cn = t.column("model"), cr = t.column("r2"), ca = t.column("adj_r2"),
                      cm = t.column("mse_cv_mean"), cs = t.column("mse_cv_std");
    std::vector<ModelReport> out;
    for (const auto& row : t.rows) {
        ModelReport m;
        m.name = row.at(cn);
        m.r2 = parse_double(row.at(cr));
        m.adjusted_r2 = parse_double(row.at(ca));
        m.mse_mean = parse_double(row.at(cm));
        m.mse_std = parse_double(row.at(cs));
        out.push_back(m);
    }
    return out;
}

std::vector<FoldRecord> read_folds_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const std::size_t cn = t.column("model"), cf = t.column("fold"), cm = t.column("mse");
    std::vector<FoldRecord> out;
    for (const auto& row : t.rows) {
        FoldRecord f;
        f.model = row.at(cn);
        f.fold = static_cast<int>(parse_double(row.at(cf)));
        f.mse = parse_double(row.at(cm));
        out.push_back(f);
    }
    return out;
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                               ReportFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* name, auto&& writer) {
        std::ostringstream s;
        writer(s, report);
        write_file(dir / name, s.str());
        written.push_back(dir / name);
    };
    if (format == ReportFormat::Csv) {
        emit("metrics.csv", write_metrics_csv);
        emit("folds.csv", write_folds_csv);
        emit("timing.csv", write_timing_csv);
    } else {
        emit("report.txt", write_report_text);
        emit("timing.txt", write_timing_text);
    }
    return written;
}

void write_diffusion_csv(std::ostream& out, std::span<const DiffusionStudyRow> rows) {
    out << "degree,features,r2_train,r2_backtest\n";
    for (const auto& r : rows)
        out << r.degree << ',' << r.features << ',' << format_double(r.r2_train) << ','
            << format_double(r.r2_backtest) << '\n';
}

void write_diffusion_text(std::ostream& out, std::span<const DiffusionStudyRow> rows) {
    std::vector<std::vector<std::string>> table{{"degree", "features", "R2 (train)", "R2 (backtest)"}};
    for (const auto& r : rows)
        table.push_back({std::to_string(r.degree), std::to_string(r.features), sci(r.r2_train), sci(r.r2_backtest)});
    write_aligned(out, table);
}

std::vector<DiffusionStudyRow> read_diffusion_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const std::size_t cd = t.column("degree"), cf = t.column("features"), ct = t.column("r2_train"),
                      cb = t.column("r2_backtest");
    std::vector<DiffusionStudyRow> out;
    for (const auto& row : t.rows)
        out.push_back({static_cast<int>(parse_double(row.at(cd))), static_cast<std::size_t>(parse_double(row.at(cf))),
                       parse_double(row.at(ct)), parse_double(row.at(cb))});
    return out;
}

}  // namespace sigreg
