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

#include "sigreg/datagen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "sigreg/csv.hpp"
#include "sigreg/errors.hpp"

namespace sigreg {

GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "ar") return GeneratorKind::AR;
    if (name == "poly_ar") return GeneratorKind::PolyAR;
    if (name == "mix_poly_ar") return GeneratorKind::MixPolyAR;
    if (name == "arch") return GeneratorKind::ARCH;
    throw std::invalid_argument("unknown kind '" + std::string(name) + "' (expected ar|poly_ar|mix_poly_ar|arch)");
}

std::string_view to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::AR: return "ar";
        case GeneratorKind::PolyAR: return "poly_ar";
        case GeneratorKind::MixPolyAR: return "mix_poly_ar";
        case GeneratorKind::ARCH: return "arch";
    }
    return "ar";
}

void GeneratorConfig::validate() const {
    if (length == 0) throw std::invalid_argument("generator: length must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("generator: sigma must be >= 0");
    if (!(explosion_bound > 0.0)) throw std::invalid_argument("generator: explosion bound must be positive");
    if (kind == GeneratorKind::AR && phi.size() < 2)
        throw std::invalid_argument("generator: AR needs Phi_0 and at least one lag coefficient");
    if (kind == GeneratorKind::ARCH) {
        if (arch_alpha.empty() || !(arch_alpha[0] > 0.0))
            throw std::invalid_argument("generator: ARCH needs alpha_0 > 0");
        for (std::size_t i = 1; i < arch_alpha.size(); ++i)
            if (!(arch_alpha[i] >= 0.0)) throw std::invalid_argument("generator: ARCH alpha_i must be >= 0");
        if (arch_beta.empty()) throw std::invalid_argument("generator: ARCH needs beta_0");
    }
}

double poly_ar_mean(double r0, double r1, double r2) { return 0.2 * r2 + 0.1 * r0 * (r1 - r0); }

double mix_poly_ar_mean(double r0, double r1, double r2) {
    const double slope = r0 > 0.0 ? 0.4 : 0.8;
    return -0.6 * r2 - 0.15 * r1 + slope * r0 - 0.015 * r1 * r1;
}

double companion_spectral_radius(std::span<const double> phi) {
    const auto p = static_cast<Eigen::Index>(phi.size());
    if (p == 0) return 0.0;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) c(0, i) = phi[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i < p; ++i) c(i, i - 1) = 1.0;
    return c.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// history[0] = r_t, history[1] = r_{t-1}, ...
using MeanFn = std::function<double(std::span<const double> history)>;
// Conditional standard deviation of the next innovation given past innovations
// (most recent first).
using ScaleFn = std::function<double(std::span<const double> innovations)>;

LabeledSeries simulate(const GeneratorConfig& cfg, std::size_t lags, const MeanFn& mean, const ScaleFn& scale,
                       bool record_variance = false) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t total = cfg.burn_in + cfg.length;
    // Chronological buffers: lags pre-sample values, then the draws.
    std::vector<double> r(lags, 0.0), eps(lags, 0.0);
    const std::size_t given = std::min(cfg.initial.size(), lags);
    std::copy(cfg.initial.end() - static_cast<std::ptrdiff_t>(given), cfg.initial.end(),
              r.end() - static_cast<std::ptrdiff_t>(given));
    // Supplied pre-sample values carry innovations relative to the mean
    // implied by zeros further back.
    {
        std::vector<double> h(lags);
        for (std::size_t j = lags - given; j < lags; ++j) {
            for (std::size_t i = 0; i < lags; ++i) h[i] = j >= i + 1 ? r[j - i - 1] : 0.0;
            eps[j] = r[j] - mean(h);
        }
    }
    r.reserve(lags + total + 1);
    eps.reserve(lags + total + 1);

    std::vector<double> hist(lags), ihist(lags);
    auto fill = [&](std::size_t end) {
        // end is the index of r_t in the buffer.
        for (std::size_t i = 0; i < lags; ++i) {
            hist[i] = r[end - i];
            ihist[i] = eps[end - i];
        }
    };
    for (std::size_t k = 0; k < total; ++k) {
        fill(r.size() - 1);
        const double m = mean(hist);
        const double e = scale(ihist) * normal(rng);
        const double next = m + e;
        if (!std::isfinite(next) || std::abs(next) > cfg.explosion_bound)
            throw NumericalError("generator: series exceeded " + format_double(cfg.explosion_bound) + " at step " +
                                 std::to_string(k) + " (explosive parameters?)");
        r.push_back(next);
        eps.push_back(e);
    }

    LabeledSeries out;
    const std::size_t first = lags + cfg.burn_in;
    out.ts = TimeSeries::uniform(std::span<const double>(r).subspan(first, cfg.length));
    out.true_means.reserve(cfg.length);
    for (std::size_t j = first; j < r.size(); ++j) {
        fill(j);
        out.true_means.push_back(mean(hist));
        if (record_variance) {
            const double s = scale(ihist);
            out.true_variances.push_back(s * s);
        }
    }
    return out;
}

std::size_t lag_count(std::size_t wanted) { return std::max<std::size_t>(wanted, 1); }

}  // namespace

LabeledSeries gen_ar(const GeneratorConfig& config) {
    config.validate();
    const std::vector<double> phi = config.phi;
    const std::size_t p = phi.size() - 1;
    const double sigma = config.sigma;
    auto out = simulate(
        config, lag_count(p),
        [&phi, p](std::span<const double> h) {
            double m = phi[0];
            for (std::size_t i = 0; i < p; ++i) m += phi[i + 1] * h[i];
            return m;
        },
        [sigma](std::span<const double>) { return sigma; });
    const double rho = companion_spectral_radius(std::span<const double>(phi).subspan(1));
    if (rho >= 1.0)
        out.warnings.push_back("AR coefficients are not stationary: companion spectral radius " + format_double(rho));
    return out;
}

LabeledSeries gen_poly_ar(const GeneratorConfig& config) {
    config.validate();
    const double sigma = config.sigma;
    return simulate(
        config, 3, [](std::span<const double> h) { return poly_ar_mean(h[0], h[1], h[2]); },
        [sigma](std::span<const double>) { return sigma; });
}

LabeledSeries gen_mix_poly_ar(const GeneratorConfig& config) {
    config.validate();
    const double sigma = config.sigma;
    return simulate(
        config, 3, [](std::span<const double> h) { return mix_poly_ar_mean(h[0], h[1], h[2]); },
        [sigma](std::span<const double>) { return sigma; });
}

LabeledSeries gen_arch(const GeneratorConfig& config) {
    config.validate();
    const std::vector<double> alpha = config.arch_alpha;
    const std::vector<double> beta = config.arch_beta;
    const std::size_t q = alpha.size() - 1;
    const std::size_t qm = beta.size() - 1;
    auto out = simulate(
        config, lag_count(std::max(q, qm)),
        [&beta, qm](std::span<const double> h) {
            double m = beta[0];
            for (std::size_t i = 0; i < qm; ++i) m += beta[i + 1] * h[i];
            return m;
        },
        [&alpha, q](std::span<const double> e) {
            double v = alpha[0];
            for (std::size_t i = 0; i < q; ++i) v += alpha[i + 1] * e[i] * e[i];
            return std::sqrt(v);
        },
        true);
    double total = 0.0;
    for (std::size_t i = 1; i < alpha.size(); ++i) total += alpha[i];
    if (total >= 1.0)
        out.warnings.push_back("ARCH coefficients sum to " + format_double(total) +
                               " >= 1: unconditional variance is infinite");
    return out;
}

LabeledSeries generate(const GeneratorConfig& config) {
    switch (config.kind) {
        case GeneratorKind::AR: return gen_ar(config);
        case GeneratorKind::PolyAR: return gen_poly_ar(config);
        case GeneratorKind::MixPolyAR: return gen_mix_poly_ar(config);
        case GeneratorKind::ARCH: return gen_arch(config);
    }
    throw std::invalid_argument("generate: unknown kind");
}

void write_labeled_series_csv(std::ostream& out, const LabeledSeries& s) {
    const bool with_var = !s.true_variances.empty();
    out << (with_var ? "t,r,m_true,v_true\n" : "t,r,m_true\n");
    for (std::size_t i = 0; i < s.ts.size(); ++i) {
        out << format_double(s.ts[i].t) << ',' << format_double(s.ts[i].r) << ','
            << format_double(s.true_means.at(i));
        if (with_var) out << ',' << format_double(s.true_variances.at(i));
        out << '\n';
    }
}

LabeledSeries read_labeled_series_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    const std::size_t ct = table.column("t"), cr = table.column("r"), cm = table.column("m_true");
    const bool with_var = std::find(table.header.begin(), table.header.end(), "v_true") != table.header.end();
    const std::size_t cv = with_var ? table.column("v_true") : 0;
    std::vector<Observation> points;
    LabeledSeries out;
    for (const auto& row : table.rows) {
        points.push_back({parse_double(row.at(ct)), parse_double(row.at(cr))});
        out.true_means.push_back(parse_double(row.at(cm)));
        if (with_var) out.true_variances.push_back(parse_double(row.at(cv)));
    }
    out.ts = TimeSeries(std::move(points));
    return out;
}

void DiffusionConfig::validate() const {
    if (samples == 0) throw std::invalid_argument("diffusion: samples must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("diffusion: horizon must be positive");
    if (steps < 10) throw std::invalid_argument("diffusion: step too coarse (need step <= horizon / 10)");
    if (!(max_abs > 0.0)) throw std::invalid_argument("diffusion: max_abs must be positive");
}

double heun_integrate(std::span<const double> dt, std::span<const double> dw, double a, double b, double y0) {
    if (dt.size() != dw.size()) throw std::invalid_argument("heun_integrate: increment lengths differ");
    auto drift = [a, b](double y, double h, double w) { return a * (1.0 - y) * h + b * y * y * w; };
    double y = y0;
    for (std::size_t k = 0; k < dt.size(); ++k) {
        const double f0 = drift(y, dt[k], dw[k]);
        const double f1 = drift(y + f0, dt[k], dw[k]);
        y += 0.5 * (f0 + f1);
    }
    return y;
}

DiffusionData gen_diffusion(const DiffusionConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double h = config.horizon / static_cast<double>(config.steps);
    const double sqrt_h = std::sqrt(h);
    const std::vector<double> dt(config.steps, h);
    std::vector<double> dw(config.steps);

    DiffusionData out;
    out.samples.reserve(config.samples);
    const std::size_t max_draws = 10 * config.samples + 100;
    std::size_t draws = 0;
    while (out.samples.size() < config.samples) {
        if (++draws > max_draws)
            throw NumericalError("diffusion: too many solutions left the bound " + format_double(config.max_abs));
        for (auto& x : dw) x = sqrt_h * normal(rng);
        const double y = heun_integrate(dt, dw, config.a, config.b, config.y0);
        if (!std::isfinite(y) || std::abs(y) > config.max_abs) {
            ++out.resampled;
            continue;
        }
        std::vector<Observation> pts;
        pts.reserve(config.steps + 1);
        double w = 0.0;
        pts.push_back({0.0, 0.0});
        for (std::size_t k = 0; k < config.steps; ++k) {
            w += dw[k];
            pts.push_back({static_cast<double>(k + 1) * h, w});
        }
        out.samples.push_back({TimeSeries(std::move(pts)), y});
    }
    return out;
}

}  // namespace sigreg
