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

#ifndef SIGREG_DATAGEN_HPP
#define SIGREG_DATAGEN_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigreg/time_series.hpp"

namespace sigreg {

enum class GeneratorKind { AR, PolyAR, MixPolyAR, ARCH };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind k);

struct GeneratorConfig {
    GeneratorKind kind = GeneratorKind::AR;
    std::size_t length = 4000;
    /// Scale of the additive noise (ignored by ARCH, whose scale is sigma_k).
    double sigma = 0.7;
    std::uint64_t seed = 0;
    std::size_t burn_in = 200;
    /// AR coefficients Phi_0 .. Phi_p.
    std::vector<double> phi{0.0, 0.6, 0.15, -0.1};
    /// ARCH variance coefficients alpha_0 .. alpha_q.
    std::vector<double> arch_alpha{0.2, 0.5};
    /// ARCH linear mean coefficients beta_0 .. beta_Q.
    std::vector<double> arch_beta{0.0};
    /// Values preceding the first generated point, oldest first. Missing
    /// entries are zero. For ARCH the supplied values also seed the innovation
    /// history (value minus its implied mean).
    std::vector<double> initial;
    /// Generation aborts with NumericalError once |r| exceeds this.
    double explosion_bound = 1e6;

    void validate() const;
};

struct LabeledSeries {
    /// r_0 .. r_{N-1} on t = 0 .. N-1.
    TimeSeries ts;
    /// true_means[t] = E[r_{t+1} | F_t].
    std::vector<double> true_means;
    /// true_variances[t] = Var[r_{t+1} | F_t]; filled by ARCH only.
    std::vector<double> true_variances;
    std::vector<std::string> warnings;
};

/// Conditional means of the built-in nonlinear recurrences, given
/// (r_t, r_{t-1}, r_{t-2}).
double poly_ar_mean(double r0, double r1, double r2);
double mix_poly_ar_mean(double r0, double r1, double r2);

LabeledSeries gen_ar(const GeneratorConfig& config);
LabeledSeries gen_poly_ar(const GeneratorConfig& config);
LabeledSeries gen_mix_poly_ar(const GeneratorConfig& config);
/// r_k = mu_k + sigma_k z_k with mu_k = beta_0 + sum beta_i r_{k-i} and
/// sigma_k^2 = alpha_0 + sum alpha_i eps_{k-i}^2.
LabeledSeries gen_arch(const GeneratorConfig& config);
/// Dispatches on config.kind.
LabeledSeries generate(const GeneratorConfig& config);

/// Largest modulus among the roots of the AR companion matrix of phi_1..phi_p.
double companion_spectral_radius(std::span<const double> phi);

/// CSV with columns t,r,m_true and, when variances are present, v_true.
void write_labeled_series_csv(std::ostream& out, const LabeledSeries& s);
LabeledSeries read_labeled_series_csv(std::istream& in);

/// dY = a(1 - Y) dX1 + b Y^2 dX2 (Stratonovich), driven by X = (t, W).
struct DiffusionConfig {
    std::size_t samples = 2000;
    double horizon = 0.25;
    std::size_t steps = 500;
    double a = 1.0;
    double b = 2.0;
    double y0 = 0.0;
    std::uint64_t seed = 0;
    /// Samples whose solution leaves [-max_abs, max_abs] are redrawn.
    double max_abs = 1e6;

    void validate() const;
};

struct DiffusionSample {
    /// The driver on the grid: t = k * horizon / steps, r = W_t.
    TimeSeries driver;
    double terminal = 0.0;
};

struct DiffusionData {
    std::vector<DiffusionSample> samples;
    /// Number of draws discarded for leaving the bound.
    std::size_t resampled = 0;
};

/// Heun (trapezoidal predictor-corrector) integration of the diffusion along
/// given increments; consistent with the Stratonovich solution. Returns the
/// terminal value.
double heun_integrate(std::span<const double> dt, std::span<const double> dw, double a, double b, double y0);

DiffusionData gen_diffusion(const DiffusionConfig& config);

}  // namespace sigreg

#endif  // SIGREG_DATAGEN_HPP
