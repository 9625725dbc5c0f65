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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. argv[1] is the path of the command-line tool.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sigreg/crossval.hpp"
#include "sigreg/datagen.hpp"
#include "sigreg/diffusion_study.hpp"
#include "sigreg/es_model.hpp"
#include "sigreg/gaussian_process.hpp"
#include "sigreg/recovery.hpp"
#include "sigreg/signature.hpp"

namespace {

using namespace sigreg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Random walk with N(0, scale^2) increments from a random start.
PiecewiseLinearPath random_path(std::mt19937_64& rng, int d, int segments, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> flat;
    for (int i = 0; i <= segments; ++i)
        for (int j = 0; j < d; ++j)
            flat.push_back(i == 0 ? normal(rng) : flat[flat.size() - static_cast<std::size_t>(d)] + scale * normal(rng));
    return PiecewiseLinearPath(d, flat);
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
    return m;
}

void shuffle_identity() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> segs(1, 8);
    std::vector<std::pair<Word, Word>> pairs;
    std::vector<LinearForm> forms;
    for (const auto& I : all_words(2, 5))
        for (const auto& J : all_words(2, 5))
            if (I.size() + J.size() <= 5) {
                pairs.emplace_back(I, J);
                forms.push_back(shuffle_words(I, J, 2));
            }
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto sig = signature(random_path(rng, 2, segs(rng)), 5);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            worst = std::max(worst, std::abs(sig[pairs[k].first] * sig[pairs[k].second] - apply_form(forms[k], sig)));
    }
    const double secs = seconds_since(start);
    report(1, worst <= 1e-10 && secs <= 30.0,
           "shuffle identity, 1000 paths x " + std::to_string(pairs.size()) + " word pairs: max error " + fmt(worst) +
               " (<= 1e-10), " + fmt(secs) + " s (<= 30 s)");
}

void chen_identity() {
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<int> segs(1, 8);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto path = random_path(rng, 2, segs(rng));
        // Split at a random parameter, usually inside a segment.
        const double s = unif(rng) * static_cast<double>(path.num_segments());
        const auto mid = path.at(s);
        const auto seg = std::min(static_cast<std::size_t>(s), path.num_segments() - 1);
        std::vector<double> left, right;
        for (std::size_t i = 0; i <= seg; ++i) left.insert(left.end(), path.vertex(i).begin(), path.vertex(i).end());
        left.insert(left.end(), mid.begin(), mid.end());
        right.insert(right.end(), mid.begin(), mid.end());
        for (std::size_t i = seg + 1; i < path.num_vertices(); ++i)
            right.insert(right.end(), path.vertex(i).begin(), path.vertex(i).end());
        const auto whole = signature(path, 5);
        const auto joined = tensor_mul(signature(PiecewiseLinearPath(2, left), 5), signature(PiecewiseLinearPath(2, right), 5));
        worst = std::max(worst, max_abs_diff(whole, joined));
    }
    report(2, worst <= 1e-12, "Chen identity, 1000 splits at degree 5: max error " + fmt(worst) + " (<= 1e-12)");
}

void quadrature_oracle() {
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<int> segs(1, 8);
    double worst = 0.0, worst_ratio = 0.0, best_ratio = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = segs(rng);
        // Unit quadratic variation per coordinate.
        const auto path = random_path(rng, 2, m, 1.0 / std::sqrt(static_cast<double>(m)));
        const auto sig = signature(path, 3);
        // Convergence is judged on the max-norm of the error over all words of
        // the path; single words can have a vanishing first-order term.
        double e1 = 0.0, e2 = 0.0;
        for (const auto& w : all_words(2, 3)) {
            if (w.empty()) continue;
            e1 = std::max(e1, std::abs(oracle_iterated_integral(path, w, 4096) - sig[w]));
            e2 = std::max(e2, std::abs(oracle_iterated_integral(path, w, 8192) - sig[w]));
        }
        worst = std::max(worst, e1);
        worst_ratio = std::max(worst_ratio, e2 / e1);
        best_ratio = std::min(best_ratio, e2 / e1);
    }
    const bool halving = worst_ratio <= 0.6 && best_ratio >= 0.4;
    report(3, worst <= 5e-3 && halving,
           "quadrature oracle, 100 paths, |w| <= 3: max error " + fmt(worst) +
               " at 4096 steps (<= 5e-3); per-path error ratio on step doubling in [" + fmt(best_ratio) + ", " +
               fmt(worst_ratio) + "] (within [0.4, 0.6])");
}

void reconstruction() {
    std::mt19937_64 rng(104);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> gap(0.5, 1.5), origin(-5.0, 5.0);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t len = 2 + static_cast<std::size_t>(trial % 5);
        std::vector<Observation> pts;
        double t = origin(rng);
        for (std::size_t i = 0; i < len; ++i) {
            pts.push_back({t, normal(rng)});
            t += gap(rng);
        }
        const TimeSeries ts(pts);
        const auto times = ts.times();
        const auto back = reconstruct_time_series(signature_of_time_series(ts, static_cast<int>(len)), times);
        for (std::size_t i = 0; i < len; ++i) worst = std::max(worst, std::abs(back[i].r - ts[i].r));
    }
    report(4, worst <= 1e-8, "reconstruction, 500 series of length 2-6: max error " + fmt(worst) + " (<= 1e-8)");
}

void mixture_recovery() {
    std::mt19937_64 rng(105);
    std::uniform_int_distribution<int> comps(2, 4), segs(1, 4);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    double worst = 0.0, worst_sum = 0.0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const int k = comps(rng);
        const int degree = 2 * k;
        std::vector<TruncatedTensor> sigs;
        for (int i = 0; i < k; ++i) sigs.push_back(signature(random_path(rng, 2, segs(rng)), degree));
        std::vector<double> lambda(static_cast<std::size_t>(k));
        double total = 0.0;
        for (auto& l : lambda) total += (l = unif(rng));
        TruncatedTensor expected(2, degree);
        for (int i = 0; i < k; ++i) {
            lambda[static_cast<std::size_t>(i)] /= total;
            expected += scalar_mul(lambda[static_cast<std::size_t>(i)], sigs[static_cast<std::size_t>(i)]);
        }
        const auto w = recover_mixture_weights(expected, sigs);
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            worst = std::max(worst, std::abs(w[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(i)]));
            sum += w[static_cast<std::size_t>(i)];
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    report(5, worst <= 1e-8 && worst_sum <= 1e-8,
           "mixture recovery, " + std::to_string(trials) + " mixtures of 2-4 paths: max weight error " + fmt(worst) +
               ", max |sum - 1| " + fmt(worst_sum) + " (<= 1e-8)");
}

void diffusion() {
    const auto start = Clock::now();
    DiffusionConfig cfg;
    const auto data = gen_diffusion(cfg);
    const std::vector<int> degrees{2, 4, 6};
    const auto rows = run_diffusion_study(data, degrees);
    const double secs = seconds_since(start);
    const bool pass = rows[0].r2_backtest >= 0.94 && rows[1].r2_backtest >= 0.995 && rows[2].r2_backtest >= 0.9995 &&
                      secs <= 300.0;
    report(6, pass,
           "diffusion study, 2000 samples, T = 0.25, 500 steps: backtest R^2 " + fmt(rows[0].r2_backtest) + " / " +
               fmt(rows[1].r2_backtest) + " / " + fmt(rows[2].r2_backtest) +
               " (>= 0.94 / 0.995 / 0.9995), " + fmt(secs) + " s (<= 300 s), " + std::to_string(data.resampled) +
               " resampled");
}

void containment() {
    // AR(3): the conditional mean is linear in the window values.
    GeneratorConfig ar;
    ar.seed = 7;
    const auto ar_data = gen_ar(ar);
    ESModelSpec spec;
    auto fm = build_feature_matrix(ar_data.ts, spec);
    for (Eigen::Index i = 0; i < fm.targets.rows(); ++i) fm.targets(i, 0) = ar_data.true_means[fm.window_end[i]];
    auto model = fit_es_features(fm.features, fm.targets, spec);
    const double ar_res = (fm.features * model.coefficients.transpose() - fm.targets).cwiseAbs().maxCoeff();

    // ARCH(1): the expected next-point signature (1, 0, m, 0, 0, 0, (m^2 + s^2) / 2).
    GeneratorConfig arch;
    arch.kind = GeneratorKind::ARCH;
    arch.seed = 7;
    const auto arch_data = gen_arch(arch);
    ESModelSpec tspec;
    tspec.p = 1;
    tspec.q = 1;
    tspec.n = 4;
    tspec.m = 2;
    tspec.mode = TargetMode::Tensor;
    fm = build_feature_matrix(arch_data.ts, tspec);
    for (Eigen::Index i = 0; i < fm.targets.rows(); ++i) {
        const double m = arch_data.true_means[fm.window_end[i]];
        const double v = arch_data.true_variances[fm.window_end[i]];
        fm.targets.row(i).setZero();
        fm.targets(i, 0) = 1.0;
        fm.targets(i, 2) = m;
        fm.targets(i, 6) = 0.5 * (m * m + v);
    }
    model = fit_es_features(fm.features, fm.targets, tspec);
    const double arch_res = (fm.features * model.coefficients.transpose() - fm.targets).cwiseAbs().maxCoeff();
    report(7, ar_res <= 1e-6 && arch_res <= 1e-6,
           "model containment: AR(3) mean residual " + fmt(ar_res) + ", ARCH(1) moment-signature residual " +
               fmt(arch_res) + " (<= 1e-6)");
}

ExperimentReport crossval_on(GeneratorKind kind, const std::vector<std::string>& names) {
    GeneratorConfig cfg;
    cfg.kind = kind;
    const auto data = generate(cfg);
    ModelSettings settings;
    std::vector<std::unique_ptr<Regressor>> owned;
    std::vector<Regressor*> models;
    for (const auto& n : names) {
        owned.push_back(make_regressor(n, settings));
        models.push_back(owned.back().get());
    }
    auto r = run_crossval(data, models, CrossValConfig{});
    r.dataset = std::string(to_string(kind));
    return r;
}

void orderings() {
    const auto start = Clock::now();
    const auto d1 = crossval_on(GeneratorKind::AR, {"ar", "es"});
    const auto d2 = crossval_on(GeneratorKind::PolyAR, {"ar", "es", "gp"});
    const auto d3 = crossval_on(GeneratorKind::MixPolyAR, {"ar", "es", "gp"});
    const double secs = seconds_since(start);

    const double a1 = d1.model("ar").mse_mean, e1 = d1.model("es").mse_mean;
    bool pass = a1 <= e1 && e1 <= 4.0 * a1;
    std::string detail = "MSE_cv at N = 4000, 20 repetitions: ar AR " + fmt(a1) + " ES " + fmt(e1) + " (ES/AR " +
                         fmt(e1 / a1) + ", need [1, 4])";
    for (const auto* r : {&d2, &d3}) {
        const double a = r->model("ar").mse_mean, e = r->model("es").mse_mean, g = r->model("gp").mse_mean;
        const bool ok = e <= 0.5 * a && std::abs(e - g) <= 2.0 * std::min(e, g);
        pass = pass && ok;
        detail += "; " + r->dataset + " AR " + fmt(a) + " ES " + fmt(e) + " GP " + fmt(g) + " (ES/AR " + fmt(e / a) +
                  " <= 0.5, |ES-GP|/min " + fmt(std::abs(e - g) / std::min(e, g)) + " <= 2)";
    }
    report(8, pass, detail + "; " + fmt(secs) + " s");

    const double ar2 = d3.model("ar").r2, es2 = d3.model("es").r2;
    report(9, ar2 >= 0.8 && es2 >= 0.8 && es2 >= ar2,
           "in-sample R^2 on mix_poly_ar: AR " + fmt(ar2) + ", ES " + fmt(es2) + " (both >= 0.8, ES >= AR)");
}

void performance() {
    GeneratorConfig cfg;
    cfg.kind = GeneratorKind::PolyAR;
    const auto data = generate(cfg);
    ModelSettings settings;
    auto es = make_regressor("es", settings);
    auto gp = make_regressor("gp", settings);
    std::vector<std::size_t> train, test;
    for (std::size_t k = 3; k + 1 < data.ts.size(); ++k) (train.size() < 3200 ? train : test).push_back(k);
    auto time_model = [&](Regressor& m) {
        const auto start = Clock::now();
        m.fit(data, train);
        const auto pred = m.predict(data, test);
        const double secs = seconds_since(start);
        return pred.empty() ? 0.0 : secs;
    };
    const double es_secs = time_model(*es);
    const double gp_secs = time_model(*gp);
    report(10, es_secs <= gp_secs / 5.0,
           "fit + predict with 3200 training rows: ES " + fmt(es_secs) + " s, GP " + fmt(gp_secs) + " s (ratio " +
               fmt(es_secs / gp_secs) + " <= 0.2)");
}

void gp_correctness() {
    std::mt19937_64 rng(106);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> rows(5, 40), dims(1, 3);
    double worst_grad = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rows(rng), d = dims(rng);
        Eigen::MatrixXd x(n, d);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) x(i, j) = normal(rng);
            y(i) = std::sin(x(i, 0)) + 0.3 * normal(rng);
        }
        const GPHyperparameters hyper{0.5 * normal(rng), 0.5 * normal(rng), -1.0 + 0.5 * normal(rng)};
        const auto ll = gp_log_marginal_likelihood(x, y, hyper);
        Eigen::Vector3d fd;
        const double h = 1e-5;
        for (int j = 0; j < 3; ++j) {
            GPHyperparameters up = hyper, down = hyper;
            (j == 0 ? up.log_h : j == 1 ? up.log_lambda : up.log_sigma) += h;
            (j == 0 ? down.log_h : j == 1 ? down.log_lambda : down.log_sigma) -= h;
            fd(j) = (gp_log_marginal_likelihood(x, y, up, false).value -
                     gp_log_marginal_likelihood(x, y, down, false).value) /
                    (2 * h);
        }
        worst_grad = std::max(worst_grad, (ll.gradient - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff());
    }

    Eigen::MatrixXd x(3, 2);
    x << 0.0, 0.5, -1.0, 0.2, 0.7, -0.4;
    Eigen::VectorXd y(3);
    y << 0.3, -1.1, 0.8;
    const GPHyperparameters hyper{std::log(1.2), std::log(0.9), std::log(0.25)};
    const auto model = gp_condition(x, y, hyper);
    Eigen::Matrix3d v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v(i, j) = se_kernel(x.row(i), x.row(j), hyper.h(), hyper.lambda());
    v.diagonal().array() += hyper.noise_variance();
    double worst_post = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd xs(2);
        xs << normal(rng), normal(rng);
        Eigen::Vector3d ks;
        for (int i = 0; i < 3; ++i) ks(i) = se_kernel(x.row(i), xs, hyper.h(), hyper.lambda());
        const auto pred = gp_predict(model, xs);
        worst_post = std::max(worst_post, std::abs(pred.mean - ks.dot(v.inverse() * y)));
        worst_post = std::max(worst_post,
                              std::abs(pred.variance - (hyper.h() * hyper.h() - ks.dot(v.inverse() * ks))));
    }
    report(11, worst_grad <= 1e-5 && worst_post <= 1e-10,
           "GP: gradient vs central differences, 20 instances, max relative error " + fmt(worst_grad) +
               " (<= 1e-5); 3-point posterior vs dense solve " + fmt(worst_post) + " (<= 1e-10)");
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void determinism(const std::string& cli) {
    const fs::path root = fs::temp_directory_path() / "sigreg_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string series = (root / "input" / "series.csv").string();
    const std::string arch = (root / "arch" / "series.csv").string();
    std::string failed;
    bool setup = run(cli + " --seed 5 --out " + (root / "input").string() + " generate --kind poly_ar --n 400") == 0 &&
                 run(cli + " --seed 5 --out " + (root / "arch").string() + " generate --kind arch --n 200") == 0 &&
                 run(cli + " --out " + (root / "sig").string() + " sig --input " + series + " --degree 5") == 0 &&
                 run(cli + " --out " + (root / "fit").string() + " fit --model es --input " + series) == 0;
    std::ofstream(root / "short.csv") << "t,r\n0,0.5\n1.5,-1\n2,2\n4,0.25\n";
    setup = setup && run(cli + " --out " + (root / "shortsig").string() + " sig --input " +
                         (root / "short.csv").string() + " --degree 4") == 0;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"generate-ar", "generate --kind ar --n 300"},
        {"generate-poly", "generate --kind poly_ar --n 300"},
        {"generate-mix", "generate --kind mix_poly_ar --n 300"},
        {"generate-arch", "generate --kind arch --n 300"},
        {"sig", "sig --input " + series + " --degree 4"},
        {"sig-text", "--format text sig --input " + series + " --degree 3"},
        {"reconstruct", "reconstruct --input " + (root / "shortsig" / "signature.json").string() + " --times-from " +
                            (root / "short.csv").string()},
        {"fit-es", "fit --model es --input " + series},
        {"fit-es-tensor", "fit --model es --mode tensor --input " + arch + " --p 1 --q 1"},
        {"fit-ar", "fit --model ar --input " + series},
        {"fit-gp", "fit --model gp --input " + series},
        {"predict", "predict --model-file " + (root / "fit" / "model.json").string() + " --input " + series},
        {"crossval", "crossval --input " + series + " --models ar,es,gp --folds 3"},
        {"crossval-text", "--format text crossval --kind mix_poly_ar --length 300 --models ar,es --folds 3"},
        {"diffusion", "diffusion --samples 200 --steps 100 --degrees 2,4"},
    };
    std::size_t files = 0;
    if (!setup) failed = "setup";
    for (const auto& [name, args] : commands) {
        if (!setup) break;
        std::vector<fs::path> dirs;
        for (int rep = 0; rep < 2; ++rep) {
            dirs.push_back(root / (name + "_" + std::to_string(rep)));
            if (run(cli + " --seed 11 --out " + dirs.back().string() + " " + args) != 0) failed += " " + name + "(exit)";
        }
        std::vector<fs::path> listed;
        for (const auto& e : fs::directory_iterator(dirs[0])) listed.push_back(e.path().filename());
        if (listed.empty()) failed += " " + name + "(no output)";
        for (const auto& f : listed) {
            if (f.string().rfind("timing", 0) == 0) continue;
            ++files;
            if (slurp(dirs[0] / f) != slurp(dirs[1] / f)) failed += " " + name + "/" + f.string();
        }
    }
    fs::remove_all(root);
    report(12, failed.empty(),
           "determinism: " + std::to_string(commands.size()) + " commands run twice, " + std::to_string(files) +
               " data files compared byte for byte" + (failed.empty() ? "" : "; differing:" + failed));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to sigreg tool>\n";
        return 1;
    }
    const std::vector<std::pair<std::string, std::function<void()>>> checks{
        {"1", shuffle_identity},
        {"2", chen_identity},
        {"3", quadrature_oracle},
        {"4", reconstruction},
        {"5", mixture_recovery},
        {"6", diffusion},
        {"7", containment},
        {"8, 9", orderings},
        {"10", performance},
        {"11", gp_correctness},
        {"12", [&] { determinism(argv[1]); }},
    };
    for (const auto& [id, check] : checks) {
        try {
            check();
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL criterion " << id << ": exception " << e.what() << std::endl;
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
