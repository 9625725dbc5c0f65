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

// sigreg: command-line front end for signature regression experiments.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigreg/ar_model.hpp"
#include "sigreg/crossval.hpp"
#include "sigreg/csv.hpp"
#include "sigreg/datagen.hpp"
#include "sigreg/diffusion_study.hpp"
#include "sigreg/errors.hpp"
#include "sigreg/es_model.hpp"
#include "sigreg/gaussian_process.hpp"
#include "sigreg/recovery.hpp"
#include "sigreg/report.hpp"
#include "sigreg/serialization.hpp"
#include "sigreg/signature.hpp"

namespace fs = std::filesystem;
using namespace sigreg;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Global {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::string config;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

TimeSeries load_series(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return read_time_series_csv(f);
}

// Writes to DIR/name when --out is set, to stdout otherwise.
void deliver(const Global& g, const std::string& name, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(g.out);
    const fs::path path = fs::path(g.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
}

std::string word_label(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

// --config: JSON object whose keys name long options. Values are appended as
// "--key value" unless the option already appears on the command line.
std::vector<std::string> with_config(const std::vector<std::string>& args, const CLI::App& app) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    const CLI::App* sub = nullptr;
    for (std::size_t i = 1; i < args.size() && !sub; ++i)
        for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
            if (s->get_name() == args[i]) sub = s;

    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw std::invalid_argument("config " + path + ": expected a JSON object");

    std::vector<std::string> out = args;
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "--config") continue;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given) continue;
        const CLI::Option* opt = sub ? sub->get_option_no_throw(flag) : nullptr;
        if (!opt) opt = app.get_option_no_throw(flag);
        if (!opt) throw std::invalid_argument("config " + path + ": unknown option '" + key + "'");
        if (value.is_boolean()) {
            if (value.get<bool>()) out.push_back(flag);
            continue;
        }
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_array()) {
            for (const auto& v : value) {
                if (!text.empty()) text += ',';
                text += v.is_string() ? v.get<std::string>() : v.dump();
            }
        } else {
            text = value.dump();
        }
        out.push_back(flag);
        out.push_back(text);
    }
    return out;
}

struct GenerateArgs {
    std::string kind = "ar";
    std::size_t length = 4000;
    double sigma = 0.7;
    std::size_t burn_in = 200;
    std::vector<double> phi{0.0, 0.6, 0.15, -0.1};
    std::vector<double> alpha{0.2, 0.5};
    std::vector<double> beta{0.0};
    std::vector<double> initial;

    GeneratorConfig config(std::uint64_t seed) const {
        GeneratorConfig c;
        c.kind = parse_generator_kind(kind);
        c.length = length;
        c.sigma = sigma;
        c.seed = seed;
        c.burn_in = burn_in;
        c.phi = phi;
        c.arch_alpha = alpha;
        c.arch_beta = beta;
        c.initial = initial;
        return c;
    }
};

void add_generator_options(CLI::App* cmd, GenerateArgs& a, const char* length_flag) {
    cmd->add_option("--kind", a.kind, "ar | poly_ar | mix_poly_ar | arch")->capture_default_str();
    cmd->add_option(length_flag, a.length, "Series length")->capture_default_str();
    cmd->add_option("--sigma", a.sigma, "Noise scale")->capture_default_str();
    cmd->add_option("--burn-in", a.burn_in, "Discarded leading draws")->capture_default_str();
    cmd->add_option("--phi", a.phi, "AR coefficients Phi_0..Phi_p")->delimiter(',');
    cmd->add_option("--alpha", a.alpha, "ARCH alpha_0..alpha_q")->delimiter(',');
    cmd->add_option("--beta", a.beta, "ARCH mean beta_0..beta_Q")->delimiter(',');
    cmd->add_option("--initial", a.initial, "Pre-sample values, oldest first")->delimiter(',');
}

struct ESArgs {
    int p = 3, q = 1, n = 4, m = 2;
    std::string mode = "reduced";
    std::string embedding = "time-joined";
    std::string origin = "shift";
    double ridge = 0.0;
    std::string rank_policy = "basic";

    ESModelSpec spec() const {
        ESModelSpec s;
        s.p = p;
        s.q = q;
        s.n = n;
        s.m = m;
        s.mode = parse_target_mode(mode);
        s.embedding = parse_embedding(embedding);
        s.origin = parse_origin_policy(origin);
        s.solver.ridge = ridge;
        s.solver.rank_policy = parse_rank_policy(rank_policy);
        s.validate();
        return s;
    }
};

void add_es_options(CLI::App* cmd, ESArgs& a) {
    cmd->add_option("--p", a.p, "Past window holds p+1 points")->capture_default_str();
    cmd->add_option("--q", a.q, "Future window length")->capture_default_str();
    cmd->add_option("--n", a.n, "Feature signature degree")->capture_default_str();
    cmd->add_option("--m", a.m, "Target signature degree (tensor mode)")->capture_default_str();
    cmd->add_option("--mode", a.mode, "reduced | tensor")->capture_default_str();
    cmd->add_option("--embedding", a.embedding, "time-joined | linear")->capture_default_str();
    cmd->add_option("--origin", a.origin, "shift | absolute")->capture_default_str();
    cmd->add_option("--ridge", a.ridge, "Ridge penalty")->capture_default_str();
    cmd->add_option("--rank-policy", a.rank_policy, "basic | strict")->capture_default_str();
}

struct GPArgs {
    int restarts = 5;
    int iterations = 100;
    std::size_t rows = 400;
    std::string mean = "zero";

    GPFitOptions options(std::uint64_t seed) const {
        GPFitOptions o;
        o.restarts = restarts;
        o.max_iterations = iterations;
        o.max_likelihood_rows = rows;
        o.seed = seed;
        if (mean == "zero") {
            o.mean = GPMean::Zero;
        } else if (mean == "constant") {
            o.mean = GPMean::Constant;
        } else {
            throw std::invalid_argument("unknown GP mean '" + mean + "' (expected zero|constant)");
        }
        return o;
    }
};

void add_gp_options(CLI::App* cmd, GPArgs& a) {
    cmd->add_option("--gp-restarts", a.restarts, "Likelihood restarts")->capture_default_str();
    cmd->add_option("--gp-iterations", a.iterations, "Ascent iterations per restart")->capture_default_str();
    cmd->add_option("--gp-rows", a.rows, "Rows used for the likelihood (0 = all)")->capture_default_str();
    cmd->add_option("--gp-mean", a.mean, "zero | constant")->capture_default_str();
}

// Lag rows (r_k .. r_{k-p+1}) -> r_{k+1} for k in [p-1, len-2].
void lag_design(const TimeSeries& ts, int p, Eigen::MatrixXd& x, Eigen::VectorXd& y) {
    const auto v = ts.values();
    const auto pu = static_cast<std::size_t>(p);
    if (v.size() < pu + 2) throw std::invalid_argument("series too short for " + std::to_string(p) + " lags");
    const auto rows = static_cast<Eigen::Index>(v.size() - pu);
    x.resize(rows, p);
    y.resize(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::size_t k = pu - 1 + static_cast<std::size_t>(i);
        x.row(i) = lag_vector(v, k, p).transpose();
        y(i) = v[k + 1];
    }
}

std::string table(const Global& g, const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    if (g.format == "csv") {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
            out << '\n';
        }
        return out.str();
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << r[i];
            if (i + 1 < r.size()) out << std::string(w[i] - r[i].size() + 2, ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
}

const char* extension(const Global& g) { return g.format == "csv" ? ".csv" : ".txt"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signature regression for time series"};
    app.fallthrough();
    app.require_subcommand(1);

    Global g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--out", g.out, "Output directory (default: stdout)");
    app.add_option("--format", g.format, "csv | text")->capture_default_str()->check(CLI::IsMember({"csv", "text"}));
    app.add_option("--config", g.config, "JSON file of option values");

    // generate
    GenerateArgs gen;
    auto* cmd_generate = app.add_subcommand("generate", "Simulate a labelled series (t,r,m_true)");
    add_generator_options(cmd_generate, gen, "--n");

    // sig
    std::string sig_input;
    int sig_degree = 4;
    std::string sig_embedding = "time-joined", sig_origin = "absolute";
    auto* cmd_sig = app.add_subcommand("sig", "Truncated signature of a series");
    cmd_sig->add_option("--input", sig_input, "CSV with columns t,r")->required();
    cmd_sig->add_option("--degree", sig_degree, "Truncation degree")->capture_default_str();
    cmd_sig->add_option("--embedding", sig_embedding, "time-joined | linear")->capture_default_str();
    cmd_sig->add_option("--origin", sig_origin, "shift | absolute")->capture_default_str();

    // reconstruct
    std::string rec_input, rec_times_from;
    std::vector<double> rec_times;
    double rec_max_condition = 1e12;
    auto* cmd_rec = app.add_subcommand("reconstruct", "Recover a series from its signature and timestamps");
    cmd_rec->add_option("--input", rec_input, "Signature JSON written by 'sig'")->required();
    auto* times_opt = cmd_rec->add_option("--times", rec_times, "Timestamps")->delimiter(',');
    auto* times_from_opt = cmd_rec->add_option("--times-from", rec_times_from, "CSV whose t column gives timestamps");
    times_opt->excludes(times_from_opt);
    cmd_rec->add_option("--max-condition", rec_max_condition, "Reject worse-conditioned systems")
        ->capture_default_str();

    // fit
    std::string fit_model = "es", fit_input;
    int fit_lags = 3;
    ESArgs fit_es_args;
    GPArgs fit_gp;
    auto* cmd_fit = app.add_subcommand("fit", "Fit a model and write it as JSON");
    cmd_fit->add_option("--model", fit_model, "es | ar | gp")->capture_default_str();
    cmd_fit->add_option("--input", fit_input, "CSV with columns t,r")->required();
    cmd_fit->add_option("--lags", fit_lags, "Lags for ar and gp")->capture_default_str();
    add_es_options(cmd_fit, fit_es_args);
    add_gp_options(cmd_fit, fit_gp);

    // predict
    std::string pred_model, pred_input;
    auto* cmd_pred = app.add_subcommand("predict", "One-step predictions from a fitted model");
    cmd_pred->add_option("--model-file", pred_model, "JSON written by 'fit'")->required();
    cmd_pred->add_option("--input", pred_input, "CSV with columns t,r")->required();

    // crossval
    GenerateArgs cv_gen;
    std::string cv_input, cv_models = "ar,es,gp";
    int cv_lags = 3;
    CrossValConfig cv;
    ESArgs cv_es;
    GPArgs cv_gp;
    auto* cmd_cv = app.add_subcommand("crossval", "Repeated random sub-sampling comparison of models");
    cmd_cv->add_option("--input", cv_input, "Labelled CSV (t,r,m_true); otherwise a series is generated");
    add_generator_options(cmd_cv, cv_gen, "--length");
    cmd_cv->add_option("--models", cv_models, "Comma-separated: ar,es,gp,oracle,zero")->capture_default_str();
    cmd_cv->add_option("--folds", cv.folds, "Repetitions")->capture_default_str();
    cmd_cv->add_option("--holdout", cv.holdout, "Held-out fraction")->capture_default_str();
    cmd_cv->add_option("--train-fraction", cv.train_fraction, "Leading fraction for in-sample R2")
        ->capture_default_str();
    cmd_cv->add_option("--lags", cv_lags, "Lags for ar and gp")->capture_default_str();
    add_es_options(cmd_cv, cv_es);
    add_gp_options(cmd_cv, cv_gp);

    // diffusion
    DiffusionConfig dc;
    std::vector<int> degrees{2, 4, 6};
    double diff_train = 0.8;
    auto* cmd_diff = app.add_subcommand("diffusion", "Terminal value of an SDE against driver signatures");
    cmd_diff->add_option("--samples", dc.samples, "Simulated paths")->capture_default_str();
    cmd_diff->add_option("--horizon", dc.horizon, "Terminal time T")->capture_default_str();
    cmd_diff->add_option("--steps", dc.steps, "Grid steps")->capture_default_str();
    cmd_diff->add_option("--a", dc.a, "Coefficient of (1-Y) dt")->capture_default_str();
    cmd_diff->add_option("--b", dc.b, "Coefficient of Y^2 dW")->capture_default_str();
    cmd_diff->add_option("--degrees", degrees, "Signature degrees")->delimiter(',');
    cmd_diff->add_option("--train-fraction", diff_train, "Leading fraction used for training")
        ->capture_default_str();

    try {
        const std::vector<std::string> raw(argv, argv + argc);
        std::vector<std::string> args = with_config(raw, app);
        std::vector<char*> cargs;
        for (auto& a : args) cargs.push_back(a.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*cmd_generate) {
            const auto series = generate(gen.config(g.seed));
            for (const auto& w : series.warnings) std::cerr << "warning: " << w << '\n';
            std::ostringstream s;
            write_labeled_series_csv(s, series);
            deliver(g, "series.csv", s.str());
        } else if (*cmd_sig) {
            const auto ts = rebase_window(load_series(sig_input), parse_origin_policy(sig_origin));
            const auto sig = signature_of_time_series(ts, sig_degree, parse_embedding(sig_embedding));
            if (g.out.empty()) {
                std::cout << tensor_to_json(sig) << '\n';
            } else {
                std::vector<std::vector<std::string>> rows;
                for (const auto& w : all_words(sig.dimension(), sig.degree()))
                    rows.push_back({word_label(w), format_double(sig[w])});
                deliver(g, "signature.json", tensor_to_json(sig) + "\n");
                deliver(g, std::string("signature") + extension(g), table(g, {"word", "value"}, rows));
            }
        } else if (*cmd_rec) {
            const auto sig = tensor_from_json(read_file(rec_input));
            std::vector<double> times = rec_times;
            if (!rec_times_from.empty()) times = load_series(rec_times_from).times();
            if (times.empty()) throw std::invalid_argument("reconstruct: give --times or --times-from");
            ReconstructOptions opts;
            opts.max_condition = rec_max_condition;
            const auto ts = reconstruct_time_series(sig, times, opts);
            std::ostringstream s;
            write_time_series_csv(s, ts);
            deliver(g, "series.csv", s.str());
        } else if (*cmd_fit) {
            const auto ts = load_series(fit_input);
            std::string json;
            if (fit_model == "es") {
                json = model_to_json(fit_es(ts, fit_es_args.spec()));
            } else if (fit_model == "ar") {
                json = model_to_json(ar_fit(ts, fit_lags));
            } else if (fit_model == "gp") {
                Eigen::MatrixXd x;
                Eigen::VectorXd y;
                lag_design(ts, fit_lags, x, y);
                json = model_to_json(gp_fit(x, y, fit_gp.options(g.seed)));
            } else {
                throw std::invalid_argument("unknown model '" + fit_model + "' (expected es|ar|gp)");
            }
            deliver(g, "model.json", json + "\n");
        } else if (*cmd_pred) {
            const std::string text = read_file(pred_model);
            const std::string kind = model_kind(text);
            const auto ts = load_series(pred_input);
            const auto values = ts.values();
            std::vector<std::string> header{"t", "mean"};
            std::vector<std::vector<std::string>> rows;
            if (kind == "es") {
                const auto model = es_model_from_json(text);
                const auto p = static_cast<std::size_t>(model.spec.p);
                const bool tensor = model.spec.mode == TargetMode::Tensor;
                const bool with_var = tensor && model.spec.m >= 2;
                if (with_var) header.push_back("variance");
                for (std::size_t k = p; k < ts.size(); ++k) {
                    const auto window = ts.slice(k - p, p + 1);
                    std::vector<std::string> row{format_double(ts[k].t)};
                    if (!tensor) {
                        row.push_back(format_double(predict_next(model, window)));
                    } else {
                        const auto mu = predict_mean_signature(model, window);
                        if (with_var) {
                            const auto mom = moments_from_mu(mu);
                            row.push_back(format_double(mom.mean));
                            row.push_back(format_double(mom.variance));
                        } else {
                            row.push_back(format_double(mu[Word{2}]));
                        }
                    }
                    rows.push_back(std::move(row));
                }
            } else if (kind == "ar") {
                const auto model = ar_model_from_json(text);
                for (std::size_t k = static_cast<std::size_t>(model.p) - 1; k < ts.size(); ++k)
                    rows.push_back({format_double(ts[k].t),
                                    format_double(ar_predict(model, lag_vector(values, k, model.p)))});
            } else if (kind == "gp") {
                const auto model = gp_model_from_json(text);
                const int p = static_cast<int>(model.x.cols());
                header.push_back("variance");
                for (std::size_t k = static_cast<std::size_t>(p) - 1; k < ts.size(); ++k) {
                    const auto pr = gp_predict(model, lag_vector(values, k, p));
                    rows.push_back({format_double(ts[k].t), format_double(pr.mean), format_double(pr.variance)});
                }
            } else {
                throw std::invalid_argument("unknown model kind '" + kind + "'");
            }
            deliver(g, std::string("predictions") + extension(g), table(g, header, rows));
        } else if (*cmd_cv) {
            LabeledSeries data;
            std::string dataset;
            if (!cv_input.empty()) {
                std::ifstream f(cv_input);
                if (!f) throw std::invalid_argument("cannot open " + cv_input);
                data = read_labeled_series_csv(f);
                dataset = fs::path(cv_input).filename().string();
            } else {
                data = generate(cv_gen.config(g.seed));
                dataset = cv_gen.kind;
                for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
            }
            ModelSettings settings;
            settings.lags = cv_lags;
            settings.es = cv_es.spec();
            settings.gp = cv_gp.options(g.seed);
            std::vector<std::unique_ptr<Regressor>> owned;
            std::stringstream names(cv_models);
            for (std::string name; std::getline(names, name, ',');)
                if (!name.empty()) owned.push_back(make_regressor(name, settings));
            std::vector<Regressor*> models;
            for (auto& m : owned) models.push_back(m.get());
            cv.seed = g.seed;
            auto report = run_crossval(data, models, cv);
            report.dataset = dataset;
            const auto format = parse_report_format(g.format);
            if (!g.out.empty()) {
                emit_report(report, g.out, format);
            } else if (format == ReportFormat::Csv) {
                write_metrics_csv(std::cout, report);
            } else {
                write_report_text(std::cout, report);
            }
        } else if (*cmd_diff) {
            dc.seed = g.seed;
            const auto data = gen_diffusion(dc);
            if (data.resampled > 0)
                std::cerr << "note: " << data.resampled << " paths left the bound and were redrawn\n";
            const auto rows = run_diffusion_study(data, degrees, diff_train);
            std::ostringstream s;
            if (g.format == "csv") {
                write_diffusion_csv(s, rows);
            } else {
                write_diffusion_text(s, rows);
            }
            deliver(g, std::string("diffusion") + extension(g), s.str());
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
