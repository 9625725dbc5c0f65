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

#include "sigreg/serialization.hpp"

#include <json.hpp>
#include <stdexcept>
#include <vector>

namespace sigreg {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("unexpected JSON layout: ") + e.what());
    }
}

json words_json(const std::vector<Word>& words) {
    json out = json::array();
    for (const auto& w : words) out.push_back(w.letters());
    return out;
}

std::vector<Word> words_from(const json& j) {
    std::vector<Word> out;
    for (const auto& w : j) out.emplace_back(w.get<std::vector<int>>());
    return out;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
    return rows;
}

Eigen::MatrixXd matrix_from(const json& j, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto row = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != cols) throw std::invalid_argument("ragged matrix in JSON");
        m.row(i) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), cols);
    }
    return m;
}

void expect_kind(const json& j, const char* kind) {
    if (j.value("model", std::string{}) != kind)
        throw std::invalid_argument(std::string("JSON document is not a ") + kind + " model");
}

}  // namespace

std::string tensor_to_json(const TruncatedTensor& t) {
    json levels = json::array();
    for (int k = 0; k <= t.degree(); ++k) {
        const auto l = t.level(k);
        levels.push_back(std::vector<double>(l.begin(), l.end()));
    }
    return json{{"d", t.dimension()}, {"n", t.degree()}, {"levels", levels}}.dump(2);
}

TruncatedTensor tensor_from_json(std::string_view text) {
    const json j = parse(text);
    return guarded([&] {
        const int d = j.at("d").get<int>();
        const int n = j.at("n").get<int>();
        std::vector<double> coeffs;
        const auto& levels = j.at("levels");
        if (levels.size() != static_cast<std::size_t>(n) + 1)
            throw std::invalid_argument("tensor JSON: expected n+1 levels");
        for (const auto& l : levels) {
            const auto v = l.get<std::vector<double>>();
            coeffs.insert(coeffs.end(), v.begin(), v.end());
        }
        return TruncatedTensor(d, n, std::move(coeffs));
    });
}

std::string model_to_json(const FittedESModel& model) {
    const auto& s = model.spec;
    json spec{{"p", s.p},
              {"q", s.q},
              {"n", s.n},
              {"m", s.m},
              {"embedding", std::string(to_string(s.embedding))},
              {"origin", std::string(to_string(s.origin))},
              {"mode", std::string(to_string(s.mode))},
              {"ridge", s.solver.ridge},
              {"rank_policy", std::string(to_string(s.solver.rank_policy))},
              {"rank_tolerance", s.solver.rank_tolerance}};
    json j{{"model", "es"},
           {"spec", spec},
           {"feature_words", words_json(s.feature_words())},
           {"target_words", words_json(s.target_words())},
           {"coefficients", matrix_json(model.coefficients)},
           {"residual_variance", vector_json(model.residual_variance)},
           {"r2", vector_json(model.r2)},
           {"adjusted_r2", vector_json(model.adjusted_r2)},
           {"rank", model.rank},
           {"samples", model.samples},
           {"dropped_features", words_json(model.dropped_features)}};
    return j.dump(2);
}

FittedESModel es_model_from_json(std::string_view text) {
    const json j = parse(text);
    expect_kind(j, "es");
    return guarded([&] {
        const auto& js = j.at("spec");
        FittedESModel m;
        auto& s = m.spec;
        s.p = js.at("p").get<int>();
        s.q = js.at("q").get<int>();
        s.n = js.at("n").get<int>();
        s.m = js.at("m").get<int>();
        s.embedding = parse_embedding(js.at("embedding").get<std::string>());
        s.origin = parse_origin_policy(js.at("origin").get<std::string>());
        s.mode = parse_target_mode(js.at("mode").get<std::string>());
        s.solver.ridge = js.value("ridge", 0.0);
        s.solver.rank_policy = parse_rank_policy(js.value("rank_policy", std::string("basic")));
        s.solver.rank_tolerance = js.value("rank_tolerance", 1e-10);
        s.validate();
        if (words_from(j.at("feature_words")) != s.feature_words() ||
            words_from(j.at("target_words")) != s.target_words())
            throw std::invalid_argument("ES model JSON: word ordering does not match the spec");
        m.coefficients = matrix_from(j.at("coefficients"), static_cast<Eigen::Index>(s.feature_count()));
        if (m.coefficients.rows() != static_cast<Eigen::Index>(s.target_count()))
            throw std::invalid_argument("ES model JSON: coefficient matrix has the wrong number of rows");
        m.residual_variance = vector_from(j.at("residual_variance"));
        m.r2 = vector_from(j.at("r2"));
        m.adjusted_r2 = vector_from(j.at("adjusted_r2"));
        m.rank = j.at("rank").get<Eigen::Index>();
        m.samples = j.at("samples").get<std::size_t>();
        m.dropped_features = words_from(j.value("dropped_features", json::array()));
        return m;
    });
}

std::string model_to_json(const ARModel& model) {
    json j{{"model", "ar"},
           {"p", model.p},
           {"phi", vector_json(model.phi)},
           {"innovation_variance", model.innovation_variance},
           {"r2", model.r2},
           {"adjusted_r2", model.adjusted_r2}};
    return j.dump(2);
}

ARModel ar_model_from_json(std::string_view text) {
    const json j = parse(text);
    expect_kind(j, "ar");
    return guarded([&] {
        ARModel m;
        m.p = j.at("p").get<int>();
        m.phi = vector_from(j.at("phi"));
        if (m.p < 1 || m.phi.size() != m.p + 1) throw std::invalid_argument("AR model JSON: expected p+1 coefficients");
        m.innovation_variance = j.at("innovation_variance").get<double>();
        m.r2 = j.value("r2", 0.0);
        m.adjusted_r2 = j.value("adjusted_r2", 0.0);
        return m;
    });
}

std::string model_to_json(const GPModel& model) {
    json j{{"model", "gp"},
           {"log_h", model.hyper.log_h},
           {"log_lambda", model.hyper.log_lambda},
           {"log_sigma", model.hyper.log_sigma},
           {"mean", model.mean_policy == GPMean::Zero ? "zero" : "constant"},
           {"log_likelihood", model.log_likelihood},
           {"x", matrix_json(model.x)},
           {"y", vector_json(model.y)}};
    return j.dump(2);
}

GPModel gp_model_from_json(std::string_view text) {
    const json j = parse(text);
    expect_kind(j, "gp");
    return guarded([&] {
        GPHyperparameters hp{j.at("log_h").get<double>(), j.at("log_lambda").get<double>(),
                             j.at("log_sigma").get<double>()};
        const auto mean_name = j.value("mean", std::string("zero"));
        if (mean_name != "zero" && mean_name != "constant")
            throw std::invalid_argument("GP model JSON: mean must be zero or constant");
        const auto& jx = j.at("x");
        if (jx.empty()) throw std::invalid_argument("GP model JSON: no training inputs");
        const auto x = matrix_from(jx, static_cast<Eigen::Index>(jx.at(0).size()));
        const auto y = vector_from(j.at("y"));
        return gp_condition(x, y, hp, mean_name == "zero" ? GPMean::Zero : GPMean::Constant);
    });
}

std::string model_kind(std::string_view text) {
    const json j = parse(text);
    return guarded([&] { return j.at("model").get<std::string>(); });
}

}  // namespace sigreg
