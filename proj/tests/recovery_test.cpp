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

#include "sigreg/recovery.hpp"

#include <gtest/gtest.h>

#include <random>

#include "sigreg/errors.hpp"
#include "sigreg/signature.hpp"
#include "test_util.hpp"

namespace sigreg {
namespace {

TEST(Reconstruct, TwoPointExample) {
    const TimeSeries ts({{1, 2}, {2, 5}});
    const auto sig = signature_of_time_series(ts, 2);
    // A = (0! pi^(2), 1! pi^(1,2)) = (5, 3) against times relative to t_0.
    EXPECT_DOUBLE_EQ(sig[Word{2}], 5.0);
    EXPECT_DOUBLE_EQ((sig[Word{1, 2}]), 3.0);
    const std::vector<double> times{1, 2};
    const auto back = reconstruct_time_series(sig, times);
    EXPECT_NEAR(back[0].r, 2.0, 1e-12);
    EXPECT_NEAR(back[1].r, 5.0, 1e-12);
    EXPECT_EQ(back[1].t, 2.0);
}

TEST(Reconstruct, ConstantSeries) {
    const double c = -1.75;
    const TimeSeries ts({{0, c}, {1, c}, {2, c}});
    const std::vector<double> times{0, 1, 2};
    const auto back = reconstruct_time_series(signature_of_time_series(ts, 3), times);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i].r, c, 1e-12);
}

TEST(Reconstruct, RoundTripRandomSeries) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 2 + static_cast<std::size_t>(trial % 5);
        const auto ts = testing::random_series(rng, len, trial * 0.25);
        const auto times = ts.times();
        const auto back = reconstruct_time_series(signature_of_time_series(ts, static_cast<int>(len)), times);
        for (std::size_t i = 0; i < len; ++i) EXPECT_NEAR(back[i].r, ts[i].r, 1e-8);
    }
}

TEST(Reconstruct, Errors) {
    const TimeSeries ts({{0, 1}, {1, 2}, {2, 3}});
    const std::vector<double> times{0, 1, 2};
    EXPECT_THROW(reconstruct_time_series(signature_of_time_series(ts, 2), times), std::invalid_argument);
    const std::vector<double> repeated{0, 1, 1};
    EXPECT_THROW(reconstruct_time_series(signature_of_time_series(ts, 3), repeated), std::invalid_argument);
    // Nearly coincident timestamps give an ill-conditioned Vandermonde system.
    const TimeSeries close({{0, 1}, {1, 2}, {1 + 1e-9, 3}, {2, 0}});
    const std::vector<double> close_times = close.times();
    ReconstructOptions tight;
    tight.max_condition = 1e6;
    EXPECT_THROW(reconstruct_time_series(signature_of_time_series(close, 4), close_times, tight), NumericalError);
}

TEST(SeparatingForms, TwoHorizontalSegments) {
    const std::vector<double> u{1, 0}, v{2, 0};
    const std::vector<TruncatedTensor> sigs{tensor_exp(u, 2, 3), tensor_exp(v, 2, 3)};
    const auto forms = build_separating_forms(sigs);
    EXPECT_EQ(forms.words[0][1], Word{1});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_NEAR(apply_form(forms.forms[i], sigs[j]), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(SeparatingForms, SingleComponentIsUnitForm) {
    const std::vector<double> u{0.3, 0.4};
    const std::vector<TruncatedTensor> sigs{tensor_exp(u, 2, 2)};
    const auto forms = build_separating_forms(sigs);
    ASSERT_EQ(forms.forms.size(), 1u);
    EXPECT_EQ(forms.forms[0].terms().size(), 1u);
    EXPECT_EQ(forms.forms[0].coefficient(Word{}), 1.0);
}

TEST(SeparatingForms, DeltaPropertyOnRandomPaths) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<TruncatedTensor> sigs;
        for (int i = 0; i < 4; ++i) sigs.push_back(signature(testing::random_path(rng, 2, 3), 4));
        const auto forms = build_separating_forms(sigs);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                EXPECT_NEAR(apply_form(forms.forms[i], sigs[j]), i == j ? 1.0 : 0.0, 1e-8);
    }
}

TEST(SeparatingForms, Errors) {
    const std::vector<double> u{1, 0};
    const std::vector<TruncatedTensor> same{tensor_exp(u, 2, 2), tensor_exp(u, 2, 2)};
    EXPECT_THROW(build_separating_forms(same), NumericalError);
    // Separating on level 2 needs degree 2 per factor: 2 + 2 > 3.
    std::vector<TruncatedTensor> deep;
    for (double a : {0.0, 1.0, 2.0}) {
        TruncatedTensor t = TruncatedTensor::unit(2, 3);
        t[Word{1, 2}] = a;
        deep.push_back(t);
    }
    EXPECT_THROW(build_separating_forms(deep), std::invalid_argument);
    std::vector<TruncatedTensor> many;
    for (int i = 0; i < 17; ++i) {
        const std::vector<double> v{static_cast<double>(i), 0};
        many.push_back(tensor_exp(v, 2, 16));
    }
    EXPECT_THROW(build_separating_forms(many), std::invalid_argument);
}

TEST(MixtureWeights, RecoversWeights) {
    std::mt19937_64 rng(3);
    std::vector<TruncatedTensor> sigs;
    for (int i = 0; i < 2; ++i) sigs.push_back(signature(testing::random_path(rng, 2, 2), 3));
    for (const auto& lambda : {std::vector<double>{0.3, 0.7}, std::vector<double>{1.0, 0.0}}) {
        TruncatedTensor expected(2, 3);
        for (std::size_t i = 0; i < 2; ++i) expected += scalar_mul(lambda[i], sigs[i]);
        const auto w = recover_mixture_weights(expected, sigs);
        EXPECT_NEAR(w[0], lambda[0], 1e-8);
        EXPECT_NEAR(w[1], lambda[1], 1e-8);
    }
    std::vector<TruncatedTensor> four;
    for (int i = 0; i < 4; ++i) four.push_back(signature(testing::random_path(rng, 2, 2), 4));
    TruncatedTensor expected(2, 4);
    for (const auto& s : four) expected += scalar_mul(0.25, s);
    double total = 0.0;
    for (double w : recover_mixture_weights(expected, four)) {
        EXPECT_NEAR(w, 0.25, 1e-8);
        total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-8);
}

}  // namespace
}  // namespace sigreg
