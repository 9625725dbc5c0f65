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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sigreg/path_embedding.hpp"
#include "sigreg/signature.hpp"
#include "sigreg/time_series.hpp"
#include "test_util.hpp"

namespace sigreg {
namespace {

using testing::max_abs_diff;
using testing::random_path;
using testing::random_series;

std::vector<double> flat_of(const PiecewiseLinearPath& p) { return p.flat(); }

TEST(TimeSeries, ValidatesInput) {
    EXPECT_THROW(TimeSeries(std::vector<Observation>{}), std::invalid_argument);
    EXPECT_THROW(TimeSeries({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
    EXPECT_THROW(TimeSeries({{1.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
    EXPECT_THROW(TimeSeries({{0.0, NAN}}), std::invalid_argument);
}

TEST(TimeSeries, CsvRoundTrip) {
    std::mt19937_64 rng(1);
    const auto ts = random_series(rng, 7, 3.25);
    std::stringstream s;
    write_time_series_csv(s, ts);
    EXPECT_EQ(read_time_series_csv(s), ts);
    std::stringstream extra("t,r,m_true\n0,1,5\n1,2,6\n");
    const auto e = read_time_series_csv(extra);
    EXPECT_EQ(e.size(), 2u);
    EXPECT_EQ(e[1].r, 2.0);
    std::stringstream bad("t,x\n0,1\n");
    EXPECT_THROW(read_time_series_csv(bad), std::invalid_argument);
}

TEST(TimeJoined, StaircaseVertices) {
    const TimeSeries ts({{2, 2}, {3, 5}, {4, 3}, {5, 4}, {6, 6}, {7, 3}, {8, 2}});
    const auto path = embed_time_joined(ts);
    ASSERT_EQ(path.num_vertices(), 2 * ts.size());
    const std::vector<double> expected{2, 0, 2, 2, 3, 2, 3, 5, 4, 5, 4, 3, 5, 3, 5, 4,
                                       6, 4, 6, 6, 7, 6, 7, 3, 8, 3, 8, 2};
    EXPECT_EQ(flat_of(path), expected);
}

TEST(TimeJoined, DegenerateSeries) {
    EXPECT_EQ(flat_of(embed_time_joined(TimeSeries({{0, 5}}))), (std::vector<double>{0, 0, 0, 5}));
    EXPECT_EQ(flat_of(embed_time_joined(TimeSeries({{0, 0}, {1, 1}}))),
              (std::vector<double>{0, 0, 0, 0, 1, 0, 1, 1}));
}

TEST(TimeJoined, ContinuousAndTimeMonotone) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto path = embed_time_joined(random_series(rng, 1 + trial % 7));
        for (std::size_t i = 0; i + 1 < path.num_vertices(); ++i) {
            const auto inc = path.increment(i);
            EXPECT_GE(inc[0], 0.0);
            EXPECT_TRUE(inc[0] == 0.0 || inc[1] == 0.0);  // axis-parallel moves only
        }
    }
}

TEST(PiecewiseLinear, Basics) {
    const auto diag = embed_piecewise_linear(TimeSeries({{0, 0}, {1, 1}}));
    EXPECT_EQ(flat_of(diag), (std::vector<double>{0, 0, 1, 1}));
    const auto sig = signature(embed_piecewise_linear(TimeSeries({{0, 2}, {1, 2}, {3, 2}})), 4);
    EXPECT_EQ(sig[Word{2}], 0.0);
    EXPECT_EQ((sig[Word{2, 2}]), 0.0);
    EXPECT_EQ((sig[Word{1, 2}]), 0.0);
    std::mt19937_64 rng(3);
    const auto ts = random_series(rng, 6, 1.5);
    EXPECT_NEAR(signature(embed_piecewise_linear(ts), 1)[Word{1}], ts.back().t - ts.front().t, 1e-12);
    EXPECT_EQ(embed_piecewise_linear(TimeSeries({{4, 1}})).num_vertices(), 2u);
}

TEST(Rebase, ShiftAndAbsolute) {
    const TimeSeries ts({{10, 1.5}, {11, -2}});
    const auto shifted = rebase_window(ts, OriginPolicy::Shift);
    EXPECT_EQ(shifted, TimeSeries({{0, 1.5}, {1, -2}}));
    EXPECT_EQ(rebase_window(shifted, OriginPolicy::Shift), shifted);
    EXPECT_EQ(rebase_window(ts, OriginPolicy::Absolute), ts);
    EXPECT_EQ(parse_origin_policy("shift"), OriginPolicy::Shift);
    EXPECT_EQ(parse_embedding("linear"), Embedding::Linear);
    EXPECT_THROW(parse_embedding("lead-lag"), std::invalid_argument);
}

TEST(Path, ConcatenationTranslatesSecondPath) {
    const PiecewiseLinearPath x(2, {0, 0, 1, 0});
    const PiecewiseLinearPath y(2, {5, 5, 5, 6});
    EXPECT_EQ(flat_of(concatenate(x, y)), (std::vector<double>{0, 0, 1, 0, 1, 1}));
    EXPECT_THROW(PiecewiseLinearPath(2, {0, 0}), std::invalid_argument);
}

TEST(Signature, SingleSegmentIsExponential) {
    const std::vector<double> u{0.7, -1.3};
    const PiecewiseLinearPath p(2, {1.0, 1.0, 1.7, -0.3});
    EXPECT_LE(max_abs_diff(signature(p, 5), tensor_exp(u, 2, 5)), 1e-15);
}

TEST(Signature, ReversalCancels) {
    const PiecewiseLinearPath p(2, {0, 0, 0.4, 1.1, 0, 0});
    EXPECT_LE(max_abs_diff(signature(p, 6), TruncatedTensor::unit(2, 6)), 1e-14);
}

TEST(Signature, LevelOneIsIncrementAndSingleSegmentSymmetric) {
    std::mt19937_64 rng(4);
    const auto p = random_path(rng, 3, 5);
    const auto sig = signature(p, 3);
    const auto first = p.vertex(0), last = p.vertex(p.num_vertices() - 1);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(sig[Word{i + 1}], last[i] - first[i], 1e-12);
    EXPECT_EQ(sig[Word{}], 1.0);
    const auto seg = signature(PiecewiseLinearPath(3, {0, 0, 0, 0.3, -0.2, 0.9}), 3);
    EXPECT_NEAR((seg[Word{1, 2, 3}]), (seg[Word{3, 1, 2}]), 1e-15);
    EXPECT_NEAR((seg[Word{1, 1, 2}]), (seg[Word{2, 1, 1}]), 1e-15);
}

TEST(Signature, ReparameterizationInvariant) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_path(rng, 2, 4);
        // Split every segment at an interior point.
        std::vector<double> refined;
        for (std::size_t i = 0; i + 1 < p.num_vertices(); ++i) {
            const auto a = p.vertex(i), b = p.vertex(i + 1);
            refined.insert(refined.end(), a.begin(), a.end());
            for (int j = 0; j < 2; ++j) refined.push_back(a[j] + 0.3 * (b[j] - a[j]));
        }
        const auto last = p.vertex(p.num_vertices() - 1);
        refined.insert(refined.end(), last.begin(), last.end());
        EXPECT_LE(max_abs_diff(signature(p, 5), signature(PiecewiseLinearPath(2, refined), 5)), 1e-12);
    }
}

TEST(Signature, ChenIdentity) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_path(rng, 2, 1 + trial % 5);
        const auto y = random_path(rng, 2, 1 + trial % 3);
        EXPECT_LE(max_abs_diff(signature(concatenate(x, y), 5), tensor_mul(signature(x, 5), signature(y, 5))),
                  1e-12);
    }
}

TEST(SignatureOfTimeSeries, TwoPointExample) {
    const auto sig = signature_of_time_series(TimeSeries({{0, 0}, {1, 1}}), 2);
    EXPECT_DOUBLE_EQ(sig[Word{1}], 1.0);
    EXPECT_DOUBLE_EQ(sig[Word{2}], 1.0);
    EXPECT_DOUBLE_EQ((sig[Word{1, 2}]), 1.0);
    EXPECT_DOUBLE_EQ((sig[Word{2, 1}]), 0.0);
    EXPECT_DOUBLE_EQ((sig[Word{1, 1}]), 0.5);
    EXPECT_DOUBLE_EQ((sig[Word{2, 2}]), 0.5);
}

TEST(SignatureOfTimeSeries, ShiftedTwoPointExample) {
    // exp(2 e2) (x) exp(e1) (x) exp(3 e2): the area term pi^(1,2) is 1 * 3.
    const TimeSeries ts({{1, 2}, {2, 5}});
    const auto sig = signature_of_time_series(ts, 2);
    EXPECT_DOUBLE_EQ(sig[Word{2}], 5.0);
    EXPECT_DOUBLE_EQ((sig[Word{1, 2}]), 3.0);
    const auto path = embed_time_joined(ts);
    EXPECT_NEAR(oracle_iterated_integral(path, Word{1, 2}, 1 << 14), 3.0, 1e-3);
}

TEST(SignatureOfTimeSeries, MatchesEmbeddedPath) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ts = random_series(rng, 1 + trial % 6, trial * 0.5);
        const auto direct = signature_of_time_series(ts, 5);
        EXPECT_LE(max_abs_diff(direct, signature(embed_time_joined(ts), 5)), 1e-12);
        EXPECT_NEAR(direct[Word{2}], ts.back().r, 1e-12);
        EXPECT_LE(max_abs_diff(signature_of_time_series(ts, 4, Embedding::Linear),
                               signature(embed_piecewise_linear(ts), 4)),
                  0.0);
    }
}

TEST(Oracle, FirstLevelsAndConvergence) {
    const PiecewiseLinearPath mono(2, {0, 0, 1, 2, 3, 1});
    EXPECT_NEAR(oracle_iterated_integral(mono, Word{1}, 1000), 3.0, 1e-12);
    EXPECT_NEAR(oracle_iterated_integral(mono, Word{1, 1}, 1 << 14), 4.5, 1e-3);
    EXPECT_EQ(oracle_iterated_integral(mono, Word{}, 100), 1.0);
    EXPECT_THROW(oracle_iterated_integral(mono, Word{1, 2}, 10), std::invalid_argument);

    std::mt19937_64 rng(8);
    const auto p = random_path(rng, 2, 5);
    const auto sig = signature(p, 4);
    for (const auto& w : all_words(2, 4)) {
        if (w.empty()) continue;
        const double e1 = std::abs(oracle_iterated_integral(p, w, 2048) - sig[w]);
        const double e2 = std::abs(oracle_iterated_integral(p, w, 4096) - sig[w]);
        EXPECT_LE(e2, 2e-2) << w.to_string();
        if (e1 > 1e-6) {
            EXPECT_LT(e2 / e1, 0.7) << w.to_string();
        }
    }
}

}  // namespace
}  // namespace sigreg
