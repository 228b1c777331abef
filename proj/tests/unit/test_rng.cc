// Copyright 2026 The mzqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mzqbc/rng.h"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "mzqbc/parallel.h"

using namespace mzqbc;

TEST(Rng, trial_seeds_are_distinct_and_stable) {
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 1000; i++) {
        seen.insert(trial_seed(7, i));
    }
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
    EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(Rng, uniform01_range_and_mean) {
    Rng rng(1);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; i++) {
        double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(Rng, uniform_below_covers_range) {
    Rng rng(2);
    int counts[5] = {};
    for (int i = 0; i < 50000; i++) {
        counts[uniform_below(rng, 5)]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 500);
    }
}

TEST(Rng, bernoulli_edges) {
    Rng rng(3);
    for (int i = 0; i < 100; i++) {
        EXPECT_FALSE(bernoulli(rng, 0.0));
        EXPECT_TRUE(bernoulli(rng, 1.0));
    }
}

TEST(Parallel, results_do_not_depend_on_thread_count) {
    auto work = [](size_t i) {
        Rng rng = trial_rng(99, i);
        return rng();
    };
    auto one = map_trials(257, 1, work);
    auto four = map_trials(257, 4, work);
    auto many = map_trials(257, 64, work);
    EXPECT_EQ(one, four);
    EXPECT_EQ(one, many);
}

TEST(Parallel, exceptions_propagate) {
    auto work = [](size_t i) -> int {
        if (i == 13) {
            throw std::runtime_error("boom");
        }
        return 0;
    };
    EXPECT_THROW(map_trials(40, 3, work), std::runtime_error);
    EXPECT_THROW(map_trials(40, 1, work), std::runtime_error);
}
