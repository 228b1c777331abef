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

#include "mzqbc/counterfactual.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mzqbc/error.h"
#include "mzqbc/fbs.h"

using namespace mzqbc;

namespace {

protocol::ProtocolParams eh8(double f) {
    return protocol::ProtocolParams::make(codes::extended_hamming_8_4(), codes::BitString::from_string("10000000"),
                                          0.3, f, std::nullopt, 1);
}

}  // namespace

TEST(Fbs, closed_forms) {
    for (int m : {1, 5, 25, 100}) {
        double pass = std::pow(std::cos(std::numbers::pi / (2.0 * m)), 2.0 * m);
        EXPECT_NEAR(fbs::blocked_pass_probability(m), pass, 1e-15);
        auto open = fbs::fbs_run({m, 0.0}, false);
        EXPECT_NEAR(open.dc, 1.0, 1e-12) << m;
        EXPECT_NEAR(open.dd, 0.0, 1e-12) << m;
        auto blocked = fbs::fbs_run({m, 0.0}, true);
        EXPECT_NEAR(blocked.dd, pass, 1e-12) << m;
        EXPECT_NEAR(blocked.dc, 0.0, 1e-15) << m;
        EXPECT_NEAR(blocked.absorbed, 1.0 - pass, 1e-12) << m;
    }
}

TEST(Fbs, probability_is_conserved) {
    for (double theta : {0.0, 0.3, 1.0, 3.0}) {
        for (bool blocked : {false, true}) {
            auto s = fbs::fbs_evolve({37, theta}, blocked);
            EXPECT_NEAR(s.total_probability(), 1.0, 1e-12);
        }
    }
}

TEST(Fbs, blocked_loss_shrinks_with_cycles) {
    double prev = -1.0;
    for (int m = 1; m <= 400; m *= 2) {
        double p = fbs::blocked_pass_probability(m);
        EXPECT_GT(p, prev);
        prev = p;
    }
    EXPECT_GT(prev, 0.99);
}

TEST(Fbs, validation) {
    EXPECT_THROW(fbs::validate({0, 0.0}), ParameterError);
    EXPECT_NO_THROW(fbs::validate({1, 0.0}));
}

TEST(Defense, random_phase_breaks_probe) {
    EXPECT_LT(counterfactual::mean_bypass_dc({100, 0.0}, 360), 0.9);
    EXPECT_THROW(counterfactual::mean_bypass_dc({100, 0.0}, 0), ParameterError);
}

TEST(Defense, honest_statistics_unchanged) {
    optics::BeamSplitterParams bs(0.3);
    for (int bit : {0, 1}) {
        auto honest = optics::detection_distribution(optics::encode(bit, bs), bs);
        auto shifted = counterfactual::defense_honest_invariance(bit, 1.234, bs);
        EXPECT_LE(shifted.max_abs_diff(honest), 1e-12);
    }
    EXPECT_THROW(counterfactual::defense_honest_invariance(0, -0.1, bs), ParameterError);
    EXPECT_THROW(counterfactual::defense_honest_invariance(0, 2 * std::numbers::pi, bs), ParameterError);
}

TEST(Attack, probe_reads_modes_without_defense) {
    Rng rng(1);
    auto rep = counterfactual::attack_session(eh8(0.5), false, {200, 0.0}, 300, rng);
    EXPECT_GE(rep.mode_accuracy.rate(), 0.99);
    EXPECT_GE(rep.bypass_detected.rate(), 0.99);
    EXPECT_GT(rep.cheat_success.hits, 0);
    EXPECT_EQ(rep.half_distance, 2);
}

TEST(Attack, defense_defeats_probe) {
    Rng rng(2);
    auto rep = counterfactual::attack_session(eh8(0.5), true, {200, 0.0}, 300, rng);
    EXPECT_LT(rep.mean_dc_bypass, 0.9);
    EXPECT_LT(rep.bypass_detected.rate(), 0.2);
    Rng rng2(2);
    auto off = counterfactual::attack_session(eh8(0.5), false, {200, 0.0}, 300, rng2);
    EXPECT_LT(rep.cheat_success.rate(), off.cheat_success.rate());
}

TEST(Attack, thread_independent) {
    Rng a(3);
    Rng b(3);
    auto one = counterfactual::attack_session(eh8(0.5), false, {50, 0.0}, 100, a, 1);
    auto four = counterfactual::attack_session(eh8(0.5), false, {50, 0.0}, 100, b, 4);
    EXPECT_EQ(one.mode_accuracy.hits, four.mode_accuracy.hits);
    EXPECT_EQ(one.cheat_success.hits, four.cheat_success.hits);
}
