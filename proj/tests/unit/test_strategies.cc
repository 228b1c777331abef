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

#include "mzqbc/strategies.h"

#include <gtest/gtest.h>

#include <cmath>

#include "mzqbc/error.h"

using namespace mzqbc;
using namespace mzqbc::strategies;
using optics::BeamSplitterParams;
using optics::Rail;

namespace {

const double kRs[] = {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9};

// Full-information causal strategies cannot go below 1/2 - sqrt(R T); this is
// the analytic optimum of that family.
double causal_optimum(double R) {
    return 0.5 - std::sqrt(R * (1 - R));
}

double monte_carlo_detection(const ResendStrategy &s, int bit, const BeamSplitterParams &bs, int samples,
                             uint64_t seed) {
    Rng rng(seed);
    int flagged = 0;
    auto incoming = optics::encode(bit, bs);
    for (int i = 0; i < samples; i++) {
        auto record = apply_strategy(s, incoming, bs, rng);
        auto event = optics::sample_detection(record.resent, bs, rng);
        flagged += optics::is_mismatch(event, bit) ? 1 : 0;
    }
    return static_cast<double>(flagged) / samples;
}

}  // namespace

TEST(ClosedForm, detection_probabilities) {
    for (double R : kRs) {
        BeamSplitterParams bs(R);
        for (int bit = 0; bit < 2; bit++) {
            EXPECT_NEAR(detection_prob(BlindGuessOnTime{}, bit, bs), 0.5, 1e-12);
            EXPECT_NEAR(detection_prob(FullMeasureLate{}, bit, bs), 1.0, 1e-12);
            EXPECT_NEAR(detection_prob(SingleChannel{}, bit, bs), std::min(R, 1 - R), 1e-12);
        }
        // Fixed rails: a Y packet fires D0 with probability T, an X packet
        // fires D1 with probability T.
        EXPECT_NEAR(detection_prob(SingleChannel{RailPolicy::AlwaysY}, 0, bs), R, 1e-12);
        EXPECT_NEAR(detection_prob(SingleChannel{RailPolicy::AlwaysY}, 1, bs), 1 - R, 1e-12);
        EXPECT_NEAR(detection_prob(SingleChannel{RailPolicy::AlwaysX}, 0, bs), 1 - R, 1e-12);
        EXPECT_NEAR(detection_prob(SingleChannel{RailPolicy::AlwaysX}, 1, bs), R, 1e-12);
    }
}

TEST(ClosedForm, all_decode_with_certainty) {
    BeamSplitterParams bs(0.3);
    for (const auto &s : closed_form_family()) {
        EXPECT_TRUE(decodes_with_certainty(s, bs)) << strategy_name(s);
        EXPECT_GT(mean_detection_prob(s, bs), 1e-6) << strategy_name(s);
    }
}

TEST(ClosedForm, monte_carlo_agrees) {
    BeamSplitterParams bs(0.3);
    const int n = 100000;
    for (const auto &s : closed_form_family()) {
        for (int bit = 0; bit < 2; bit++) {
            double exact = detection_prob(s, bit, bs);
            double sigma = std::sqrt(exact * (1 - exact) / n);
            double mc = monte_carlo_detection(s, bit, bs, n, 100 + bit);
            EXPECT_LE(std::abs(mc - exact), 4 * sigma + 1e-12) << strategy_name(s) << " bit " << bit;
        }
    }
}

TEST(Apply, blind_guess_matching_guess_forwards_the_same_state) {
    BeamSplitterParams bs(0.3);
    auto incoming = optics::encode(1, bs);
    bool found = false;
    for (const auto &b : resend_branches(BlindGuessOnTime{}, incoming, bs)) {
        EXPECT_EQ(b.learned_bit, 1);
        if (std::abs(optics::inner_product(b.resent, incoming)) > 1 - 1e-12) {
            found = true;
            EXPECT_NEAR(b.weight, 0.5, 1e-12);
        }
    }
    EXPECT_TRUE(found);
}

TEST(Apply, full_measure_late_shifts_both_rails) {
    BeamSplitterParams bs(0.3);
    Rng rng(1);
    auto rec = apply_strategy(FullMeasureLate{}, optics::encode(0, bs), bs, rng);
    EXPECT_EQ(rec.learned_bit, 0);
    EXPECT_NEAR(std::norm(rec.resent.amp(Rail::X, 1)), 0.3, 1e-12);
    EXPECT_NEAR(std::norm(rec.resent.amp(Rail::Y, 2)), 0.7, 1e-12);
    EXPECT_EQ(rec.resent.amp(Rail::X, 0), optics::Complex(0));
}

TEST(Apply, single_channel_uses_y_for_bit_zero) {
    BeamSplitterParams bs(0.3);
    Rng rng(1);
    auto rec = apply_strategy(SingleChannel{}, optics::encode(0, bs), bs, rng);
    EXPECT_EQ(rec.learned_bit, 0);
    EXPECT_NEAR(std::abs(rec.resent.amp(Rail::Y, 1)), 1.0, 1e-15);
    auto rec1 = apply_strategy(SingleChannel{}, optics::encode(1, bs), bs, rng);
    EXPECT_NEAR(std::abs(rec1.resent.amp(Rail::X, 0)), 1.0, 1e-15);
}

TEST(Apply, rejects_malformed_incoming) {
    BeamSplitterParams bs(0.3);
    Rng rng(1);
    auto late = optics::PhotonState::single({Rail::X, 2});
    EXPECT_THROW(apply_strategy(BlindGuessOnTime{}, late, bs, rng), ParameterError);
    EXPECT_THROW(apply_strategy(BlindGuessOnTime{}, optics::PhotonState::vacuum(), bs, rng), ParameterError);
}

TEST(Apply, superposed_input_splits_learned_bit_by_born_rule) {
    BeamSplitterParams bs(0.3);
    auto in = optics::PhotonState::single({Rail::X, 0});
    double p1 = 0;
    for (const auto &b : resend_branches(FullMeasureLate{}, in, bs)) {
        if (b.learned_bit == 1) {
            p1 += b.weight;
        }
    }
    EXPECT_NEAR(p1, 0.7, 1e-12);
}

TEST(EpsilonBound, family_minimum) {
    BeamSplitterParams bs(0.3);
    std::vector<ResendStrategy> blind = {BlindGuessOnTime{}};
    std::vector<ResendStrategy> two = {BlindGuessOnTime{}, FullMeasureLate{}};
    std::vector<ResendStrategy> single = {SingleChannel{}};
    EXPECT_NEAR(epsilon_lower_bound(blind, bs), 0.5, 1e-12);
    EXPECT_NEAR(epsilon_lower_bound(two, bs), 0.5, 1e-12);
    EXPECT_NEAR(epsilon_lower_bound(single, bs), 0.3, 1e-12);
    EXPECT_NEAR(epsilon_lower_bound(closed_form_family(), bs), 0.3, 1e-12);
    EXPECT_THROW(epsilon_lower_bound(std::vector<ResendStrategy>{}, bs), ParameterError);
}

TEST(GeneralCausal, validates_structure) {
    EXPECT_THROW(GeneralCausal(0, linalg::Matrix::Identity(0, 0), linalg::Matrix::Identity(0, 0)), ParameterError);
    EXPECT_THROW(GeneralCausal(1, linalg::Matrix::Identity(5, 5), linalg::Matrix::Identity(6, 6)), ParameterError);
    linalg::Matrix not_unitary = linalg::Matrix::Identity(6, 6) * 2.0;
    EXPECT_THROW(GeneralCausal(1, not_unitary, linalg::Matrix::Identity(6, 6)), ParameterError);

    // u1 that swaps the x and y sectors would need to know the bit at bin 0.
    linalg::Matrix swap_p = linalg::Matrix::Zero(6, 6);
    for (int e = 0; e < 3; e++) {
        swap_p(GeneralCausal::index(0, 0, e, 1), GeneralCausal::index(1, 0, e, 1)) = 1.0;
        swap_p(GeneralCausal::index(1, 0, e, 1), GeneralCausal::index(0, 0, e, 1)) = 1.0;
    }
    EXPECT_THROW(GeneralCausal(1, swap_p, linalg::Matrix::Identity(6, 6)), ParameterError);

    // u2 that moves amplitude into X_out after bin 0 has passed.
    linalg::Matrix late_x = linalg::Matrix::Identity(6, 6);
    for (int p = 0; p < 2; p++) {
        int x = GeneralCausal::index(p, 0, 0, 1);
        int h = GeneralCausal::index(p, 0, 2, 1);
        late_x(x, x) = 0.0;
        late_x(h, h) = 0.0;
        late_x(x, h) = 1.0;
        late_x(h, x) = 1.0;
    }
    EXPECT_THROW(GeneralCausal(1, linalg::Matrix::Identity(6, 6), late_x), ParameterError);
    EXPECT_NO_THROW(GeneralCausal(1, late_x, linalg::Matrix::Identity(6, 6)));
}

TEST(GeneralCausal, identity_emits_nothing) {
    BeamSplitterParams bs(0.3);
    auto g = GeneralCausal::identity(2);
    for (int bit = 0; bit < 2; bit++) {
        auto dist = resent_distribution(g, bit, bs);
        EXPECT_NEAR(dist.no_click(), 1.0, 1e-12);
        EXPECT_NEAR(detection_prob(g, bit, bs), 1.0, 1e-12);
    }
    EXPECT_TRUE(decodes_with_certainty(g, bs));
}

TEST(GeneralCausal, random_full_information_strategies_keep_norm_and_decode) {
    BeamSplitterParams bs(0.3);
    Rng rng(11);
    for (int t = 0; t < 50; t++) {
        int D = 1 + static_cast<int>(uniform_below(rng, 3));
        auto g = GeneralCausal::full_information(D, linalg::random_unit_vector(3 * D, rng),
                                                 linalg::haar_unitary(2 * D, rng), linalg::haar_unitary(2 * D, rng),
                                                 bs);
        EXPECT_LE(linalg::unitarity_defect(g.u1()), 1e-10);
        EXPECT_LE(linalg::unitarity_defect(g.u2()), 1e-10);
        for (int bit = 0; bit < 2; bit++) {
            double total = 0;
            for (const auto &b : resend_branches(g, optics::encode(bit, bs), bs)) {
                total += b.weight;
                EXPECT_NEAR(b.resent.total_probability(), 1.0, 1e-10);
            }
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
        EXPECT_TRUE(decodes_with_certainty(g, bs));
        EXPECT_GE(mean_detection_prob(g, bs), causal_optimum(0.3) - 1e-9);
        EXPECT_GT(mean_detection_prob(g, bs), 1e-6);
    }
}

TEST(Search, single_unrefined_trial_is_identity) {
    BeamSplitterParams bs(0.3);
    Rng rng(1);
    SearchOptions opts;
    opts.refine_steps = 0;
    auto result = search_epsilon(1, 1, rng, bs, opts);
    EXPECT_NEAR(result.best_causal_prob, 1.0, 1e-12);
    EXPECT_NEAR(result.best_prob, 0.3, 1e-12);
}

TEST(Search, approaches_the_causal_optimum_from_above) {
    for (double R : {0.2, 0.3, 0.4}) {
        BeamSplitterParams bs(R);
        Rng rng(2);
        auto result = search_epsilon(1, 6, rng, bs);
        EXPECT_GE(result.best_causal_prob, causal_optimum(R) - 1e-9) << R;
        EXPECT_LE(result.best_causal_prob, causal_optimum(R) + 2e-3) << R;
        EXPECT_TRUE(decodes_with_certainty(result.best_causal, bs));
        EXPECT_GT(result.best_causal_prob, 1e-6);
        EXPECT_LE(result.best_prob, epsilon_lower_bound(closed_form_family(), bs) + 1e-12);
    }
}

TEST(Search, symmetric_splitter_bound) {
    BeamSplitterParams bs(0.5, optics::Symmetry::AllowSymmetric);
    Rng rng(3);
    auto result = search_epsilon(1, 3, rng, bs);
    EXPECT_LE(result.best_prob, 0.5 + 1e-9);
}

TEST(Search, deterministic_across_threads) {
    BeamSplitterParams bs(0.3);
    SearchOptions one;
    one.refine_steps = 50;
    SearchOptions three = one;
    three.threads = 3;
    Rng a(4);
    Rng b(4);
    auto ra = search_epsilon(2, 5, a, bs, one);
    auto rb = search_epsilon(2, 5, b, bs, three);
    EXPECT_EQ(ra.trial_probs, rb.trial_probs);
    EXPECT_EQ(ra.best_causal_prob, rb.best_causal_prob);
}

TEST(Search, rejects_bad_arguments) {
    BeamSplitterParams bs(0.3);
    Rng rng(1);
    EXPECT_THROW(search_epsilon(5, 1, rng, bs), ParameterError);
    EXPECT_THROW(search_epsilon(1, 0, rng, bs), ParameterError);
}
