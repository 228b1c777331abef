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

#include <cmath>
#include <numbers>

#include "mzqbc/error.h"
#include "mzqbc/parallel.h"

namespace mzqbc::counterfactual {

using protocol::BobMode;

double mean_bypass_dc(const fbs::FbsConfig &fbs, int grid_points) {
    if (grid_points < 1) {
        throw ParameterError("grid_points must be >= 1");
    }
    double total = 0.0;
    for (int k = 0; k < grid_points; k++) {
        fbs::FbsConfig cfg = fbs;
        cfg.theta_per_cycle += 2.0 * std::numbers::pi * k / grid_points;
        total += fbs::fbs_run(cfg, false).dc;
    }
    return total / grid_points;
}

AttackReport attack_session(const protocol::ProtocolParams &params, bool defense_on, const fbs::FbsConfig &fbs,
                            int64_t trials, Rng &rng, unsigned threads) {
    fbs::validate(fbs);
    if (trials < 1) {
        throw ParameterError("trials must be >= 1");
    }
    protocol::ProtocolParams p = params;
    p.phase_defense = defense_on;
    p.validate();
    const auto split = codes::coset_split(p.code, p.r);

    struct Outcome {
        int correct = 0;
        int bypass = 0;
        int bypass_labeled = 0;
        int labeled = 0;
        bool success = false;
    };
    const uint64_t master = rng();
    auto outcomes = map_trials(static_cast<size_t>(trials), threads, [&](size_t s) {
        Rng local = trial_rng(master, s);
        int bit = bernoulli(local, 0.5) ? 1 : 0;
        auto t = protocol::run_commit(protocol::FbsProbeAlice{bit, fbs}, protocol::HonestBob{p.f}, p, local);
        Outcome o;
        uint64_t free_mask = 0;
        for (int i = 0; i < t.n(); i++) {
            bool labeled = t.probe_labels[i] == BobMode::Bypass;
            o.correct += t.probe_labels[i] == t.modes[i] ? 1 : 0;
            o.labeled += labeled ? 1 : 0;
            if (t.modes[i] == BobMode::Bypass) {
                o.bypass++;
                o.bypass_labeled += labeled ? 1 : 0;
            }
            if (labeled) {
                free_mask |= uint64_t{1} << i;
            }
        }
        for (const auto &c : split.of(1 - bit)) {
            if (((c ^ t.codeword).word() & ~free_mask) == 0) {
                protocol::Announcement a{1 - bit, c};
                o.success = protocol::run_unveil(t, a) == protocol::UnveilResult::Accept;
                break;
            }
        }
        return o;
    });

    AttackReport report;
    report.cycles = fbs.cycles;
    report.defense_on = defense_on;
    report.half_distance = (p.code.d() + 1) / 2;
    int64_t labeled = 0;
    for (const auto &o : outcomes) {
        report.mode_accuracy.trials += p.n();
        report.mode_accuracy.hits += o.correct;
        report.bypass_detected.trials += o.bypass;
        report.bypass_detected.hits += o.bypass_labeled;
        report.cheat_success.trials++;
        report.cheat_success.hits += o.success ? 1 : 0;
        labeled += o.labeled;
    }
    report.mean_labeled_bypass = static_cast<double>(labeled) / static_cast<double>(trials);
    report.mean_dc_bypass = defense_on ? mean_bypass_dc(fbs, 360) : fbs::fbs_run(fbs, false).dc;
    return report;
}

optics::DetectionDistribution defense_honest_invariance(int bit, double theta,
                                                        const optics::BeamSplitterParams &params) {
    if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
        throw ParameterError("theta must lie in [0, 2 pi)");
    }
    optics::PhotonState s = optics::encode(bit, params);
    s = optics::phase_apply(s, optics::Rail::X, theta);
    s = optics::phase_apply(s, optics::Rail::Y, theta);
    return optics::detection_distribution(s, params);
}

}  // namespace mzqbc::counterfactual
