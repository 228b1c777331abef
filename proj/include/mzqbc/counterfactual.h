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

#ifndef MZQBC_COUNTERFACTUAL_H
#define MZQBC_COUNTERFACTUAL_H

#include <cstdint>

#include "mzqbc/fbs.h"
#include "mzqbc/optics.h"
#include "mzqbc/protocol.h"
#include "mzqbc/rng.h"

/// Alice probing Bob's per-photon mode with a chained beam splitter, and
/// Bob's random-phase countermeasure.
namespace mzqbc::counterfactual {

struct AttackReport {
    int cycles = 0;
    bool defense_on = false;
    /// Per photon: Alice's label equals Bob's actual mode.
    protocol::Proportion mode_accuracy;
    /// Per bypassed photon: labeled Bypass.
    protocol::Proportion bypass_detected;
    /// Per session: Alice opened the opposite bit and Bob accepted.
    protocol::Proportion cheat_success;
    /// P(Dc | bypass) averaged over Bob's phase (exact, not sampled).
    double mean_dc_bypass = 0.0;
    double mean_labeled_bypass = 0.0;
    /// Flips needed to reach the nearest codeword: ceil(d / 2) for the
    /// midpoint cheat, d for moving between codewords.
    int half_distance = 0;
};

/// Honest Bob at params.f; Alice commits a uniform bit, labels every photon
/// Bypass iff her probe ends in Dc, and tries to open the other bit by
/// changing only labeled positions.
AttackReport attack_session(const protocol::ProtocolParams &params, bool defense_on, const fbs::FbsConfig &fbs,
                            int64_t trials, Rng &rng, unsigned threads = 1);

/// Mean Dc probability of an open chain when Bob adds a phase drawn from a
/// uniform grid of `grid_points` angles in [0, 2 pi).
double mean_bypass_dc(const fbs::FbsConfig &fbs, int grid_points);

/// Detection distribution of encode(bit) after Bob's phase theta on both
/// rails.
optics::DetectionDistribution defense_honest_invariance(int bit, double theta,
                                                        const optics::BeamSplitterParams &params);

}  // namespace mzqbc::counterfactual

#endif
