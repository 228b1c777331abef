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

#ifndef MZQBC_STRATEGIES_H
#define MZQBC_STRATEGIES_H

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mzqbc/linalg.h"
#include "mzqbc/optics.h"
#include "mzqbc/rng.h"

/// Bob's intercept-mode resend strategies.
///
/// In intercept mode Bob keeps Alice's photon, decodes it with his own copy of
/// the interferometer, and must put a photon back into channels X and Y so it
/// reaches Alice's detectors as if he had bypassed. The X packet has to leave
/// at bin 0, before Alice's Y packet arrives at bin 1.
namespace mzqbc::strategies {

/// Sends encode(g) on time for a uniformly random guess g.
struct BlindGuessOnTime {};

/// Waits for both packets, decodes, then resends encode(b) one bin late on
/// both rails.
struct FullMeasureLate {};

enum class RailPolicy {
    /// Per learned bit, the rail with the smaller mismatch probability.
    Optimal,
    AlwaysX,
    AlwaysY,
};

/// Puts the whole resent photon on one rail: X at bin 0 or Y at bin 1.
struct SingleChannel {
    RailPolicy policy = RailPolicy::Optimal;
};

/// A general causal resend strategy over three registers:
///   P: Alice's photon, basis {x = in the X packet, y = in the Y packet};
///   A: Bob's ancilla of dimension D (memory, coins);
///   E: Bob's outgoing photon, modes {X_out (bin 0), Y_out (bin 1), hold}.
/// Basis index is (p * D + a) * 3 + e. Start state: P = incoming photon,
/// A = |0>, E = |hold>.
///
/// u1 acts when Alice's X packet passes (bin 0). Only the packet's presence is
/// available then, so u1 must be block diagonal in P's {x, y} basis. After u1
/// the X_out amplitude has left, so u2 (bin 1, both packets held) must not
/// move amplitude into or out of the X_out sector. Anything still in `hold`
/// after u2 is never emitted on time and shows up as NoClick.
///
/// Bob's learned bit is the outcome of measuring P in the {Psi_0, Psi_1}
/// basis after u2 (u2 can rotate information from A into P first).
class GeneralCausal {
   public:
    GeneralCausal(int ancilla_dim, linalg::Matrix u1, linalg::Matrix u2);

    /// u1 = u2 = identity: Bob never emits anything.
    static GeneralCausal identity(int ancilla_dim);

    /// Strategies that decode Alice's bit with certainty: u1 = I_P (x) V with
    /// V|0, hold> = `preparation`, and at bin 1 Bob measures P in the Psi
    /// basis and applies `after_bit[j]` to A (x) {Y_out, hold} (index
    /// a * 2 + s, s = 0 for Y_out).
    static GeneralCausal full_information(int ancilla_dim, const linalg::Vector &preparation,
                                          const linalg::Matrix &after_bit0, const linalg::Matrix &after_bit1,
                                          const optics::BeamSplitterParams &params);

    int ancilla_dim() const {
        return ancilla_dim_;
    }
    int dim() const {
        return 6 * ancilla_dim_;
    }
    const linalg::Matrix &u1() const {
        return u1_;
    }
    const linalg::Matrix &u2() const {
        return u2_;
    }

    static int index(int p, int a, int e, int ancilla_dim) {
        return (p * ancilla_dim + a) * 3 + e;
    }

   private:
    int ancilla_dim_;
    linalg::Matrix u1_;
    linalg::Matrix u2_;
};

using ResendStrategy = std::variant<BlindGuessOnTime, FullMeasureLate, SingleChannel, GeneralCausal>;

std::string strategy_name(const ResendStrategy &strategy);

struct InterceptRecord {
    /// Bob's decoded bit; nullopt when the strategy learns nothing.
    std::optional<int> learned_bit;
    optics::PhotonState resent;
};

/// One outcome of Bob's internal randomness and measurement.
struct ResendBranch {
    std::optional<int> learned_bit;
    double weight = 0;
    optics::PhotonState resent;
};

/// The exact mixture of (learned bit, resent state) produced for `incoming`.
/// Weights sum to 1. Throws ParameterError unless `incoming` is a pure
/// photon on (X,0) and (Y,1).
std::vector<ResendBranch> resend_branches(const ResendStrategy &strategy, const optics::PhotonState &incoming,
                                          const optics::BeamSplitterParams &params);

/// Samples one branch of resend_branches.
InterceptRecord apply_strategy(const ResendStrategy &strategy, const optics::PhotonState &incoming,
                               const optics::BeamSplitterParams &params, Rng &rng);

/// Alice's detection statistics for the photon Bob sends back, averaged over
/// Bob's randomness.
optics::DetectionDistribution resent_distribution(const ResendStrategy &strategy, int bit,
                                                  const optics::BeamSplitterParams &params);

/// Probability that Alice's check flags an intercepted photon encoding `bit`.
double detection_prob(const ResendStrategy &strategy, int bit, const optics::BeamSplitterParams &params);

/// detection_prob averaged over both bits.
double mean_detection_prob(const ResendStrategy &strategy, const optics::BeamSplitterParams &params);

/// Probability that Bob's learned bit equals `bit` for incoming encode(bit).
double decode_accuracy(const ResendStrategy &strategy, int bit, const optics::BeamSplitterParams &params);

/// Whether Bob decodes both bits with certainty (within `tolerance`).
bool decodes_with_certainty(const ResendStrategy &strategy, const optics::BeamSplitterParams &params,
                            double tolerance = 1e-9);

/// Minimum over the set of the bit-averaged detection probability.
double epsilon_lower_bound(std::span<const ResendStrategy> strategies, const optics::BeamSplitterParams &params);

/// BlindGuessOnTime, FullMeasureLate and SingleChannel(Optimal).
std::vector<ResendStrategy> closed_form_family();

struct SearchOptions {
    int refine_steps = 400;
    double initial_step = 0.3;
    unsigned threads = 1;
};

struct SearchResult {
    /// Best over the searched GeneralCausal candidates and the closed-form
    /// family. Only an upper bound on the family's true minimum.
    ResendStrategy best;
    double best_prob = 1.0;
    /// Best searched GeneralCausal candidate alone.
    GeneralCausal best_causal = GeneralCausal::identity(1);
    double best_causal_prob = 1.0;
    /// Final value of every searched candidate, in trial order.
    std::vector<double> trial_probs;
};

/// Randomized search over full-information causal strategies. Trial 0 starts
/// from the identity couplings, the others from Haar-random couplings; each
/// candidate is refined by stochastic hill climbing. Deterministic given rng,
/// for any thread count.
SearchResult search_epsilon(int ancilla_dim, int trials, Rng &rng, const optics::BeamSplitterParams &params,
                            const SearchOptions &options = {});

}  // namespace mzqbc::strategies

#endif
