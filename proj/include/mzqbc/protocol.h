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

#ifndef MZQBC_PROTOCOL_H
#define MZQBC_PROTOCOL_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mzqbc/codes.h"
#include "mzqbc/fbs.h"
#include "mzqbc/optics.h"
#include "mzqbc/rng.h"
#include "mzqbc/strategies.h"

namespace mzqbc::protocol {

enum class BobMode { Bypass, Intercept };
enum class Verdict { Continue, AbortCheatingBob };
enum class UnveilResult { Accept, RejectParity, RejectNotCodeword, RejectInterceptMismatch };

std::string to_string(BobMode mode);
std::string to_string(Verdict verdict);
std::string to_string(UnveilResult result);

/// min(R, T): the smallest detection probability among the closed-form
/// resend strategies.
double default_epsilon(double reflectivity);

struct ProtocolParams {
    codes::LinearCode code;
    codes::BitString r;
    double reflectivity = 0.3;
    double f = 0.0;
    double epsilon = 0.3;
    uint64_t seed = 0;
    /// Bob multiplies each bypassed photon by a fresh random global phase.
    bool phase_defense = false;
    optics::Symmetry symmetry = optics::Symmetry::RequireAsymmetric;

    /// Fills epsilon from default_epsilon(reflectivity) when not given.
    static ProtocolParams make(codes::LinearCode code, codes::BitString r, double reflectivity, double f,
                               std::optional<double> epsilon = std::nullopt, uint64_t seed = 0);

    int n() const {
        return code.n();
    }
    double threshold() const {
        return code.abort_threshold();
    }
    optics::BeamSplitterParams beam_splitter() const;

    /// Throws ParameterError on any violated invariant.
    void validate() const;
};

struct HonestAlice {
    int bit = 0;
};

/// Sends the midpoint between two codewords at minimum distance, one in each
/// parity coset when possible, so she can open either way later.
struct MidpointCheatAlice {};

/// Honest sender who also runs a probe photon through the chained beam
/// splitter per position to guess Bob's mode.
struct FbsProbeAlice {
    int bit = 0;
    fbs::FbsConfig fbs;
};

using AlicePolicy = std::variant<HonestAlice, MidpointCheatAlice, FbsProbeAlice>;

struct HonestBob {
    double f = 0.0;
    strategies::ResendStrategy strategy = strategies::BlindGuessOnTime{};
};

struct FullInterceptBob {
    strategies::ResendStrategy strategy = strategies::BlindGuessOnTime{};
};

/// Intercepts exactly m uniformly chosen positions.
struct PartialInterceptBob {
    int m = 0;
    strategies::ResendStrategy strategy = strategies::BlindGuessOnTime{};
};

using BobPolicy = std::variant<HonestBob, FullInterceptBob, PartialInterceptBob>;

std::string policy_name(const AlicePolicy &alice);
std::string policy_name(const BobPolicy &bob);

struct SessionTranscript {
    ProtocolParams params;
    std::string alice_policy;
    std::string bob_policy;
    /// Parity of the sent word against r (for a cheating Alice the word is
    /// not a codeword).
    int committed_b = 0;
    codes::BitString codeword;
    std::vector<BobMode> modes;
    std::vector<strategies::InterceptRecord> bob_records;
    std::vector<optics::DetectionEvent> alice_events;
    std::vector<bool> mismatches;
    /// Bob's per-photon defense phase (all zero when the defense is off).
    std::vector<double> defense_phases;
    /// Alice's guess of Bob's modes; only filled for FbsProbeAlice.
    std::vector<BobMode> probe_labels;
    int n_mismatch = 0;
    double f_estimate = 0.0;
    Verdict alice_verdict = Verdict::Continue;

    int n() const {
        return static_cast<int>(modes.size());
    }
};

struct Announcement {
    int b = 0;
    codes::BitString c;
};

/// Commit phase: encode, route each photon through Bob, detect, count n'.
SessionTranscript run_commit(const AlicePolicy &alice, const BobPolicy &bob, const ProtocolParams &params, Rng &rng);

/// Unveil checks in order: codeword membership, parity, intercepted bits.
UnveilResult run_unveil(const SessionTranscript &transcript, const Announcement &announcement);

Announcement honest_announcement(const SessionTranscript &transcript);

Verdict verdict_for(int n_mismatch, int n, double epsilon, double threshold);

/// (f - eps f) / (1 - eps f).
double intercept_posterior_p(double f, double epsilon);

/// (1 - p)^flips.
double escape_probability(double p, int flips);

/// Binomial proportion with its standard error and a 95% Wilson interval.
struct Proportion {
    int64_t hits = 0;
    int64_t trials = 0;

    double rate() const;
    double sigma() const;
    double wilson_low() const;
    double wilson_high() const;
    /// |rate - expected| <= z * sqrt(expected (1 - expected) / trials).
    bool within(double expected, double z = 3.0) const;
};

struct ExperimentOptions {
    unsigned threads = 1;
    strategies::ResendStrategy strategy = strategies::BlindGuessOnTime{};
};

struct PosteriorReport {
    Proportion intercepted_given_clean;
    int64_t positions = 0;
    double predicted = 0.0;
    double strategy_detection = 0.0;
};

/// Empirical P(intercept | no mismatch at the position) over at least
/// `positions` photons of honest sessions with HonestBob(params.f).
PosteriorReport run_posterior_experiment(const ProtocolParams &params, int64_t positions, Rng &rng,
                                         const ExperimentOptions &options = {});

struct BindingReport {
    codes::BitString c_a;
    codes::BitString c_b;
    codes::BitString midpoint;
    double p = 0.0;
    /// Accept rate over all trials, and its prediction (1 - f)^flips.
    Proportion accept_all;
    double predicted_all = 0.0;
    /// Accept rate among trials where Alice saw no mismatch on any flipped
    /// position, and its prediction (1 - p)^flips.
    Proportion accept_proceed;
    double predicted_proceed = 0.0;
    /// Same for d/2 flips rounded up.
    double predicted_half_d = 0.0;
};

/// Midpoint cheat against HonestBob(params.f); the opening target is chosen
/// uniformly between the two codewords.
BindingReport run_binding_experiment(const ProtocolParams &params, int64_t trials, Rng &rng,
                                     const ExperimentOptions &options = {});

struct ConcealingReport {
    int m = 0;
    Proportion aborts;
    double predicted_abort = 0.0;
    double mean_p0 = 0.0;
    double mean_p1 = 0.0;
    double mean_posterior_true = 0.0;
    double mean_max_posterior = 0.0;
    int64_t impossible = 0;
};

/// Honest Alice with a uniform bit against PartialInterceptBob(m).
ConcealingReport run_concealing_experiment(const ProtocolParams &params, int m, int64_t trials, Rng &rng,
                                           const ExperimentOptions &options = {});

/// Abort probability when each of m intercepted photons is flagged with
/// probability q independently.
double predicted_abort_probability(int n, int m, double q, double epsilon, double threshold);

struct EfficiencyReport {
    int n = 0;
    double f = 0.0;
    double s_over_n = 10.0;
    double s = 0.0;
    double photons_current = 0.0;
    double duration_current = 0.0;
    double photons_prior = 0.0;
    double duration_prior = 0.0;
    double photon_ratio = 0.0;
    double duration_ratio = 0.0;
};

/// Resent photons and duration (in units of the bin spacing) against a
/// prior protocol that needs s = (s/n) * n photons.
EfficiencyReport efficiency_metrics(int n, double f, double s_over_n = 10.0);

}  // namespace mzqbc::protocol

#endif
