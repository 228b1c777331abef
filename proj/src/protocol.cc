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

#include "mzqbc/protocol.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mzqbc/error.h"
#include "mzqbc/nogo.h"
#include "mzqbc/parallel.h"

namespace mzqbc::protocol {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw ParameterError("bit must be 0 or 1");
    }
}

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1]");
    }
}

std::vector<BobMode> choose_modes(const BobPolicy &bob, int n, Rng &rng) {
    std::vector<BobMode> modes(n, BobMode::Bypass);
    std::visit(Overloaded{
                   [&](const HonestBob &h) {
                       check_probability(h.f, "f");
                       for (auto &m : modes) {
                           m = bernoulli(rng, h.f) ? BobMode::Intercept : BobMode::Bypass;
                       }
                   },
                   [&](const FullInterceptBob &) { std::fill(modes.begin(), modes.end(), BobMode::Intercept); },
                   [&](const PartialInterceptBob &p) {
                       if (p.m < 0 || p.m > n) {
                           throw ParameterError("intercept count m must lie in [0, n]");
                       }
                       std::vector<int> order(n);
                       for (int i = 0; i < n; i++) {
                           order[i] = i;
                       }
                       for (int i = 0; i < p.m; i++) {
                           int j = i + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n - i)));
                           std::swap(order[i], order[j]);
                           modes[order[i]] = BobMode::Intercept;
                       }
                   },
               },
               bob);
    return modes;
}

const strategies::ResendStrategy &bob_strategy(const BobPolicy &bob) {
    return std::visit([](const auto &b) -> const strategies::ResendStrategy & { return b.strategy; }, bob);
}

uint64_t master_seed(Rng &rng) {
    return rng();
}

}  // namespace

std::string to_string(BobMode mode) {
    return mode == BobMode::Bypass ? "Bypass" : "Intercept";
}

std::string to_string(Verdict verdict) {
    return verdict == Verdict::Continue ? "Continue" : "AbortCheatingBob";
}

std::string to_string(UnveilResult result) {
    switch (result) {
        case UnveilResult::Accept:
            return "Accept";
        case UnveilResult::RejectParity:
            return "RejectParity";
        case UnveilResult::RejectNotCodeword:
            return "RejectNotCodeword";
        case UnveilResult::RejectInterceptMismatch:
            return "RejectInterceptMismatch";
    }
    return "?";
}

double default_epsilon(double reflectivity) {
    return std::min(reflectivity, 1.0 - reflectivity);
}

ProtocolParams ProtocolParams::make(codes::LinearCode code, codes::BitString r, double reflectivity, double f,
                                    std::optional<double> epsilon, uint64_t seed) {
    ProtocolParams p;
    p.code = std::move(code);
    p.r = std::move(r);
    p.reflectivity = reflectivity;
    p.f = f;
    p.epsilon = epsilon.value_or(default_epsilon(reflectivity));
    p.seed = seed;
    p.validate();
    return p;
}

optics::BeamSplitterParams ProtocolParams::beam_splitter() const {
    return optics::BeamSplitterParams(reflectivity, symmetry);
}

void ProtocolParams::validate() const {
    if (code.n() == 0) {
        throw ParameterError("no code selected");
    }
    if (!code.satisfies_protocol_features()) {
        throw ParameterError("code must have k < n and d < n");
    }
    if (r.length() != code.n()) {
        throw ParameterError("r length must equal n");
    }
    if (r.is_zero()) {
        throw ParameterError("r must be nonzero");
    }
    beam_splitter();
    check_probability(f, "f");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw ParameterError("epsilon must lie in (0, 1]");
    }
    auto split = codes::coset_split(code, r);
    if (split.parity0.empty() || split.parity1.empty()) {
        throw ParameterError("committed subset empty; choose different r");
    }
}

std::string policy_name(const AlicePolicy &alice) {
    return std::visit(Overloaded{
                          [](const HonestAlice &a) { return "HonestAlice(" + std::to_string(a.bit) + ")"; },
                          [](const MidpointCheatAlice &) { return std::string("MidpointCheatAlice"); },
                          [](const FbsProbeAlice &a) {
                              return "FbsProbeAlice(" + std::to_string(a.bit) + ",M=" +
                                     std::to_string(a.fbs.cycles) + ")";
                          },
                      },
                      alice);
}

std::string policy_name(const BobPolicy &bob) {
    return std::visit(Overloaded{
                          [](const HonestBob &b) {
                              std::ostringstream f;
                              f << b.f;
                              return "HonestBob(" + f.str() + "," + strategies::strategy_name(b.strategy) +
                                     ")";
                          },
                          [](const FullInterceptBob &b) {
                              return "FullInterceptBob(" + strategies::strategy_name(b.strategy) + ")";
                          },
                          [](const PartialInterceptBob &b) {
                              return "PartialInterceptBob(" + std::to_string(b.m) + "," +
                                     strategies::strategy_name(b.strategy) + ")";
                          },
                      },
                      bob);
}

Verdict verdict_for(int n_mismatch, int n, double epsilon, double threshold) {
    double f_estimate = n_mismatch / (epsilon * n);
    return f_estimate < threshold ? Verdict::Continue : Verdict::AbortCheatingBob;
}

SessionTranscript run_commit(const AlicePolicy &alice, const BobPolicy &bob, const ProtocolParams &params, Rng &rng) {
    params.validate();
    const auto bs = params.beam_splitter();
    const int n = params.n();

    SessionTranscript t;
    t.params = params;
    t.alice_policy = policy_name(alice);
    t.bob_policy = policy_name(bob);
    std::visit(Overloaded{
                   [&](const HonestAlice &a) {
                       check_bit(a.bit);
                       t.codeword = codes::sample_codeword(params.code, params.r, a.bit, rng);
                   },
                   [&](const MidpointCheatAlice &) {
                       auto [c_a, c_b] = codes::minimum_distance_pair(params.code, &params.r);
                       t.codeword = codes::midpoint_word(c_a, c_b);
                   },
                   [&](const FbsProbeAlice &a) {
                       check_bit(a.bit);
                       fbs::validate(a.fbs);
                       t.codeword = codes::sample_codeword(params.code, params.r, a.bit, rng);
                   },
               },
               alice);
    t.committed_b = codes::parity(t.codeword, params.r);
    t.modes = choose_modes(bob, n, rng);
    const auto &strategy = bob_strategy(bob);
    const auto *probe = std::get_if<FbsProbeAlice>(&alice);

    for (int i = 0; i < n; i++) {
        int bit = t.codeword.bit(i);
        double theta = params.phase_defense ? 2.0 * std::numbers::pi * uniform01(rng) : 0.0;
        optics::PhotonState sent = optics::encode(bit, bs);
        strategies::InterceptRecord record;
        if (t.modes[i] == BobMode::Intercept) {
            record = strategies::apply_strategy(strategy, sent, bs, rng);
        } else {
            record.resent = optics::phase_apply(optics::phase_apply(sent, optics::Rail::X, theta), optics::Rail::Y,
                                                theta);
        }
        optics::DetectionEvent event = optics::sample_detection(record.resent, bs, rng);
        bool mismatch = optics::is_mismatch(event, bit);
        if (probe != nullptr) {
            fbs::FbsConfig cfg = probe->fbs;
            cfg.theta_per_cycle += theta;
            fbs::FbsOutcome out = fbs::fbs_run(cfg, t.modes[i] == BobMode::Intercept);
            t.probe_labels.push_back(uniform01(rng) < out.dc ? BobMode::Bypass : BobMode::Intercept);
        }
        t.defense_phases.push_back(theta);
        t.bob_records.push_back(std::move(record));
        t.alice_events.push_back(event);
        t.mismatches.push_back(mismatch);
        t.n_mismatch += mismatch ? 1 : 0;
    }
    t.f_estimate = t.n_mismatch / (params.epsilon * n);
    t.alice_verdict = t.f_estimate < params.threshold() ? Verdict::Continue : Verdict::AbortCheatingBob;
    return t;
}

UnveilResult run_unveil(const SessionTranscript &transcript, const Announcement &announcement) {
    const auto &params = transcript.params;
    if (announcement.c.length() != params.n() || transcript.n() != params.n()) {
        throw ParameterError("announcement length does not match the session");
    }
    check_bit(announcement.b);
    if (!params.code.contains(announcement.c)) {
        return UnveilResult::RejectNotCodeword;
    }
    if (codes::parity(announcement.c, params.r) != announcement.b) {
        return UnveilResult::RejectParity;
    }
    for (int i = 0; i < transcript.n(); i++) {
        const auto &learned = transcript.bob_records[i].learned_bit;
        if (transcript.modes[i] == BobMode::Intercept && learned && *learned != announcement.c.bit(i)) {
            return UnveilResult::RejectInterceptMismatch;
        }
    }
    return UnveilResult::Accept;
}

Announcement honest_announcement(const SessionTranscript &transcript) {
    return {transcript.committed_b, transcript.codeword};
}

double intercept_posterior_p(double f, double epsilon) {
    check_probability(f, "f");
    check_probability(epsilon, "epsilon");
    double denom = 1.0 - epsilon * f;
    if (denom <= 0.0) {
        throw ParameterError("epsilon * f must be < 1");
    }
    return (f - epsilon * f) / denom;
}

double escape_probability(double p, int flips) {
    check_probability(p, "p");
    if (flips < 0) {
        throw ParameterError("flips must be >= 0");
    }
    return std::pow(1.0 - p, flips);
}

double Proportion::rate() const {
    return trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
}

double Proportion::sigma() const {
    if (trials == 0) {
        return 0.0;
    }
    double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

namespace {

std::pair<double, double> wilson(const Proportion &x) {
    if (x.trials == 0) {
        return {0.0, 1.0};
    }
    const double z = 1.959963984540054;
    double nn = static_cast<double>(x.trials);
    double p = x.rate();
    double denom = 1.0 + z * z / nn;
    double centre = (p + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace

double Proportion::wilson_low() const {
    return wilson(*this).first;
}

double Proportion::wilson_high() const {
    return wilson(*this).second;
}

bool Proportion::within(double expected, double z) const {
    if (trials == 0) {
        return false;
    }
    double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
    return std::abs(rate() - expected) <= z * sd + 1e-15;
}

PosteriorReport run_posterior_experiment(const ProtocolParams &params, int64_t positions, Rng &rng,
                                         const ExperimentOptions &options) {
    params.validate();
    if (positions < 1) {
        throw ParameterError("positions must be >= 1");
    }
    const int n = params.n();
    const size_t sessions = static_cast<size_t>((positions + n - 1) / n);
    const uint64_t master = master_seed(rng);
    struct Counts {
        int64_t clean = 0;
        int64_t clean_intercepted = 0;
    };
    auto counts = map_trials(sessions, options.threads, [&](size_t s) {
        Rng local = trial_rng(master, s);
        int bit = bernoulli(local, 0.5) ? 1 : 0;
        auto t = run_commit(HonestAlice{bit}, HonestBob{params.f, options.strategy}, params, local);
        Counts c;
        for (int i = 0; i < n; i++) {
            if (!t.mismatches[i]) {
                c.clean++;
                c.clean_intercepted += t.modes[i] == BobMode::Intercept ? 1 : 0;
            }
        }
        return c;
    });
    PosteriorReport report;
    report.positions = static_cast<int64_t>(sessions) * n;
    for (const auto &c : counts) {
        report.intercepted_given_clean.trials += c.clean;
        report.intercepted_given_clean.hits += c.clean_intercepted;
    }
    report.predicted = intercept_posterior_p(params.f, params.epsilon);
    report.strategy_detection = strategies::mean_detection_prob(options.strategy, params.beam_splitter());
    return report;
}

BindingReport run_binding_experiment(const ProtocolParams &params, int64_t trials, Rng &rng,
                                     const ExperimentOptions &options) {
    params.validate();
    if (trials < 1) {
        throw ParameterError("trials must be >= 1");
    }
    BindingReport report;
    std::tie(report.c_a, report.c_b) = codes::minimum_distance_pair(params.code, &params.r);
    report.midpoint = codes::midpoint_word(report.c_a, report.c_b);
    report.p = intercept_posterior_p(params.f, params.epsilon);
    int flips_a = codes::hamming_distance(report.midpoint, report.c_a);
    int flips_b = codes::hamming_distance(report.midpoint, report.c_b);
    report.predicted_proceed = 0.5 * (escape_probability(report.p, flips_a) + escape_probability(report.p, flips_b));
    report.predicted_all = 0.5 * (std::pow(1.0 - params.f, flips_a) + std::pow(1.0 - params.f, flips_b));
    report.predicted_half_d = escape_probability(report.p, (params.code.d() + 1) / 2);

    const uint64_t master = master_seed(rng);
    struct Outcome {
        bool proceed = false;
        bool accept = false;
    };
    auto outcomes = map_trials(static_cast<size_t>(trials), options.threads, [&](size_t s) {
        Rng local = trial_rng(master, s);
        auto t = run_commit(MidpointCheatAlice{}, HonestBob{params.f, options.strategy}, params, local);
        const codes::BitString &target = bernoulli(local, 0.5) ? report.c_b : report.c_a;
        Outcome o;
        o.proceed = true;
        for (int i = 0; i < t.n(); i++) {
            if (t.codeword.bit(i) != target.bit(i) && t.mismatches[i]) {
                o.proceed = false;
            }
        }
        Announcement a{codes::parity(target, params.r), target};
        o.accept = run_unveil(t, a) == UnveilResult::Accept;
        return o;
    });
    for (const auto &o : outcomes) {
        report.accept_all.trials++;
        report.accept_all.hits += o.accept ? 1 : 0;
        if (o.proceed) {
            report.accept_proceed.trials++;
            report.accept_proceed.hits += o.accept ? 1 : 0;
        }
    }
    return report;
}

double predicted_abort_probability(int n, int m, double q, double epsilon, double threshold) {
    if (m < 0 || m > n) {
        throw ParameterError("intercept count m must lie in [0, n]");
    }
    check_probability(q, "q");
    double total = 0.0;
    double binom = 1.0;  // C(m, k)
    for (int k = 0; k <= m; k++) {
        if (verdict_for(k, n, epsilon, threshold) == Verdict::AbortCheatingBob) {
            total += binom * std::pow(q, k) * std::pow(1.0 - q, m - k);
        }
        binom = binom * (m - k) / (k + 1);
    }
    return total;
}

ConcealingReport run_concealing_experiment(const ProtocolParams &params, int m, int64_t trials, Rng &rng,
                                           const ExperimentOptions &options) {
    params.validate();
    if (m < 0 || m > params.n()) {
        throw ParameterError("intercept count m must lie in [0, n]");
    }
    if (trials < 1) {
        throw ParameterError("trials must be >= 1");
    }
    const uint64_t master = master_seed(rng);
    struct Outcome {
        bool abort = false;
        nogo::ParityPosterior posterior;
        int bit = 0;
    };
    auto outcomes = map_trials(static_cast<size_t>(trials), options.threads, [&](size_t s) {
        Rng local = trial_rng(master, s);
        Outcome o;
        o.bit = bernoulli(local, 0.5) ? 1 : 0;
        auto t = run_commit(HonestAlice{o.bit}, PartialInterceptBob{m, options.strategy}, params, local);
        o.abort = t.alice_verdict == Verdict::AbortCheatingBob;
        std::vector<int> positions;
        std::vector<int> values;
        for (int i = 0; i < t.n(); i++) {
            if (t.modes[i] == BobMode::Intercept && t.bob_records[i].learned_bit) {
                positions.push_back(i);
                values.push_back(*t.bob_records[i].learned_bit);
            }
        }
        o.posterior = nogo::bob_bit_posterior(params.code, params.r, positions, values);
        return o;
    });

    ConcealingReport report;
    report.m = m;
    int64_t counted = 0;
    for (const auto &o : outcomes) {
        report.aborts.trials++;
        report.aborts.hits += o.abort ? 1 : 0;
        if (o.posterior.impossible) {
            report.impossible++;
            continue;
        }
        counted++;
        report.mean_p0 += o.posterior.p0;
        report.mean_p1 += o.posterior.p1;
        report.mean_posterior_true += o.bit == 0 ? o.posterior.p0 : o.posterior.p1;
        report.mean_max_posterior += std::max(o.posterior.p0, o.posterior.p1);
    }
    if (counted > 0) {
        double c = static_cast<double>(counted);
        report.mean_p0 /= c;
        report.mean_p1 /= c;
        report.mean_posterior_true /= c;
        report.mean_max_posterior /= c;
    }
    double q = strategies::mean_detection_prob(options.strategy, params.beam_splitter());
    report.predicted_abort = predicted_abort_probability(params.n(), m, q, params.epsilon, params.threshold());
    return report;
}

EfficiencyReport efficiency_metrics(int n, double f, double s_over_n) {
    if (n < 1) {
        throw ParameterError("n must be >= 1");
    }
    check_probability(f, "f");
    if (!(s_over_n > 0.0) || !std::isfinite(s_over_n)) {
        throw ParameterError("s/n must be positive");
    }
    EfficiencyReport r;
    r.n = n;
    r.f = f;
    r.s_over_n = s_over_n;
    r.s = s_over_n * n;
    r.photons_current = n * f;
    r.duration_current = n;
    r.photons_prior = r.s * f;
    r.duration_prior = r.s;
    // Both ratios reduce to s / n; computing them that way keeps them defined
    // at f = 0.
    r.photon_ratio = r.s / n;
    r.duration_ratio = r.duration_prior / r.duration_current;
    return r;
}

}  // namespace mzqbc::protocol
