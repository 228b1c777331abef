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

#include "cli/commands.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mzqbc/codes.h"
#include "mzqbc/counterfactual.h"
#include "mzqbc/error.h"
#include "mzqbc/fbs.h"
#include "mzqbc/nogo.h"
#include "mzqbc/optics.h"
#include "mzqbc/protocol.h"
#include "mzqbc/strategies.h"

namespace mzqbc::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommonKeys = {
    "seed", "trials", "threads", "format", "out", "code", "builtin_code", "code_file",
    "r",    "R",      "f",       "epsilon", "allow_symmetric",
};

std::set<std::string> keys_with(std::initializer_list<std::string> extra) {
    std::set<std::string> out = kCommonKeys;
    out.insert(extra.begin(), extra.end());
    return out;
}

// Stream salt for the default mask so it never shares draws with experiments.
constexpr uint64_t kMaskStream = 0x6d61736bULL;

struct Context {
    const Config &cfg;
    uint64_t seed;
    std::string hash;
    unsigned threads;
    std::string format;

    Context(const Config &c, const std::string &default_format) : cfg(c) {
        int64_t s = c.get_int("seed", 1);
        if (s < 0) {
            throw ParameterError("seed must be >= 0");
        }
        seed = static_cast<uint64_t>(s);
        hash = c.hash();
        int64_t t = c.get_int("threads", 1);
        if (t < 1 || t > 256) {
            throw ParameterError("threads must lie in [1, 256]");
        }
        threads = static_cast<unsigned>(t);
        format = c.get_string("format", default_format);
        if (format != "csv" && format != "json") {
            throw ParameterError("format must be csv or json");
        }
    }

    int64_t trials(int64_t fallback) const {
        int64_t t = cfg.get_int("trials", fallback);
        if (t < 1) {
            throw ParameterError("trials must be >= 1");
        }
        return t;
    }
};

codes::LinearCode select_code(const Config &cfg, const std::string &fallback) {
    if (auto path = cfg.get_optional("code_file")) {
        if (cfg.has("code") || cfg.has("builtin_code")) {
            throw ParameterError("give either code_file or code, not both");
        }
        return codes::read_generator_file(*path);
    }
    std::string name = cfg.get_string("code", cfg.get_string("builtin_code", fallback));
    return codes::builtin_code(name);
}

codes::BitString select_r(const Config &cfg, const codes::LinearCode &code, uint64_t seed) {
    if (auto text = cfg.get_optional("r")) {
        codes::BitString r = codes::BitString::from_string(*text);
        if (r.length() != code.n()) {
            throw ParameterError("r length must equal n = " + std::to_string(code.n()));
        }
        if (r.is_zero()) {
            throw ParameterError("r must be nonzero");
        }
        return r;
    }
    Rng rng = trial_rng(seed, kMaskStream);
    for (int attempt = 0; attempt < 1000; attempt++) {
        codes::BitString r = codes::random_nonzero(code.n(), rng);
        auto split = codes::coset_split(code, r);
        if (!split.parity0.empty() && !split.parity1.empty()) {
            return r;
        }
    }
    throw ParameterError("could not draw a mask r splitting the code; set r explicitly");
}

optics::Symmetry symmetry(const Config &cfg) {
    return cfg.get_bool("allow_symmetric", false) ? optics::Symmetry::AllowSymmetric
                                                  : optics::Symmetry::RequireAsymmetric;
}

protocol::ProtocolParams make_params(const Context &ctx, const codes::LinearCode &code, const codes::BitString &r) {
    protocol::ProtocolParams p;
    p.code = code;
    p.r = r;
    p.reflectivity = ctx.cfg.get_double("R", 0.3);
    p.f = ctx.cfg.get_double("f", 0.0);
    p.epsilon = ctx.cfg.get_optional_double("epsilon").value_or(protocol::default_epsilon(p.reflectivity));
    p.seed = ctx.seed;
    p.phase_defense = ctx.cfg.get_bool("defense", false);
    p.symmetry = symmetry(ctx.cfg);
    p.validate();
    return p;
}

strategies::ResendStrategy parse_strategy(const std::string &name) {
    if (name == "blind_guess") {
        return strategies::BlindGuessOnTime{};
    }
    if (name == "full_measure_late") {
        return strategies::FullMeasureLate{};
    }
    if (name == "single_channel") {
        return strategies::SingleChannel{strategies::RailPolicy::Optimal};
    }
    if (name == "single_channel_x") {
        return strategies::SingleChannel{strategies::RailPolicy::AlwaysX};
    }
    if (name == "single_channel_y") {
        return strategies::SingleChannel{strategies::RailPolicy::AlwaysY};
    }
    throw ParameterError("unknown strategy '" + name +
                         "' (blind_guess, full_measure_late, single_channel, single_channel_x, single_channel_y)");
}

json code_json(const codes::LinearCode &code) {
    return {{"name", code.name()}, {"n", code.n()}, {"k", code.k()}, {"d", code.d()}};
}

json proportion_json(const protocol::Proportion &p) {
    return {{"hits", p.hits},
            {"trials", p.trials},
            {"rate", p.rate()},
            {"sigma", p.sigma()},
            {"ci95", {p.wilson_low(), p.wilson_high()}}};
}

void emit(const Config &cfg, const std::string &content, std::ostream &out) {
    if (auto path = cfg.get_optional("out")) {
        std::ofstream file(*path, std::ios::binary);
        if (!file) {
            throw ParameterError("cannot write output file '" + *path + "'");
        }
        file << content;
        return;
    }
    out << content;
}

std::string csv_row(const std::vector<std::string> &cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); i++) {
        if (i) {
            line += ',';
        }
        line += cells[i];
    }
    return line + "\n";
}

std::string fd(double v) {
    return format_double(v);
}

// ---------------------------------------------------------------- run

int cmd_run_impl(const Config &cfg, std::ostream &out) {
    cfg.require_known(keys_with({"alice", "bob", "bit", "m", "strategy", "defense", "M", "target_bit"}));
    Context ctx(cfg, "json");
    auto code = select_code(cfg, "ext_hamming8");
    auto r = select_r(cfg, code, ctx.seed);
    auto params = make_params(ctx, code, r);

    int bit = static_cast<int>(cfg.get_int("bit", 0));
    auto strategy = parse_strategy(cfg.get_string("strategy", "blind_guess"));
    std::string alice_name = cfg.get_string("alice", "honest");
    std::string bob_name = cfg.get_string("bob", "honest");

    protocol::AlicePolicy alice;
    if (alice_name == "honest") {
        alice = protocol::HonestAlice{bit};
    } else if (alice_name == "midpoint") {
        alice = protocol::MidpointCheatAlice{};
    } else if (alice_name == "fbs_probe") {
        alice = protocol::FbsProbeAlice{bit, fbs::FbsConfig{static_cast<int>(cfg.get_int("M", 200)), 0.0}};
    } else {
        throw ParameterError("alice must be honest, midpoint or fbs_probe");
    }
    protocol::BobPolicy bob;
    if (bob_name == "honest") {
        bob = protocol::HonestBob{params.f, strategy};
    } else if (bob_name == "full") {
        bob = protocol::FullInterceptBob{strategy};
    } else if (bob_name == "partial") {
        bob = protocol::PartialInterceptBob{static_cast<int>(cfg.get_int("m", 0)), strategy};
    } else {
        throw ParameterError("bob must be honest, full or partial");
    }

    Rng rng(ctx.seed);
    auto t = protocol::run_commit(alice, bob, params, rng);
    protocol::Announcement announcement = protocol::honest_announcement(t);
    if (alice_name == "midpoint") {
        int target_bit = static_cast<int>(cfg.get_int("target_bit", 0));
        auto [c_a, c_b] = codes::minimum_distance_pair(code, &params.r);
        const auto &target = codes::parity(c_a, params.r) == target_bit ? c_a : c_b;
        announcement = {codes::parity(target, params.r), target};
    }
    auto unveil = protocol::run_unveil(t, announcement);

    std::ostringstream body;
    if (ctx.format == "json") {
        json photons = json::array();
        for (int i = 0; i < t.n(); i++) {
            json p = {{"i", i},
                      {"bit", t.codeword.bit(i)},
                      {"mode", protocol::to_string(t.modes[i])},
                      {"event", t.alice_events[i].to_string()},
                      {"mismatch", static_cast<bool>(t.mismatches[i])}};
            const auto &learned = t.bob_records[i].learned_bit;
            p["learned_bit"] = learned ? json(*learned) : json(nullptr);
            if (params.phase_defense) {
                p["defense_phase"] = t.defense_phases[i];
            }
            if (!t.probe_labels.empty()) {
                p["probe_label"] = protocol::to_string(t.probe_labels[i]);
            }
            photons.push_back(p);
        }
        json doc = {{"config_hash", ctx.hash},
                    {"seed", ctx.seed},
                    {"code", code_json(code)},
                    {"r", params.r.to_string()},
                    {"R", params.reflectivity},
                    {"f", params.f},
                    {"epsilon", params.epsilon},
                    {"threshold", params.threshold()},
                    {"alice_policy", t.alice_policy},
                    {"bob_policy", t.bob_policy},
                    {"committed_b", t.committed_b},
                    {"codeword", t.codeword.to_string()},
                    {"photons", photons},
                    {"n_mismatch", t.n_mismatch},
                    {"f_estimate", t.f_estimate},
                    {"alice_verdict", protocol::to_string(t.alice_verdict)},
                    {"announcement", {{"b", announcement.b}, {"c", announcement.c.to_string()}}},
                    {"unveil", protocol::to_string(unveil)}};
        body << doc.dump(2) << "\n";
    } else {
        body << csv_row({"config_hash", "seed", "i", "bit", "mode", "learned_bit", "event", "mismatch"});
        for (int i = 0; i < t.n(); i++) {
            const auto &learned = t.bob_records[i].learned_bit;
            body << csv_row({ctx.hash, std::to_string(ctx.seed), std::to_string(i),
                             std::to_string(t.codeword.bit(i)), protocol::to_string(t.modes[i]),
                             learned ? std::to_string(*learned) : "", t.alice_events[i].to_string(),
                             t.mismatches[i] ? "1" : "0"});
        }
    }

    std::ostringstream summary;
    auto row = [&](const std::string &k, const std::string &v) {
        summary << "  " << k << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ') << v << "\n";
    };
    summary << "session summary\n";
    row("code", code.description());
    row("r", params.r.to_string());
    row("R", fd(params.reflectivity));
    row("epsilon", fd(params.epsilon));
    row("alice", t.alice_policy);
    row("bob", t.bob_policy);
    row("committed b", std::to_string(t.committed_b));
    row("word sent", t.codeword.to_string());
    row("n'", std::to_string(t.n_mismatch));
    row("f estimate", fd(t.f_estimate));
    row("threshold", fd(params.threshold()));
    row("verdict", protocol::to_string(t.alice_verdict));
    row("unveil", protocol::to_string(unveil));
    // With --out the data goes to the file and the summary to the terminal.
    if (cfg.has("out")) {
        out << summary.str();
    }
    emit(cfg, body.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep_impl(const Config &cfg, std::ostream &out) {
    cfg.require_known(keys_with({"f_grid", "R_grid", "codes", "strategy", "s_over_n"}));
    Context ctx(cfg, "csv");
    int64_t trials = ctx.trials(2000);
    auto f_grid = cfg.get_double_list("f_grid", {0.0, 0.25, 0.5});
    auto r_grid = cfg.get_double_list("R_grid", {cfg.get_double("R", 0.3)});
    std::vector<codes::LinearCode> code_list;
    if (cfg.has("codes")) {
        for (const auto &name : cfg.get_string_list("codes", {})) {
            code_list.push_back(codes::builtin_code(name));
        }
    } else {
        code_list.push_back(select_code(cfg, "ext_hamming8"));
    }
    if (f_grid.empty() || r_grid.empty() || code_list.empty()) {
        throw ParameterError("empty grid");
    }
    // Bob intercepts with the strategy whose detection rate matches the
    // default epsilon, so the predicted columns line up with the samples.
    protocol::ExperimentOptions options;
    options.threads = ctx.threads;
    options.strategy = parse_strategy(cfg.get_string("strategy", "single_channel"));
    double s_over_n = cfg.get_double("s_over_n", 10.0);

    const std::vector<std::string> header = {
        "config_hash", "seed", "code", "n", "k", "d", "r", "R", "f", "epsilon", "threshold", "trials", "p",
        "predicted_escape_half_d", "predicted_accept_proceed", "empirical_accept_proceed", "proceed_trials",
        "predicted_accept_all", "empirical_accept_all", "intercepts", "abort_rate", "predicted_abort_rate",
        "posterior_true_bit", "photons_current", "duration_current", "photons_prior", "duration_prior",
        "photon_ratio", "duration_ratio"};
    json rows = json::array();
    std::ostringstream csv;
    csv << csv_row(header);
    uint64_t point = 0;
    for (const auto &code : code_list) {
        Config local_cfg = cfg;
        auto r = select_r(cfg, code, ctx.seed);
        for (double R : r_grid) {
            for (double f : f_grid) {
                Config point_cfg = cfg;
                point_cfg.set("R", fd(R));
                point_cfg.set("f", fd(f));
                Context pctx(point_cfg, ctx.format);
                auto params = make_params(pctx, code, r);
                Rng rng = trial_rng(ctx.seed, point++);
                auto binding = protocol::run_binding_experiment(params, trials, rng, options);
                int m = static_cast<int>(std::lround(f * code.n()));
                auto conceal = protocol::run_concealing_experiment(params, m, trials, rng, options);
                auto eff = protocol::efficiency_metrics(code.n(), f, s_over_n);
                std::vector<std::string> cells = {ctx.hash,
                                                  std::to_string(ctx.seed),
                                                  code.name(),
                                                  std::to_string(code.n()),
                                                  std::to_string(code.k()),
                                                  std::to_string(code.d()),
                                                  r.to_string(),
                                                  fd(R),
                                                  fd(f),
                                                  fd(params.epsilon),
                                                  fd(params.threshold()),
                                                  std::to_string(trials),
                                                  fd(binding.p),
                                                  fd(binding.predicted_half_d),
                                                  fd(binding.predicted_proceed),
                                                  fd(binding.accept_proceed.rate()),
                                                  std::to_string(binding.accept_proceed.trials),
                                                  fd(binding.predicted_all),
                                                  fd(binding.accept_all.rate()),
                                                  std::to_string(m),
                                                  fd(conceal.aborts.rate()),
                                                  fd(conceal.predicted_abort),
                                                  fd(conceal.mean_posterior_true),
                                                  fd(eff.photons_current),
                                                  fd(eff.duration_current),
                                                  fd(eff.photons_prior),
                                                  fd(eff.duration_prior),
                                                  fd(eff.photon_ratio),
                                                  fd(eff.duration_ratio)};
                csv << csv_row(cells);
                json obj = json::object();
                for (size_t i = 0; i < header.size(); i++) {
                    obj[header[i]] = cells[i];
                }
                rows.push_back(obj);
            }
        }
    }
    if (ctx.format == "csv") {
        emit(cfg, csv.str(), out);
    } else {
        json doc = {{"config_hash", ctx.hash}, {"seed", ctx.seed}, {"rows", rows}};
        emit(cfg, doc.dump(2) + "\n", out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- strategies

int cmd_strategies_impl(const Config &cfg, std::ostream &out) {
    cfg.require_known(keys_with({"R_grid", "search_trials", "ancilla_dim", "refine_steps"}));
    Context ctx(cfg, "csv");
    auto r_grid = cfg.get_double_list("R_grid", {cfg.get_double("R", 0.3)});
    if (r_grid.empty()) {
        throw ParameterError("empty grid");
    }
    int search_trials = static_cast<int>(cfg.get_int("search_trials", 4));
    if (search_trials < 0) {
        throw ParameterError("search_trials must be >= 0");
    }
    int ancilla_dim = static_cast<int>(cfg.get_int("ancilla_dim", 1));
    strategies::SearchOptions search;
    search.refine_steps = static_cast<int>(cfg.get_int("refine_steps", search.refine_steps));
    search.threads = ctx.threads;
    if (search.refine_steps < 0) {
        throw ParameterError("refine_steps must be >= 0");
    }

    std::ostringstream csv;
    csv << csv_row({"config_hash", "seed", "strategy", "R", "bit", "detection_prob"});
    json per_r = json::array();
    Rng rng(ctx.seed);
    for (double R : r_grid) {
        optics::BeamSplitterParams bs(R, symmetry(cfg));
        std::vector<strategies::ResendStrategy> list = strategies::closed_form_family();
        list.push_back(strategies::SingleChannel{strategies::RailPolicy::AlwaysX});
        list.push_back(strategies::SingleChannel{strategies::RailPolicy::AlwaysY});
        json entry = {{"R", R}};
        json table = json::array();
        auto add = [&](const strategies::ResendStrategy &s, const std::string &name) {
            for (int bit = 0; bit < 2; bit++) {
                double p = strategies::detection_prob(s, bit, bs);
                csv << csv_row({ctx.hash, std::to_string(ctx.seed), name, fd(R), std::to_string(bit), fd(p)});
                table.push_back({{"strategy", name}, {"bit", bit}, {"detection_prob", p}});
            }
        };
        for (const auto &s : list) {
            add(s, strategies::strategy_name(s));
        }
        auto family = strategies::closed_form_family();
        entry["epsilon_closed_form"] = strategies::epsilon_lower_bound(family, bs);
        if (search_trials > 0) {
            auto result = strategies::search_epsilon(ancilla_dim, search_trials, rng, bs, search);
            add(result.best_causal, "GeneralCausalSearch(D=" + std::to_string(ancilla_dim) + ")");
            entry["search"] = {{"ancilla_dim", ancilla_dim},
                               {"trials", search_trials},
                               {"refine_steps", search.refine_steps},
                               {"best_causal_prob", result.best_causal_prob},
                               {"best_overall", strategies::strategy_name(result.best)},
                               {"best_overall_prob", result.best_prob},
                               {"decodes_with_certainty", strategies::decodes_with_certainty(result.best_causal, bs)},
                               {"note", "upper bound on the family minimum, not an exact value"}};
        }
        entry["table"] = table;
        per_r.push_back(entry);
    }
    if (ctx.format == "csv") {
        emit(cfg, csv.str(), out);
    } else {
        json doc = {{"config_hash", ctx.hash}, {"seed", ctx.seed}, {"results", per_r}};
        emit(cfg, doc.dump(2) + "\n", out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- nogo

int cmd_nogo_impl(const Config &cfg, std::ostream &out) {
    cfg.require_known(keys_with({"modes", "known_positions", "known_values"}));
    Context ctx(cfg, "json");
    auto code = select_code(cfg, "repetition3");
    auto r = select_r(cfg, code, ctx.seed);
    int64_t trials = ctx.trials(100);
    optics::BeamSplitterParams bs(cfg.get_double("R", 0.3), symmetry(cfg));

    auto rho0 = nogo::rho_alpha(code, r, 0);
    auto rho1 = nogo::rho_alpha(code, r, 1);
    json overlaps = {{"alpha", nogo::overlap(rho0, rho1)},
                     {"purity_b0", rho0.purity()},
                     {"purity_b1", rho1.purity()}};
    if (code.k() <= 12) {
        overlaps["alpha_physical"] = nogo::physical_overlap(rho0, rho1, bs);
    }

    std::string mode_text = cfg.get_string("modes", "");
    if (mode_text.empty()) {
        mode_text = "I" + std::string(std::max(0, code.n() - 1), 'B');
    }
    if (static_cast<int>(mode_text.size()) != code.n()) {
        throw ParameterError("modes needs one letter (B or I) per photon");
    }
    std::vector<nogo::UbMode> modes;
    for (char ch : mode_text) {
        if (ch == 'B') {
            modes.push_back(nogo::UbMode::Bypass);
        } else if (ch == 'I') {
            modes.push_back(nogo::UbMode::Intercept);
        } else {
            throw ParameterError("modes may only contain B and I");
        }
    }

    std::vector<double> pos_d = cfg.get_double_list("known_positions", {});
    std::vector<double> val_d = cfg.get_double_list("known_values", {});
    if (pos_d.size() != val_d.size()) {
        throw ParameterError("known_positions and known_values must have equal length");
    }
    std::vector<int> positions;
    std::vector<int> values;
    for (size_t i = 0; i < pos_d.size(); i++) {
        positions.push_back(static_cast<int>(pos_d[i]));
        values.push_back(static_cast<int>(val_d[i]));
    }
    auto posterior = nogo::bob_bit_posterior(code, r, positions, values);
    auto prior = nogo::bob_bit_posterior(code, r, {}, {});

    nogo::CompositeSystem system(code.n());
    Rng rng(ctx.seed);
    auto inv = nogo::alice_local_invariance(system, modes, code, r, static_cast<int>(trials), rng);
    overlaps["bob_reduced"] = inv.overlap_before;

    json doc = {{"config_hash", ctx.hash},
                {"seed", ctx.seed},
                {"code", code_json(code)},
                {"r", r.to_string()},
                {"modes", mode_text},
                {"legitimate_ub", nogo::is_legitimate_ub(modes, code)},
                {"trials", trials},
                {"max_deviation", inv.max_deviation},
                {"max_overlap_deviation", inv.max_overlap_deviation},
                {"record_trace_distance", inv.record_distance},
                {"overlaps", overlaps},
                {"posteriors",
                 {{"prior", {prior.p0, prior.p1}},
                  {"known", {posterior.p0, posterior.p1}},
                  {"impossible_observation", posterior.impossible}}}};
    if (ctx.format == "json") {
        emit(cfg, doc.dump(2) + "\n", out);
    } else {
        std::ostringstream csv;
        csv << csv_row({"config_hash", "seed", "key", "value"});
        for (const auto &key : {"max_deviation", "max_overlap_deviation", "record_trace_distance"}) {
            csv << csv_row({ctx.hash, std::to_string(ctx.seed), key, fd(doc[key].get<double>())});
        }
        for (const auto &[key, value] : overlaps.items()) {
            csv << csv_row({ctx.hash, std::to_string(ctx.seed), "overlap_" + key, fd(value.get<double>())});
        }
        csv << csv_row({ctx.hash, std::to_string(ctx.seed), "posterior_p0", fd(posterior.p0)});
        csv << csv_row({ctx.hash, std::to_string(ctx.seed), "posterior_p1", fd(posterior.p1)});
        emit(cfg, csv.str(), out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- counterfactual

int cmd_counterfactual_impl(const Config &cfg, std::ostream &out) {
    cfg.require_known(keys_with({"M", "M_grid", "defense", "theta_points"}));
    Context ctx(cfg, "json");
    if (ctx.format == "csv") {
        auto m_grid = cfg.get_double_list("M_grid", {1, 5, 25, 100, 200});
        int points = static_cast<int>(cfg.get_int("theta_points", 8));
        if (m_grid.empty() || points < 1) {
            throw ParameterError("empty grid");
        }
        std::ostringstream csv;
        csv << csv_row({"config_hash", "seed", "M", "theta", "dc_open", "dd_open", "dd_blocked", "absorbed_blocked"});
        for (double m : m_grid) {
            int cycles = static_cast<int>(m);
            if (cycles != m) {
                throw ParameterError("M values must be integers");
            }
            for (int k = 0; k < points; k++) {
                double theta = 2.0 * std::numbers::pi * k / points;
                fbs::FbsConfig c{cycles, theta};
                auto open = fbs::fbs_run(c, false);
                auto blocked = fbs::fbs_run(c, true);
                csv << csv_row({ctx.hash, std::to_string(ctx.seed), std::to_string(cycles), fd(theta), fd(open.dc),
                                fd(open.dd), fd(blocked.dd), fd(blocked.absorbed)});
            }
        }
        emit(cfg, csv.str(), out);
        return kExitOk;
    }

    auto code = select_code(cfg, "ext_hamming8");
    auto r = select_r(cfg, code, ctx.seed);
    Config pc = cfg;
    if (!pc.has("f")) {
        pc.set("f", "0.25");
    }
    pc.erase("defense");
    auto params = make_params(Context(pc, "json"), code, r);
    int64_t trials = ctx.trials(2000);
    fbs::FbsConfig fbs_cfg{static_cast<int>(cfg.get_int("M", 200)), 0.0};
    std::string defense = cfg.get_string("defense", "both");
    std::vector<bool> settings;
    if (defense == "off") {
        settings = {false};
    } else if (defense == "on") {
        settings = {true};
    } else if (defense == "both") {
        settings = {false, true};
    } else {
        throw ParameterError("defense must be off, on or both");
    }
    json reports = json::array();
    uint64_t index = 0;
    for (bool on : settings) {
        Rng rng = trial_rng(ctx.seed, index++);
        auto rep = counterfactual::attack_session(params, on, fbs_cfg, trials, rng, ctx.threads);
        reports.push_back({{"M", rep.cycles},
                           {"defense_on", rep.defense_on},
                           {"mode_accuracy", rep.mode_accuracy.rate()},
                           {"cheat_success_rate", rep.cheat_success.rate()},
                           {"mean_Dc_bypass", rep.mean_dc_bypass},
                           {"bypass_detected", proportion_json(rep.bypass_detected)},
                           {"cheat_success", proportion_json(rep.cheat_success)},
                           {"mean_labeled_bypass", rep.mean_labeled_bypass},
                           {"half_distance", rep.half_distance}});
    }
    json doc = {{"config_hash", ctx.hash}, {"seed", ctx.seed},     {"code", code_json(code)},
                {"r", r.to_string()},      {"f", params.f},        {"trials", trials},
                {"reports", reports}};
    emit(cfg, doc.dump(2) + "\n", out);
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify_impl(const Config &cfg, std::ostream &out, std::ostream &err) {
    cfg.require_known(keys_with({"tol_exact", "tol_orthogonality", "tol_invariance", "tol_fbs_loss", "sigma",
                                 "posterior_positions", "perturb_bs"}));
    Context ctx(cfg, "csv");
    const double tol_exact = cfg.get_double("tol_exact", 1e-12);
    const double tol_orth = cfg.get_double("tol_orthogonality", 1e-12);
    const double tol_inv = cfg.get_double("tol_invariance", 1e-9);
    const double tol_loss = cfg.get_double("tol_fbs_loss", 0.05);
    const double sigma = cfg.get_double("sigma", 3.0);
    const int64_t positions = cfg.get_int("posterior_positions", 100000);
    const bool perturb = cfg.get_bool("perturb_bs", false);
    for (double t : {tol_exact, tol_orth, tol_inv, tol_loss, sigma}) {
        if (!(t >= 0.0)) {
            throw ParameterError("tolerances must be >= 0");
        }
    }
    if (positions < 1) {
        throw ParameterError("posterior_positions must be >= 1");
    }

    std::ostringstream text;
    for (const char *key :
         {"tol_exact", "tol_orthogonality", "tol_invariance", "tol_fbs_loss", "sigma", "posterior_positions"}) {
        if (cfg.has(key)) {
            text << "override " << key << " = " << cfg.get_string(key, "") << "\n";
        }
    }
    if (perturb) {
        text << "override perturb_bs = true (receiver beam splitter reflection phase set to +i)\n";
    }

    std::vector<Check> checks;
    auto sci = [](double v) {
        std::ostringstream s;
        s.precision(3);
        s << std::scientific << v;
        return s.str();
    };

    {
        double worst = 0.0;
        for (int step = 1; step <= 9; step++) {
            double R = step / 10.0;
            optics::BeamSplitterParams bs(R, optics::Symmetry::AllowSymmetric);
            optics::BeamSplitterParams receiver = perturb ? bs.with_reflection_phase({0.0, 1.0}) : bs;
            for (int bit = 0; bit < 2; bit++) {
                auto dist = optics::detection_distribution(optics::encode(bit, bs), receiver);
                optics::DetectionDistribution ideal;
                ideal.add_click(bit, optics::kHonestBin, 1.0);
                worst = std::max(worst, dist.max_abs_diff(ideal));
            }
        }
        checks.push_back({"mz_determinism", worst <= tol_exact, "max deviation " + sci(worst) + " <= " + sci(tol_exact)});
    }
    {
        double worst = 0.0;
        Rng rng = trial_rng(ctx.seed, 1);
        optics::BeamSplitterParams bs(0.3);
        for (const auto &name : codes::builtin_code_names()) {
            auto code = codes::builtin_code(name);
            int tried = 0;
            while (tried < 20) {
                auto r = codes::random_nonzero(code.n(), rng);
                auto split = codes::coset_split(code, r);
                if (split.parity0.empty() || split.parity1.empty()) {
                    continue;
                }
                tried++;
                auto rho0 = nogo::rho_alpha(code, r, 0);
                auto rho1 = nogo::rho_alpha(code, r, 1);
                worst = std::max(worst, nogo::overlap(rho0, rho1));
                if (code.k() <= 8) {
                    worst = std::max(worst, nogo::physical_overlap(rho0, rho1, bs));
                }
            }
        }
        checks.push_back({"orthogonality", worst <= tol_orth, "max overlap " + sci(worst) + " <= " + sci(tol_orth)});
    }
    {
        double worst = 0.0;
        Rng rng = trial_rng(ctx.seed, 2);
        for (int n = 1; n <= 3; n++) {
            nogo::CompositeSystem system(n);
            auto code = codes::repetition_code(n);
            codes::BitString r(n);
            r.set(0, 1);
            std::vector<nogo::UbMode> modes;
            for (int i = 0; i < n; i++) {
                modes.push_back(i % 2 == 0 ? nogo::UbMode::Intercept : nogo::UbMode::Bypass);
            }
            auto rep = nogo::alice_local_invariance(system, modes, code, r, 100, rng);
            worst = std::max({worst, rep.max_deviation, rep.max_overlap_deviation});
        }
        checks.push_back({"beta_local_invariance", worst <= tol_inv, "max deviation " + sci(worst) + " <= " + sci(tol_inv)});
    }
    {
        double worst_exact = 0.0;
        bool monotone = true;
        double prev_loss = 2.0;
        double loss100 = 0.0;
        for (int m : {1, 2, 4, 5, 8, 16, 25, 32, 64, 100, 128, 200, 256}) {
            auto blocked = fbs::fbs_run({m, 0.0}, true);
            auto open = fbs::fbs_run({m, 0.0}, false);
            worst_exact = std::max({worst_exact, std::abs(blocked.dd - fbs::blocked_pass_probability(m)),
                                    std::abs(open.dc - 1.0),
                                    std::abs(blocked.dc + blocked.dd + blocked.absorbed - 1.0)});
            if (m == 100) {
                loss100 = 1.0 - blocked.dd;
            }
        }
        for (int m = 1; m <= 256; m *= 2) {
            double loss = 1.0 - fbs::fbs_run({m, 0.0}, true).dd;
            monotone = monotone && loss <= prev_loss;
            prev_loss = loss;
        }
        bool pass = worst_exact <= tol_exact && monotone && loss100 <= tol_loss;
        checks.push_back({"fbs_convergence", pass,
                          "closed-form deviation " + sci(worst_exact) + ", loss at M=100 " + sci(loss100) +
                              " <= " + sci(tol_loss) + (monotone ? ", monotone" : ", NOT monotone")});
    }
    {
        auto code = codes::extended_hamming_8_4();
        auto params = protocol::ProtocolParams::make(code, codes::BitString::from_string("10000000"), 0.3, 0.5, 0.5,
                                                     ctx.seed);
        Rng rng = trial_rng(ctx.seed, 3);
        protocol::ExperimentOptions options;
        options.threads = ctx.threads;
        auto rep = protocol::run_posterior_experiment(params, positions, rng, options);
        bool pass = rep.intercepted_given_clean.within(rep.predicted, sigma);
        checks.push_back({"intercept_posterior", pass,
                          "empirical " + fd(rep.intercepted_given_clean.rate()) + " vs " + fd(rep.predicted) +
                              " within " + fd(sigma) + " sigma over " +
                              std::to_string(rep.intercepted_given_clean.trials) + " clean positions"});
    }
    {
        double worst = 0.0;
        optics::BeamSplitterParams bs(0.3);
        for (int k = 0; k < 100; k++) {
            double theta = 2.0 * std::numbers::pi * k / 100.0;
            for (int bit = 0; bit < 2; bit++) {
                auto honest = optics::detection_distribution(optics::encode(bit, bs), bs);
                worst = std::max(worst,
                                 counterfactual::defense_honest_invariance(bit, theta, bs).max_abs_diff(honest));
            }
        }
        checks.push_back({"global_phase_defense", worst <= tol_exact, "max deviation " + sci(worst) + " <= " + sci(tol_exact)});
    }

    std::vector<std::string> failed;
    for (const auto &c : checks) {
        text << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        if (!c.pass) {
            failed.push_back(c.name);
        }
    }
    out << text.str();
    if (cfg.has("out")) {
        if (ctx.format == "json") {
            json arr = json::array();
            for (const auto &c : checks) {
                arr.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            }
            json doc = {{"config_hash", ctx.hash}, {"seed", ctx.seed}, {"checks", arr}};
            emit(cfg, doc.dump(2) + "\n", out);
        } else {
            std::ostringstream csv;
            csv << csv_row({"config_hash", "seed", "check", "result", "detail"});
            for (const auto &c : checks) {
                csv << csv_row({ctx.hash, std::to_string(ctx.seed), c.name, c.pass ? "PASS" : "FAIL",
                                "\"" + c.detail + "\""});
            }
            emit(cfg, csv.str(), out);
        }
    }
    if (!failed.empty()) {
        err << "verify failed:";
        for (const auto &name : failed) {
            err << " " << name;
        }
        err << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace

int cmd_run(const Config &config, std::ostream &out) {
    return cmd_run_impl(config, out);
}
int cmd_sweep(const Config &config, std::ostream &out) {
    return cmd_sweep_impl(config, out);
}
int cmd_strategies(const Config &config, std::ostream &out) {
    return cmd_strategies_impl(config, out);
}
int cmd_nogo(const Config &config, std::ostream &out) {
    return cmd_nogo_impl(config, out);
}
int cmd_counterfactual(const Config &config, std::ostream &out) {
    return cmd_counterfactual_impl(config, out);
}
int cmd_verify(const Config &config, std::ostream &out, std::ostream &err) {
    return cmd_verify_impl(config, out, err);
}

std::vector<std::string> command_names() {
    return {"run", "sweep", "strategies", "nogo", "counterfactual", "verify"};
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulator for a single-photon bit commitment protocol"};
    app.require_subcommand(1);
    std::string config_path;
    std::optional<int64_t> seed;
    std::optional<int64_t> trials;
    std::optional<int64_t> threads;
    std::string out_path;
    std::string format;
    app.add_option("--config", config_path, "key = value settings file");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--trials", trials, "Monte Carlo trials");
    app.add_option("--threads", threads, "worker threads");
    app.fallthrough();
    for (const auto &name : command_names()) {
        app.add_subcommand(name);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        Config cfg = config_path.empty() ? Config() : Config::load(config_path);
        if (seed) {
            cfg.set("seed", std::to_string(*seed));
        }
        if (trials) {
            cfg.set("trials", std::to_string(*trials));
        }
        if (threads) {
            cfg.set("threads", std::to_string(*threads));
        }
        if (!out_path.empty()) {
            cfg.set("out", out_path);
        }
        if (!format.empty()) {
            cfg.set("format", format);
        }
        std::string command = app.get_subcommands().front()->get_name();
        if (command == "run") {
            return cmd_run(cfg, out);
        }
        if (command == "sweep") {
            return cmd_sweep(cfg, out);
        }
        if (command == "strategies") {
            return cmd_strategies(cfg, out);
        }
        if (command == "nogo") {
            return cmd_nogo(cfg, out);
        }
        if (command == "counterfactual") {
            return cmd_counterfactual(cfg, out);
        }
        return cmd_verify(cfg, out, err);
    } catch (const ParameterError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const GuardError &e) {
        err << "guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace mzqbc::cli
