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

#include <cmath>

#include "mzqbc/error.h"
#include "mzqbc/parallel.h"

namespace mzqbc::strategies {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;
using optics::BeamSplitterParams;
using optics::Mode;
using optics::PhotonState;
using optics::Rail;

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr int kOutX = 0;
constexpr int kOutY = 1;
constexpr int kHold = 2;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

struct PathAmplitudes {
    Complex x;
    Complex y;
};

PathAmplitudes path_amplitudes(const PhotonState &incoming) {
    for (const Mode &m : incoming.support()) {
        if (!((m.rail == Rail::X && m.bin == 0) || (m.rail == Rail::Y && m.bin == 1))) {
            throw ParameterError("malformed incoming photon: amplitude outside (X,0) and (Y,1)");
        }
    }
    if (std::abs(incoming.absorbed()) > 1e-12 || std::abs(incoming.norm2() - 1.0) > 1e-9) {
        throw ParameterError("malformed incoming photon: not a normalized single photon");
    }
    return {incoming.amp(Rail::X, 0), incoming.amp(Rail::Y, 1)};
}

PathAmplitudes basis_state(int bit, const BeamSplitterParams &params) {
    PhotonState s = optics::encode(bit, params);
    return {s.amp(Rail::X, 0), s.amp(Rail::Y, 1)};
}

// Born probabilities of Bob's interferometer reading j on the stored photon.
std::array<double, 2> decode_probabilities(const PathAmplitudes &in, const BeamSplitterParams &params) {
    std::array<double, 2> out{};
    for (int j = 0; j < 2; j++) {
        PathAmplitudes basis = basis_state(j, params);
        out[j] = std::norm(std::conj(basis.x) * in.x + std::conj(basis.y) * in.y);
    }
    return out;
}

PhotonState single_rail(Rail rail) {
    return PhotonState::single(rail == Rail::X ? Mode{Rail::X, 0} : Mode{Rail::Y, 1});
}

Rail choose_rail(RailPolicy policy, int bit, const BeamSplitterParams &params) {
    switch (policy) {
        case RailPolicy::AlwaysX:
            return Rail::X;
        case RailPolicy::AlwaysY:
            return Rail::Y;
        case RailPolicy::Optimal:
            break;
    }
    double via_x = optics::mismatch_probability(optics::detection_distribution(single_rail(Rail::X), params), bit);
    double via_y = optics::mismatch_probability(optics::detection_distribution(single_rail(Rail::Y), params), bit);
    return via_x < via_y ? Rail::X : Rail::Y;
}

std::vector<ResendBranch> causal_branches(const GeneralCausal &g, const PathAmplitudes &in,
                                          const BeamSplitterParams &params) {
    int D = g.ancilla_dim();
    Vector psi = Vector::Zero(g.dim());
    psi(GeneralCausal::index(0, 0, kHold, D)) = in.x;
    psi(GeneralCausal::index(1, 0, kHold, D)) = in.y;
    psi = g.u2() * (g.u1() * psi);

    std::vector<ResendBranch> out;
    for (int j = 0; j < 2; j++) {
        PathAmplitudes basis = basis_state(j, params);
        Complex bx = std::conj(basis.x);
        Complex by = std::conj(basis.y);
        for (int a = 0; a < D; a++) {
            std::array<Complex, 3> e;
            for (int k = 0; k < 3; k++) {
                e[k] = bx * psi(GeneralCausal::index(0, a, k, D)) + by * psi(GeneralCausal::index(1, a, k, D));
            }
            double w = std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]);
            if (w <= 1e-300) {
                continue;
            }
            double s = std::sqrt(w);
            double held = std::norm(e[2]) / w;
            // Build directly so tiny rounding in the weights cannot trip the
            // constructor's normalization check.
            PhotonState resent = PhotonState::vacuum();
            resent.set_amp({Rail::X, 0}, e[0] / s);
            resent.set_amp({Rail::Y, 1}, e[1] / s);
            resent.set_absorbed(held);
            out.push_back({j, w, resent});
        }
    }
    return out;
}

}  // namespace

GeneralCausal::GeneralCausal(int ancilla_dim, Matrix u1, Matrix u2)
    : ancilla_dim_(ancilla_dim), u1_(std::move(u1)), u2_(std::move(u2)) {
    if (ancilla_dim < 1 || ancilla_dim > 4) {
        throw ParameterError("ancilla dimension must lie in [1, 4]");
    }
    int n = dim();
    if (u1_.rows() != n || u1_.cols() != n || u2_.rows() != n || u2_.cols() != n) {
        throw ParameterError("coupling matrices must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (linalg::unitarity_defect(u1_) > kUnitaryTolerance || linalg::unitarity_defect(u2_) > kUnitaryTolerance) {
        throw ParameterError("coupling matrices must be unitary");
    }
    for (int row = 0; row < n; row++) {
        for (int col = 0; col < n; col++) {
            int p_row = row / (3 * ancilla_dim);
            int p_col = col / (3 * ancilla_dim);
            if (p_row != p_col && std::abs(u1_(row, col)) > kUnitaryTolerance) {
                throw ParameterError("bin-0 coupling may only depend on the X packet's presence");
            }
            bool x_row = row % 3 == kOutX;
            bool x_col = col % 3 == kOutX;
            if (x_row != x_col && std::abs(u2_(row, col)) > kUnitaryTolerance) {
                throw ParameterError("bin-1 coupling cannot touch the already emitted X packet");
            }
        }
    }
}

GeneralCausal GeneralCausal::identity(int ancilla_dim) {
    int n = 6 * ancilla_dim;
    return GeneralCausal(ancilla_dim, Matrix::Identity(n, n), Matrix::Identity(n, n));
}

GeneralCausal GeneralCausal::full_information(int ancilla_dim, const Vector &preparation, const Matrix &after_bit0,
                                              const Matrix &after_bit1, const BeamSplitterParams &params) {
    int D = ancilla_dim;
    if (D < 1 || D > 4) {
        throw ParameterError("ancilla dimension must lie in [1, 4]");
    }
    if (preparation.size() != 3 * D || after_bit0.rows() != 2 * D || after_bit1.rows() != 2 * D ||
        after_bit0.cols() != 2 * D || after_bit1.cols() != 2 * D) {
        throw ParameterError("full-information strategy blocks have the wrong shape");
    }
    Matrix v = linalg::complete_to_unitary(preparation, kHold);
    Matrix u1 = linalg::kron(Matrix::Identity(2, 2), v);

    int n = 6 * D;
    Matrix u2 = Matrix::Zero(n, n);
    std::array<PathAmplitudes, 2> basis = {basis_state(0, params), basis_state(1, params)};
    const Matrix *after[2] = {&after_bit0, &after_bit1};
    for (int p = 0; p < 2; p++) {
        for (int a = 0; a < D; a++) {
            u2(index(p, a, kOutX, D), index(p, a, kOutX, D)) = 1.0;
        }
    }
    for (int p = 0; p < 2; p++) {
        for (int pc = 0; pc < 2; pc++) {
            for (int j = 0; j < 2; j++) {
                Complex bp = p == 0 ? basis[j].x : basis[j].y;
                Complex bpc = pc == 0 ? basis[j].x : basis[j].y;
                Complex proj = bp * std::conj(bpc);
                for (int a = 0; a < D; a++) {
                    for (int s = 0; s < 2; s++) {
                        for (int ac = 0; ac < D; ac++) {
                            for (int sc = 0; sc < 2; sc++) {
                                u2(index(p, a, s + 1, D), index(pc, ac, sc + 1, D)) +=
                                    proj * (*after[j])(a * 2 + s, ac * 2 + sc);
                            }
                        }
                    }
                }
            }
        }
    }
    return GeneralCausal(D, std::move(u1), std::move(u2));
}

std::string strategy_name(const ResendStrategy &strategy) {
    return std::visit(Overloaded{
                          [](const BlindGuessOnTime &) { return std::string("BlindGuessOnTime"); },
                          [](const FullMeasureLate &) { return std::string("FullMeasureLate"); },
                          [](const SingleChannel &s) {
                              switch (s.policy) {
                                  case RailPolicy::AlwaysX:
                                      return std::string("SingleChannel(X)");
                                  case RailPolicy::AlwaysY:
                                      return std::string("SingleChannel(Y)");
                                  default:
                                      return std::string("SingleChannel");
                              }
                          },
                          [](const GeneralCausal &g) {
                              return "GeneralCausal(D=" + std::to_string(g.ancilla_dim()) + ")";
                          },
                      },
                      strategy);
}

std::vector<ResendBranch> resend_branches(const ResendStrategy &strategy, const PhotonState &incoming,
                                          const BeamSplitterParams &params) {
    PathAmplitudes in = path_amplitudes(incoming);
    if (const auto *g = std::get_if<GeneralCausal>(&strategy)) {
        return causal_branches(*g, in, params);
    }
    auto decode = decode_probabilities(in, params);
    std::vector<ResendBranch> out;
    for (int j = 0; j < 2; j++) {
        if (decode[j] <= 0) {
            continue;
        }
        std::visit(Overloaded{
                       [&](const BlindGuessOnTime &) {
                           for (int guess = 0; guess < 2; guess++) {
                               out.push_back({j, decode[j] / 2, optics::encode(guess, params)});
                           }
                       },
                       [&](const FullMeasureLate &) {
                           PhotonState late = optics::delay_apply(optics::encode(j, params), Rail::X, 1);
                           late = optics::delay_apply(late, Rail::Y, 1);
                           out.push_back({j, decode[j], late});
                       },
                       [&](const SingleChannel &s) {
                           out.push_back({j, decode[j], single_rail(choose_rail(s.policy, j, params))});
                       },
                       [](const GeneralCausal &) {},
                   },
                   strategy);
    }
    return out;
}

InterceptRecord apply_strategy(const ResendStrategy &strategy, const PhotonState &incoming,
                               const BeamSplitterParams &params, Rng &rng) {
    auto branches = resend_branches(strategy, incoming, params);
    double total = 0;
    for (const auto &b : branches) {
        total += b.weight;
    }
    double u = uniform01(rng) * total;
    for (const auto &b : branches) {
        if (u < b.weight) {
            return {b.learned_bit, b.resent};
        }
        u -= b.weight;
    }
    return {branches.back().learned_bit, branches.back().resent};
}

optics::DetectionDistribution resent_distribution(const ResendStrategy &strategy, int bit,
                                                  const BeamSplitterParams &params) {
    optics::DetectionDistribution mix;
    for (const auto &b : resend_branches(strategy, optics::encode(bit, params), params)) {
        mix.accumulate(optics::detection_distribution(b.resent, params), b.weight);
    }
    return mix;
}

double detection_prob(const ResendStrategy &strategy, int bit, const BeamSplitterParams &params) {
    double p = optics::mismatch_probability(resent_distribution(strategy, bit, params), bit);
    return std::clamp(p, 0.0, 1.0);
}

double mean_detection_prob(const ResendStrategy &strategy, const BeamSplitterParams &params) {
    return 0.5 * (detection_prob(strategy, 0, params) + detection_prob(strategy, 1, params));
}

double decode_accuracy(const ResendStrategy &strategy, int bit, const BeamSplitterParams &params) {
    double correct = 0;
    for (const auto &b : resend_branches(strategy, optics::encode(bit, params), params)) {
        if (b.learned_bit == bit) {
            correct += b.weight;
        }
    }
    return correct;
}

bool decodes_with_certainty(const ResendStrategy &strategy, const BeamSplitterParams &params, double tolerance) {
    return decode_accuracy(strategy, 0, params) >= 1.0 - tolerance &&
           decode_accuracy(strategy, 1, params) >= 1.0 - tolerance;
}

double epsilon_lower_bound(std::span<const ResendStrategy> strategies, const BeamSplitterParams &params) {
    if (strategies.empty()) {
        throw ParameterError("strategy set is empty");
    }
    double best = 1.0;
    for (const auto &s : strategies) {
        best = std::min(best, mean_detection_prob(s, params));
    }
    return best;
}

std::vector<ResendStrategy> closed_form_family() {
    return {BlindGuessOnTime{}, FullMeasureLate{}, SingleChannel{RailPolicy::Optimal}};
}

namespace {

struct Candidate {
    Vector preparation;
    Matrix after0;
    Matrix after1;
};

struct TrialOutcome {
    Candidate candidate;
    double value = 1.0;
};

double evaluate(int D, const Candidate &c, const BeamSplitterParams &params) {
    auto g = GeneralCausal::full_information(D, c.preparation, c.after0, c.after1, params);
    return mean_detection_prob(g, params);
}

TrialOutcome run_trial(int D, size_t trial, uint64_t master, const BeamSplitterParams &params,
                       const SearchOptions &options) {
    Rng rng = trial_rng(master, trial);
    Candidate c;
    if (trial == 0) {
        c.preparation = Vector::Zero(3 * D);
        c.preparation(kHold) = 1.0;
        c.after0 = Matrix::Identity(2 * D, 2 * D);
        c.after1 = Matrix::Identity(2 * D, 2 * D);
    } else {
        c.preparation = linalg::random_unit_vector(3 * D, rng);
        c.after0 = linalg::haar_unitary(2 * D, rng);
        c.after1 = linalg::haar_unitary(2 * D, rng);
    }
    double value = evaluate(D, c, params);
    double step = options.initial_step;
    int rejected = 0;
    for (int s = 0; s < options.refine_steps && step > 1e-9; s++) {
        Candidate next = c;
        Vector kick = linalg::random_unit_vector(3 * D, rng);
        next.preparation += step * kick;
        next.preparation /= next.preparation.norm();
        next.after0 = c.after0 * linalg::cayley(linalg::random_hermitian(2 * D, rng), step);
        next.after1 = c.after1 * linalg::cayley(linalg::random_hermitian(2 * D, rng), step);
        double v = evaluate(D, next, params);
        if (v < value) {
            c = std::move(next);
            value = v;
            rejected = 0;
        } else if (++rejected >= 15) {
            step *= 0.5;
            rejected = 0;
        }
    }
    return {std::move(c), value};
}

}  // namespace

SearchResult search_epsilon(int ancilla_dim, int trials, Rng &rng, const BeamSplitterParams &params,
                            const SearchOptions &options) {
    if (ancilla_dim < 1 || ancilla_dim > 4) {
        throw ParameterError("ancilla dimension must lie in [1, 4]");
    }
    if (trials < 1) {
        throw ParameterError("search needs at least one trial");
    }
    uint64_t master = rng();
    auto outcomes = map_trials(static_cast<size_t>(trials), options.threads, [&](size_t t) {
        return run_trial(ancilla_dim, t, master, params, options);
    });

    size_t best_trial = 0;
    SearchResult result;
    for (size_t t = 0; t < outcomes.size(); t++) {
        result.trial_probs.push_back(outcomes[t].value);
        if (outcomes[t].value < outcomes[best_trial].value) {
            best_trial = t;
        }
    }
    const Candidate &c = outcomes[best_trial].candidate;
    result.best_causal = GeneralCausal::full_information(ancilla_dim, c.preparation, c.after0, c.after1, params);
    result.best_causal_prob = outcomes[best_trial].value;
    result.best = result.best_causal;
    result.best_prob = result.best_causal_prob;
    for (const auto &s : closed_form_family()) {
        double p = mean_detection_prob(s, params);
        if (p < result.best_prob) {
            result.best = s;
            result.best_prob = p;
        }
    }
    return result;
}

}  // namespace mzqbc::strategies
