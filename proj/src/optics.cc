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

#include "mzqbc/optics.h"

#include <cmath>
#include <sstream>

#include "mzqbc/error.h"

namespace mzqbc::optics {

namespace {

constexpr double kConstructionTolerance = 1e-12;

void check_bin(int bin) {
    if (bin < 0 || bin > kMaxBin) {
        throw GuardError("time bin " + std::to_string(bin) + " outside tracked window [0, " +
                         std::to_string(kMaxBin) + "]");
    }
}

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw ParameterError("bit must be 0 or 1, got " + std::to_string(bit));
    }
}

}  // namespace

std::string rail_name(Rail rail) {
    return rail == Rail::X ? "X" : "Y";
}

BeamSplitterParams::BeamSplitterParams(double reflectivity, Symmetry symmetry) : reflectivity_(reflectivity) {
    if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
        throw ParameterError("reflectivity must lie in (0, 1)");
    }
    if (symmetry == Symmetry::RequireAsymmetric && is_symmetric()) {
        throw ParameterError("asymmetric configuration requires R != T");
    }
}

bool BeamSplitterParams::is_symmetric() const {
    return std::abs(reflectivity_ - transmissivity()) < 1e-12;
}

BeamSplitterParams BeamSplitterParams::with_reflection_phase(Complex phase) const {
    BeamSplitterParams out = *this;
    out.reflection_phase_ = phase;
    return out;
}

std::array<std::array<Complex, 2>, 2> BeamSplitterParams::matrix() const {
    Complex t = std::sqrt(transmissivity());
    Complex r = reflection_phase_ * std::sqrt(reflectivity_);
    return {{{t, r}, {r, t}}};
}

PhotonState::PhotonState() : absorbed_(1.0) {
}

PhotonState::PhotonState(std::initializer_list<std::pair<Mode, Complex>> amplitudes, double absorbed)
    : absorbed_(absorbed) {
    if (absorbed < 0.0 || absorbed > 1.0) {
        throw ParameterError("absorbed mass must lie in [0, 1]");
    }
    for (const auto &[mode, value] : amplitudes) {
        check_bin(mode.bin);
        amps_[index(mode)] += value;
    }
    if (std::abs(total_probability() - 1.0) > kConstructionTolerance) {
        throw ParameterError("photon state is not normalized");
    }
}

PhotonState PhotonState::single(Mode mode, Complex amplitude) {
    return PhotonState({{mode, amplitude}}, 1.0 - std::norm(amplitude));
}

size_t PhotonState::index(Mode mode) {
    return static_cast<size_t>(mode.rail) * kNumBins + static_cast<size_t>(mode.bin);
}

Complex PhotonState::amp(Mode mode) const {
    check_bin(mode.bin);
    return amps_[index(mode)];
}

void PhotonState::set_amp(Mode mode, Complex value) {
    check_bin(mode.bin);
    amps_[index(mode)] = value;
}

double PhotonState::norm2() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<Mode> PhotonState::support() const {
    std::vector<Mode> out;
    for (Rail rail : {Rail::X, Rail::Y}) {
        for (int bin = 0; bin < kNumBins; bin++) {
            if (amps_[index({rail, bin})] != Complex{}) {
                out.push_back({rail, bin});
            }
        }
    }
    return out;
}

Complex inner_product(const PhotonState &a, const PhotonState &b) {
    Complex total{};
    for (Rail rail : {Rail::X, Rail::Y}) {
        for (int bin = 0; bin < kNumBins; bin++) {
            total += std::conj(a.amp(rail, bin)) * b.amp(rail, bin);
        }
    }
    return total;
}

PhotonState bs_apply(const PhotonState &state, int bin, const BeamSplitterParams &params) {
    check_bin(bin);
    auto m = params.matrix();
    Complex in_x = state.amp(Rail::X, bin);
    Complex in_y = state.amp(Rail::Y, bin);
    PhotonState out = state;
    out.set_amp({Rail::X, bin}, m[0][0] * in_x + m[0][1] * in_y);
    out.set_amp({Rail::Y, bin}, m[1][0] * in_x + m[1][1] * in_y);
    return out;
}

PhotonState phase_apply(const PhotonState &state, Rail rail, double theta) {
    if (theta == 0.0) {
        return state;
    }
    Complex factor = std::polar(1.0, theta);
    PhotonState out = state;
    for (int bin = 0; bin < kNumBins; bin++) {
        out.set_amp({rail, bin}, state.amp(rail, bin) * factor);
    }
    return out;
}

PhotonState delay_apply(const PhotonState &state, Rail rail, int bins) {
    if (bins < 0) {
        throw ParameterError("delay must be non-negative");
    }
    PhotonState out = state;
    for (int bin = 0; bin < kNumBins; bin++) {
        out.set_amp({rail, bin}, 0.0);
    }
    for (int bin = 0; bin < kNumBins; bin++) {
        Complex a = state.amp(rail, bin);
        if (a == Complex{}) {
            continue;
        }
        if (bin + bins > kMaxBin) {
            throw GuardError("delay pushes amplitude past the last tracked bin");
        }
        out.set_amp({rail, bin + bins}, a);
    }
    return out;
}

PhotonState encode(int bit, const BeamSplitterParams &params) {
    check_bit(bit);
    // Source S_0 feeds BS1's Y input, source S_1 its X input.
    Rail source_rail = bit == 0 ? Rail::Y : Rail::X;
    PhotonState state = bs_apply(PhotonState::single({source_rail, 0}), 0, params);
    return delay_apply(state, Rail::Y, 1);
}

DetectionEvent DetectionEvent::click(int detector, int bin) {
    check_bit(detector);
    check_bin(bin);
    return DetectionEvent{detector == 0 ? Kind::ClickD0 : Kind::ClickD1, bin};
}

int DetectionEvent::detector() const {
    switch (kind) {
        case Kind::ClickD0:
            return 0;
        case Kind::ClickD1:
            return 1;
        default:
            return -1;
    }
}

std::string DetectionEvent::to_string() const {
    if (kind == Kind::NoClick) {
        return "NoClick";
    }
    std::ostringstream out;
    out << "ClickD" << detector() << "(" << bin << ")";
    return out.str();
}

double DetectionDistribution::click(int detector, int bin) const {
    check_bit(detector);
    check_bin(bin);
    return clicks_[detector][bin];
}

double DetectionDistribution::probability(const DetectionEvent &event) const {
    if (!event.is_click()) {
        return no_click_;
    }
    return click(event.detector(), event.bin);
}

double DetectionDistribution::total() const {
    double t = no_click_;
    for (const auto &row : clicks_) {
        for (double p : row) {
            t += p;
        }
    }
    return t;
}

std::vector<std::pair<DetectionEvent, double>> DetectionDistribution::entries() const {
    std::vector<std::pair<DetectionEvent, double>> out;
    for (int d = 0; d < 2; d++) {
        for (int bin = 0; bin < kNumBins; bin++) {
            if (clicks_[d][bin] > 0) {
                out.emplace_back(DetectionEvent::click(d, bin), clicks_[d][bin]);
            }
        }
    }
    if (no_click_ > 0) {
        out.emplace_back(DetectionEvent::none(), no_click_);
    }
    return out;
}

double DetectionDistribution::max_abs_diff(const DetectionDistribution &other) const {
    double worst = std::abs(no_click_ - other.no_click_);
    for (int d = 0; d < 2; d++) {
        for (int bin = 0; bin < kNumBins; bin++) {
            worst = std::max(worst, std::abs(clicks_[d][bin] - other.clicks_[d][bin]));
        }
    }
    return worst;
}

void DetectionDistribution::add_click(int detector, int bin, double p) {
    check_bit(detector);
    check_bin(bin);
    clicks_[detector][bin] += p;
}

void DetectionDistribution::accumulate(const DetectionDistribution &other, double weight) {
    for (int d = 0; d < 2; d++) {
        for (int bin = 0; bin < kNumBins; bin++) {
            clicks_[d][bin] += weight * other.clicks_[d][bin];
        }
    }
    no_click_ += weight * other.no_click_;
}

DetectionDistribution detection_distribution(const PhotonState &state, const BeamSplitterParams &params) {
    PhotonState s = delay_apply(state, Rail::X, 1);
    s = phase_apply(s, Rail::Y, M_PI);
    DetectionDistribution dist;
    for (int bin = 0; bin < kNumBins; bin++) {
        s = bs_apply(s, bin, params);
        double p0 = std::norm(s.amp(Rail::Y, bin));
        double p1 = std::norm(s.amp(Rail::X, bin));
        if (p0 > 0) {
            dist.add_click(0, bin, p0);
        }
        if (p1 > 0) {
            dist.add_click(1, bin, p1);
        }
    }
    dist.add_no_click(state.absorbed());
    return dist;
}

DetectionEvent sample_event(const DetectionDistribution &dist, Rng &rng) {
    double u = uniform01(rng) * dist.total();
    auto entries = dist.entries();
    for (const auto &[event, p] : entries) {
        if (u < p) {
            return event;
        }
        u -= p;
    }
    // Only reachable through rounding at the top end of the interval.
    return entries.empty() ? DetectionEvent::none() : entries.back().first;
}

DetectionEvent sample_detection(const PhotonState &state, const BeamSplitterParams &params, Rng &rng) {
    return sample_event(detection_distribution(state, params), rng);
}

bool is_mismatch(const DetectionEvent &event, int bit) {
    check_bit(bit);
    return !(event.is_click() && event.detector() == bit && event.bin == kHonestBin);
}

double mismatch_probability(const DetectionDistribution &dist, int bit) {
    check_bit(bit);
    return std::max(0.0, dist.total() - dist.click(bit, kHonestBin));
}

}  // namespace mzqbc::optics
