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

#ifndef MZQBC_OPTICS_H
#define MZQBC_OPTICS_H

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mzqbc/rng.h"

/// Single-photon, time-binned dual-rail optics.
///
/// A photon lives on two rails (channels X and Y) and a small set of time bins
/// measured in units of the storage-ring delay. Bin 0 is the nominal send time
/// of the photon's X packet. Loss of the photon (blocking, absorption, never
/// being re-emitted) is tracked as a scalar probability mass, so states stay
/// in the single-excitation subspace.
namespace mzqbc::optics {

using Complex = std::complex<double>;

enum class Rail : uint8_t { X = 0, Y = 1 };

constexpr int kMaxBin = 4;
constexpr int kNumBins = kMaxBin + 1;
/// Bin at which Alice's detectors fire when nobody interferes.
constexpr int kHonestBin = 1;

struct Mode {
    Rail rail;
    int bin;

    bool operator==(const Mode &other) const = default;
};

std::string rail_name(Rail rail);

enum class Symmetry { RequireAsymmetric, AllowSymmetric };

/// Reflectivity/transmissivity pair of the interferometer's beam splitters.
///
/// The transmitted amplitude is sqrt(T) and the reflected amplitude is
/// reflection_phase * sqrt(R) with reflection_phase = -i. The phase is only
/// ever changed by negative-control checks.
class BeamSplitterParams {
   public:
    explicit BeamSplitterParams(double reflectivity, Symmetry symmetry = Symmetry::RequireAsymmetric);

    double reflectivity() const {
        return reflectivity_;
    }
    double transmissivity() const {
        return 1.0 - reflectivity_;
    }
    bool is_symmetric() const;
    Complex reflection_phase() const {
        return reflection_phase_;
    }
    BeamSplitterParams with_reflection_phase(Complex phase) const;

    /// 2x2 transfer matrix indexed [out][in] with rails ordered (X, Y).
    std::array<std::array<Complex, 2>, 2> matrix() const;

   private:
    double reflectivity_;
    Complex reflection_phase_{0.0, -1.0};
};

/// Sub-normalized amplitude vector over (rail, bin) modes plus absorbed mass.
class PhotonState {
   public:
    /// The vacuum: no amplitude anywhere, absorbed mass 1.
    PhotonState();

    /// Builds a state from explicit amplitudes. Throws ParameterError if the
    /// total probability differs from 1 by more than 1e-12.
    PhotonState(std::initializer_list<std::pair<Mode, Complex>> amplitudes, double absorbed = 0.0);

    static PhotonState vacuum() {
        return PhotonState();
    }
    static PhotonState single(Mode mode, Complex amplitude = 1.0);

    Complex amp(Mode mode) const;
    Complex amp(Rail rail, int bin) const {
        return amp(Mode{rail, bin});
    }
    double absorbed() const {
        return absorbed_;
    }
    /// Sum of |amplitude|^2 over all modes.
    double norm2() const;
    /// norm2() + absorbed(); 1 for every valid state.
    double total_probability() const {
        return norm2() + absorbed_;
    }
    /// Modes carrying nonzero amplitude, in (rail, bin) order.
    std::vector<Mode> support() const;

    // Raw mutation used by the operations in this module. Keeps the invariant
    // only when callers do.
    void set_amp(Mode mode, Complex value);
    void set_absorbed(double absorbed) {
        absorbed_ = absorbed;
    }

    bool operator==(const PhotonState &other) const = default;

   private:
    static size_t index(Mode mode);
    std::array<Complex, 2 * kNumBins> amps_{};
    double absorbed_ = 0.0;
};

/// <a|b> over the mode amplitudes (absorbed mass does not contribute).
Complex inner_product(const PhotonState &a, const PhotonState &b);

/// Mixes (X,bin) and (Y,bin) through the beam splitter:
///   out_X = sqrt(T) in_X + phase sqrt(R) in_Y
///   out_Y = sqrt(T) in_Y + phase sqrt(R) in_X
PhotonState bs_apply(const PhotonState &state, int bin, const BeamSplitterParams &params);

/// Multiplies every amplitude on `rail` by exp(i theta).
PhotonState phase_apply(const PhotonState &state, Rail rail, double theta);

/// Shifts every amplitude on `rail` later by `bins` time bins. Throws
/// GuardError if nonzero amplitude would leave the tracked window.
PhotonState delay_apply(const PhotonState &state, Rail rail, int bins);

/// Alice's sender: a photon from source S_bit through BS1, then SR1 on Y.
///   bit 0: amp(X,0) = -i sqrt(R), amp(Y,1) = sqrt(T)
///   bit 1: amp(X,0) = sqrt(T),    amp(Y,1) = -i sqrt(R)
PhotonState encode(int bit, const BeamSplitterParams &params);

struct DetectionEvent {
    enum class Kind : uint8_t { ClickD0, ClickD1, NoClick };
    Kind kind = Kind::NoClick;
    int bin = 0;

    static DetectionEvent click(int detector, int bin);
    static DetectionEvent none() {
        return DetectionEvent{};
    }
    bool is_click() const {
        return kind != Kind::NoClick;
    }
    /// 0 or 1 for clicks, -1 for NoClick.
    int detector() const;
    std::string to_string() const;

    bool operator==(const DetectionEvent &other) const {
        return kind == other.kind && (kind == Kind::NoClick || bin == other.bin);
    }
};

/// Exact probability of every detection event for one photon.
class DetectionDistribution {
   public:
    double click(int detector, int bin) const;
    double no_click() const {
        return no_click_;
    }
    double probability(const DetectionEvent &event) const;
    double total() const;
    /// Events with nonzero probability in canonical order (D0 bins, D1 bins,
    /// NoClick) together with their probabilities.
    std::vector<std::pair<DetectionEvent, double>> entries() const;
    /// Largest absolute probability difference over all events.
    double max_abs_diff(const DetectionDistribution &other) const;

    void add_click(int detector, int bin, double p);
    void add_no_click(double p) {
        no_click_ += p;
    }
    /// Adds weight * other, for mixtures.
    void accumulate(const DetectionDistribution &other, double weight);

   private:
    std::array<std::array<double, kNumBins>, 2> clicks_{};
    double no_click_ = 0.0;
};

/// Alice's receiver: SR2 delays X by one bin, a pi phase shift on Y, BS2 on
/// every bin, then time-resolving detectors. D0 sits on BS2's Y output port
/// and D1 on its X output port, which is the assignment under which encode(b)
/// always fires D_b.
DetectionDistribution detection_distribution(const PhotonState &state, const BeamSplitterParams &params);

/// Draws one event from detection_distribution(state, params).
DetectionEvent sample_detection(const PhotonState &state, const BeamSplitterParams &params, Rng &rng);
DetectionEvent sample_event(const DetectionDistribution &dist, Rng &rng);

/// Whether Alice's check flags `event` for a photon she sent encoding `bit`:
/// anything other than D_bit firing in the honest bin.
bool is_mismatch(const DetectionEvent &event, int bit);

/// Probability that Alice's check flags a photon with this distribution.
double mismatch_probability(const DetectionDistribution &dist, int bit);

}  // namespace mzqbc::optics

#endif
