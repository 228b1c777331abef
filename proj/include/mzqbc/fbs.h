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

#ifndef MZQBC_FBS_H
#define MZQBC_FBS_H

#include <complex>

namespace mzqbc::fbs {

using Complex = std::complex<double>;

/// Probe photon amplitudes on the two arms of the chained beam splitter.
struct ProbeState {
    Complex amp_a = 1.0;
    Complex amp_b = 0.0;
    double absorbed = 0.0;

    double total_probability() const {
        return std::norm(amp_a) + std::norm(amp_b) + absorbed;
    }
};

/// A chain of `cycles` weak beam splitters; arm b picks up
/// `theta_per_cycle` per pass when it is left open.
struct FbsConfig {
    int cycles = 100;
    double theta_per_cycle = 0.0;
};

struct FbsOutcome {
    double dc = 0.0;
    double dd = 0.0;
    double absorbed = 0.0;
};

void validate(const FbsConfig &config);

/// Final probe state after running the chain.
ProbeState fbs_evolve(const FbsConfig &config, bool blocked);

/// Outcome distribution: Dc = |amp_b|^2, Dd = |amp_a|^2.
FbsOutcome fbs_run(const FbsConfig &config, bool blocked);

/// cos^{2M}(pi / 2M): the probability that a blocked chain still ends in Dd.
double blocked_pass_probability(int cycles);

}  // namespace mzqbc::fbs

#endif
