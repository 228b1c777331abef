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

#include "mzqbc/fbs.h"

#include <cmath>
#include <numbers>

#include "mzqbc/error.h"

namespace mzqbc::fbs {

void validate(const FbsConfig &config) {
    if (config.cycles < 1) {
        throw ParameterError("cycles must be >= 1");
    }
    if (!std::isfinite(config.theta_per_cycle)) {
        throw ParameterError("theta_per_cycle must be finite");
    }
}

ProbeState fbs_evolve(const FbsConfig &config, bool blocked) {
    validate(config);
    double eta = std::numbers::pi / (2.0 * config.cycles);
    double c = std::cos(eta);
    double s = std::sin(eta);
    Complex phase = std::polar(1.0, config.theta_per_cycle);
    ProbeState st;
    for (int m = 0; m < config.cycles; m++) {
        Complex a = c * st.amp_a - s * st.amp_b;
        Complex b = s * st.amp_a + c * st.amp_b;
        st.amp_a = a;
        if (blocked) {
            st.absorbed += std::norm(b);
            st.amp_b = 0.0;
        } else {
            st.amp_b = b * phase;
        }
    }
    return st;
}

FbsOutcome fbs_run(const FbsConfig &config, bool blocked) {
    ProbeState st = fbs_evolve(config, blocked);
    return {std::norm(st.amp_b), std::norm(st.amp_a), st.absorbed};
}

double blocked_pass_probability(int cycles) {
    if (cycles < 1) {
        throw ParameterError("cycles must be >= 1");
    }
    return std::pow(std::cos(std::numbers::pi / (2.0 * cycles)), 2.0 * cycles);
}

}  // namespace mzqbc::fbs
