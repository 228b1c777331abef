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

#ifndef MZQBC_RNG_H
#define MZQBC_RNG_H

#include <cstdint>
#include <random>

namespace mzqbc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent stream seeds.
uint64_t splitmix64(uint64_t x);

/// Seed of the stream belonging to trial `trial_index` under `master_seed`.
///
/// Every Monte-Carlo experiment draws trial i from
/// `Rng(trial_seed(master, i))`, so results do not depend on how trials are
/// scheduled across threads.
uint64_t trial_seed(uint64_t master_seed, uint64_t trial_index);

inline Rng trial_rng(uint64_t master_seed, uint64_t trial_index) {
    return Rng(trial_seed(master_seed, trial_index));
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
/// Portable across standard libraries, unlike uniform_real_distribution.
double uniform01(Rng &rng);

/// Uniform integer in [0, bound). bound must be positive.
uint64_t uniform_below(Rng &rng, uint64_t bound);

bool bernoulli(Rng &rng, double p);

}  // namespace mzqbc

#endif
