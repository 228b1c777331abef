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

#ifndef MZQBC_NOGO_H
#define MZQBC_NOGO_H

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mzqbc/codes.h"
#include "mzqbc/linalg.h"
#include "mzqbc/optics.h"
#include "mzqbc/rng.h"

/// Operator model of the commit phase at a handful of photons.
///
/// Alice's committed photons live in register alpha (one qubit per photon,
/// basis {Psi_0, Psi_1}). Bob supplies beta (one qubit per photon, his secret
/// replacement photons) and gamma (one qutrit per photon, his measurement
/// records, starting at |2>). Bypass swaps beta_i and alpha_i; intercept
/// copies alpha_i into gamma_i.
namespace mzqbc::nogo {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

constexpr int kMaxCompositePhotons = 3;

class DensityMatrix {
   public:
    /// Validates Hermiticity, unit trace and positivity within `tolerance`.
    explicit DensityMatrix(Matrix entries, double tolerance = 1e-10);
    static DensityMatrix pure(const Vector &psi);

    int dim() const {
        return static_cast<int>(m_.rows());
    }
    const Matrix &matrix() const {
        return m_;
    }
    double trace() const;
    double purity() const;
    double min_eigenvalue() const;

   private:
    struct Unchecked {};
    DensityMatrix(Matrix entries, Unchecked) : m_(std::move(entries)) {
    }
    friend DensityMatrix unchecked_density(Matrix entries);

    Matrix m_;
};

/// Builds a density matrix without validation (for intermediate results whose
/// validity follows from construction).
DensityMatrix unchecked_density(Matrix entries);

/// A state diagonal in the product basis |psi_c> = (x)_i |Psi_{c_i}>.
struct DiagonalDensity {
    int n = 0;
    /// Sorted by word, weights sum to 1.
    std::vector<std::pair<codes::BitString, double>> entries;

    double weight(const codes::BitString &word) const;
    double purity() const;
    /// Dense form in the product basis (word bit i is qubit i, qubit 0 most
    /// significant). Requires n <= 12.
    DensityMatrix to_dense() const;
};

/// Uniform mixture over the coset C_(b).
DiagonalDensity rho_alpha(const codes::LinearCode &code, const codes::BitString &r, int b);

/// trace(a b).
double overlap(const DiagonalDensity &a, const DiagonalDensity &b);
double overlap(const DensityMatrix &a, const DensityMatrix &b);

/// trace(a b) evaluated from the photon states themselves: sums
/// w_a(c) w_b(c') |<psi_c|psi_c'>|^2 with each factor taken from encode().
double physical_overlap(const DiagonalDensity &a, const DiagonalDensity &b,
                        const optics::BeamSplitterParams &params);

enum class UbMode { Bypass, Intercept };

class CompositeSystem {
   public:
    /// GuardError unless 1 <= n <= kMaxCompositePhotons.
    explicit CompositeSystem(int n);

    int n() const {
        return n_;
    }
    int64_t qubit_dim() const {
        return int64_t{1} << n_;
    }
    int64_t qutrit_dim() const {
        return qutrit_dim_;
    }
    int64_t bob_dim() const {
        return qubit_dim() * qutrit_dim_;
    }
    int64_t dim() const {
        return qubit_dim() * bob_dim();
    }
    /// beta and alpha are n-bit words (qubit 0 most significant), gamma a
    /// base-3 word (qutrit 0 most significant).
    int64_t index(int64_t beta, int64_t alpha, int64_t gamma) const;
    int64_t gamma_all_two() const;
    int qutrit(int64_t gamma, int i) const;
    int qubit(int64_t word, int i) const;

   private:
    int n_;
    int64_t qutrit_dim_;
};

/// Product state rho_beta (x) rho_alpha (x) |2...2><2...2|.
DensityMatrix initial_state(const CompositeSystem &system, const DensityMatrix &rho_beta,
                            const DensityMatrix &rho_alpha);

/// |Psi_0> on every beta qubit.
DensityMatrix default_beta(const CompositeSystem &system);

/// Basis permutation implementing U_B: out index of every in index. The
/// qutrit map |2> -> |j> is completed as the swap 2 <-> j.
std::vector<int64_t> ub_permutation(const CompositeSystem &system, std::span<const UbMode> modes);
Matrix ub_matrix(const CompositeSystem &system, std::span<const UbMode> modes);

/// U_B rho U_B^dagger. ParameterError if gamma has support outside
/// |2...2>.
DensityMatrix apply_UB(const CompositeSystem &system, std::span<const UbMode> modes, const DensityMatrix &state);

/// Fewer than n - d intercepts.
bool is_legitimate_ub(std::span<const UbMode> modes, const codes::LinearCode &code);

/// Partial trace over beta.
DensityMatrix bob_reduced_state(const DensityMatrix &state, const CompositeSystem &system);

/// Tr_beta[(V (x) I) rho (V (x) I)^dagger] for a unitary V on beta.
DensityMatrix reduced_after_beta_unitary(const DensityMatrix &state, const CompositeSystem &system,
                                         const Matrix &v);

double max_entry_deviation(const Matrix &a, const Matrix &b);
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

struct InvarianceReport {
    int n = 0;
    int trials = 0;
    double max_deviation = 0.0;
    double overlap_before = 0.0;
    double max_overlap_deviation = 0.0;
    /// Trace distance between Bob's records for b = 0 and b = 1.
    double record_distance = 0.0;
};

/// Draws `trials` Haar unitaries on beta and checks that Bob's reduced state
/// and its overlap with the other bit's reduced state do not move.
InvarianceReport alice_local_invariance(const CompositeSystem &system, std::span<const UbMode> modes,
                                        const codes::LinearCode &code, const codes::BitString &r, int trials,
                                        Rng &rng);

struct ParityPosterior {
    double p0 = 0.0;
    double p1 = 0.0;
    bool impossible = false;
};

/// Parity posterior from the codewords agreeing with the known bits.
ParityPosterior bob_bit_posterior(const codes::LinearCode &code, const codes::BitString &r,
                                  std::span<const int> known_positions, std::span<const int> known_values);

}  // namespace mzqbc::nogo

#endif
