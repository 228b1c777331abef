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

#include "mzqbc/nogo.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "mzqbc/error.h"

using namespace mzqbc;
using namespace mzqbc::nogo;

namespace {

codes::BitString e0(int n) {
    codes::BitString r(n);
    r.set(0, 1);
    return r;
}

std::vector<UbMode> alternating(int n) {
    std::vector<UbMode> modes;
    for (int i = 0; i < n; i++) {
        modes.push_back(i % 2 == 0 ? UbMode::Intercept : UbMode::Bypass);
    }
    return modes;
}

}  // namespace

TEST(Density, validation) {
    Matrix ok = Matrix::Identity(2, 2) / 2.0;
    EXPECT_NO_THROW(DensityMatrix{ok});
    Matrix non_hermitian = ok;
    non_hermitian(0, 1) = Complex(0.1, 0.0);
    EXPECT_THROW(DensityMatrix{non_hermitian}, ParameterError);
    EXPECT_THROW(DensityMatrix{Matrix(Matrix::Identity(2, 2))}, ParameterError);
    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{negative}, ParameterError);
    Vector psi(2);
    psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
    EXPECT_NEAR(DensityMatrix::pure(psi).purity(), 1.0, 1e-12);
}

TEST(RhoAlpha, coset_mixture) {
    auto code = codes::extended_hamming_8_4();
    auto rho0 = rho_alpha(code, e0(8), 0);
    auto rho1 = rho_alpha(code, e0(8), 1);
    EXPECT_EQ(rho0.entries.size(), 8u);
    EXPECT_NEAR(rho0.purity(), 1.0 / 8.0, 1e-15);
    EXPECT_NEAR(rho0.weight(codes::BitString(8)), 1.0 / 8.0, 1e-15);
    EXPECT_EQ(rho1.weight(codes::BitString(8)), 0.0);
    EXPECT_EQ(overlap(rho0, rho1), 0.0);
    EXPECT_NEAR(overlap(rho0, rho0), 1.0 / 8.0, 1e-15);
    EXPECT_NEAR(overlap(rho0.to_dense(), rho1.to_dense()), 0.0, 1e-15);
    EXPECT_THROW(rho_alpha(code, e0(8), 2), ParameterError);
    EXPECT_THROW(rho_alpha(codes::golay_24_12(), e0(24), 0).to_dense(), GuardError);
}

TEST(RhoAlpha, physical_states_are_orthogonal) {
    auto code = codes::hamming_7_4();
    Rng rng(1);
    for (double R : {0.1, 0.3, 0.7}) {
        optics::BeamSplitterParams bs(R);
        for (int t = 0; t < 5; t++) {
            auto r = codes::random_nonzero(7, rng);
            auto split = codes::coset_split(code, r);
            if (split.parity1.empty()) {
                continue;
            }
            EXPECT_NEAR(physical_overlap(rho_alpha(code, r, 0), rho_alpha(code, r, 1), bs), 0.0, 1e-15);
        }
    }
}

TEST(Composite, dimensions_and_guard) {
    CompositeSystem s(2);
    EXPECT_EQ(s.qubit_dim(), 4);
    EXPECT_EQ(s.qutrit_dim(), 9);
    EXPECT_EQ(s.dim(), 144);
    EXPECT_EQ(s.gamma_all_two(), 8);
    EXPECT_EQ(s.qutrit(5, 0), 1);
    EXPECT_EQ(s.qutrit(5, 1), 2);
    EXPECT_EQ(s.qubit(2, 0), 1);
    EXPECT_EQ(s.qubit(2, 1), 0);
    EXPECT_THROW(CompositeSystem(0), GuardError);
    EXPECT_THROW(CompositeSystem(4), GuardError);
}

TEST(Composite, ub_is_a_permutation) {
    for (int n = 1; n <= 3; n++) {
        CompositeSystem s(n);
        for (int mask = 0; mask < (1 << n); mask++) {
            std::vector<UbMode> modes;
            for (int i = 0; i < n; i++) {
                modes.push_back((mask >> i) & 1 ? UbMode::Intercept : UbMode::Bypass);
            }
            auto perm = ub_permutation(s, modes);
            std::vector<int64_t> sorted = perm;
            std::sort(sorted.begin(), sorted.end());
            for (int64_t i = 0; i < s.dim(); i++) {
                ASSERT_EQ(sorted[i], i);
            }
        }
    }
}

TEST(Composite, bypass_squares_to_identity) {
    CompositeSystem s(2);
    std::vector<UbMode> modes{UbMode::Bypass, UbMode::Bypass};
    Matrix u = ub_matrix(s, modes);
    EXPECT_LT(max_entry_deviation(u * u, Matrix::Identity(s.dim(), s.dim())), 1e-15);
    // Bypass swaps beta and alpha.
    auto perm = ub_permutation(s, modes);
    int64_t g = s.gamma_all_two();
    EXPECT_EQ(perm[s.index(1, 2, g)], s.index(2, 1, g));
}

TEST(Composite, intercept_copies_into_record) {
    CompositeSystem s(1);
    std::vector<UbMode> modes{UbMode::Intercept};
    auto perm = ub_permutation(s, modes);
    EXPECT_EQ(perm[s.index(0, 1, 2)], s.index(0, 1, 1));
    EXPECT_EQ(perm[s.index(0, 0, 2)], s.index(0, 0, 0));
    EXPECT_EQ(perm[s.index(1, 1, 2)], s.index(1, 1, 1));
}

TEST(Composite, isometry_on_reachable_subspace) {
    CompositeSystem s(1);
    std::vector<UbMode> modes{UbMode::Intercept};
    Matrix u = ub_matrix(s, modes);
    Matrix p = Matrix::Zero(s.dim(), s.dim());
    for (int beta = 0; beta < 2; beta++) {
        for (int alpha = 0; alpha < 2; alpha++) {
            int64_t i = s.index(beta, alpha, 2);
            p(i, i) = 1.0;
        }
    }
    EXPECT_LT(max_entry_deviation(p * u.adjoint() * u * p, p), 1e-15);
}

TEST(Composite, apply_requires_fresh_records) {
    CompositeSystem s(1);
    std::vector<UbMode> modes{UbMode::Intercept};
    Matrix m = Matrix::Zero(s.dim(), s.dim());
    m(s.index(0, 0, 0), s.index(0, 0, 0)) = 1.0;
    EXPECT_THROW(apply_UB(s, modes, DensityMatrix(m)), ParameterError);
}

TEST(Composite, legitimacy_counts_intercepts) {
    auto code = codes::extended_hamming_8_4();
    std::vector<UbMode> modes(8, UbMode::Bypass);
    for (int i = 0; i < 3; i++) {
        modes[i] = UbMode::Intercept;
    }
    EXPECT_TRUE(is_legitimate_ub(modes, code));
    modes[3] = UbMode::Intercept;
    EXPECT_FALSE(is_legitimate_ub(modes, code));
}

TEST(Reduced, identity_unitary_matches_partial_trace) {
    CompositeSystem s(2);
    auto code = codes::repetition_code(2);
    auto state = apply_UB(s, alternating(2), initial_state(s, default_beta(s), rho_alpha(code, e0(2), 1).to_dense()));
    auto direct = bob_reduced_state(state, s);
    auto via = reduced_after_beta_unitary(state, s, Matrix::Identity(4, 4));
    EXPECT_LT(max_entry_deviation(direct.matrix(), via.matrix()), 1e-15);
    EXPECT_NEAR(direct.trace(), 1.0, 1e-12);
}

TEST(Reduced, alice_cannot_move_bobs_state) {
    Rng rng(2);
    for (int n = 1; n <= 3; n++) {
        CompositeSystem s(n);
        auto rep = alice_local_invariance(s, alternating(n), codes::repetition_code(n), e0(n), 30, rng);
        EXPECT_LE(rep.max_deviation, 1e-9) << n;
        EXPECT_LE(rep.max_overlap_deviation, 1e-9) << n;
        EXPECT_NEAR(rep.record_distance, 1.0, 1e-9) << n;
    }
}

TEST(Posterior, parity_counts) {
    auto code = codes::extended_hamming_8_4();
    auto r = e0(8);
    std::vector<int> none;
    auto prior = bob_bit_posterior(code, r, none, none);
    EXPECT_DOUBLE_EQ(prior.p0, 0.5);
    EXPECT_DOUBLE_EQ(prior.p1, 0.5);
    std::vector<int> pos{0};
    std::vector<int> val{1};
    auto known = bob_bit_posterior(code, r, pos, val);
    EXPECT_DOUBLE_EQ(known.p1, 1.0);
    // Bits off the mask leave the parity balanced.
    std::vector<int> pos2{1, 2};
    std::vector<int> val2{1, 0};
    auto off = bob_bit_posterior(code, r, pos2, val2);
    EXPECT_DOUBLE_EQ(off.p0, 0.5);

    auto rep = codes::repetition_code(3);
    std::vector<int> p3{0, 1};
    std::vector<int> v3{0, 1};
    EXPECT_TRUE(bob_bit_posterior(rep, e0(3), p3, v3).impossible);
}
