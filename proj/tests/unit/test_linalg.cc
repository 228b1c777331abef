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

#include "mzqbc/linalg.h"

#include <gtest/gtest.h>

#include "mzqbc/error.h"

using namespace mzqbc;
using namespace mzqbc::linalg;

TEST(Linalg, haar_unitary_is_unitary) {
    Rng rng(5);
    for (int dim : {1, 2, 3, 6, 12}) {
        Matrix u = haar_unitary(dim, rng);
        EXPECT_LE(unitarity_defect(u), 1e-12) << dim;
    }
    EXPECT_THROW(haar_unitary(0, rng), ParameterError);
}

TEST(Linalg, haar_first_moment_vanishes) {
    // E[U_00] = 0 and E[|U_00|^2] = 1/d for Haar measure.
    Rng rng(6);
    const int n = 4000;
    Complex sum = 0;
    double sq = 0;
    for (int i = 0; i < n; i++) {
        Matrix u = haar_unitary(3, rng);
        sum += u(0, 0);
        sq += std::norm(u(0, 0));
    }
    EXPECT_LT(std::abs(sum / double(n)), 0.05);
    EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.02);
}

TEST(Linalg, cayley_is_unitary) {
    Rng rng(7);
    for (double step : {0.0, 0.01, 1.0, 10.0}) {
        Matrix h = random_hermitian(4, rng);
        EXPECT_LE(unitarity_defect(cayley(h, step)), 1e-12);
    }
}

TEST(Linalg, complete_to_unitary_maps_basis_vector) {
    Rng rng(8);
    for (int column = 0; column < 3; column++) {
        Vector v = random_unit_vector(3, rng);
        Matrix u = complete_to_unitary(v, column);
        EXPECT_LE(unitarity_defect(u), 1e-12);
        EXPECT_LE((u.col(column) - v).norm(), 1e-12);
    }
    Vector e = Vector::Zero(3);
    e(1) = 1.0;
    EXPECT_LE((complete_to_unitary(e, 1) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(complete_to_unitary(2.0 * e, 1), ParameterError);
    EXPECT_THROW(complete_to_unitary(e, 3), ParameterError);
}

TEST(Linalg, kron_matches_definition) {
    Matrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    Matrix b(2, 1);
    b << Complex(0, 1), 5.0;
    Matrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 4);
    ASSERT_EQ(k.cols(), 2);
    EXPECT_EQ(k(0, 0), Complex(0, 1));
    EXPECT_EQ(k(1, 0), Complex(5));
    EXPECT_EQ(k(3, 1), Complex(20));
    EXPECT_EQ(k(2, 0), Complex(0, 3));
}
