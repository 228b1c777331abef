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

#ifndef MZQBC_LINALG_H
#define MZQBC_LINALG_H

#include <Eigen/Dense>
#include <complex>

#include "mzqbc/rng.h"

namespace mzqbc::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Standard normal deviate (Box-Muller over uniform01, portable).
double standard_normal(Rng &rng);

/// Haar-random unitary of the given dimension.
Matrix haar_unitary(int dim, Rng &rng);

/// Uniformly random unit vector in C^dim.
Vector random_unit_vector(int dim, Rng &rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
Matrix random_hermitian(int dim, Rng &rng);

/// Exactly unitary Cayley map (I - i s H / 2)^-1 (I + i s H / 2) of a
/// Hermitian generator.
Matrix cayley(const Matrix &hermitian, double step);

/// Unitary V with V e_column = v, built from one Householder reflection.
/// v must be a unit vector.
Matrix complete_to_unitary(const Vector &v, int column);

/// max |(U^dagger U - I)_ij|.
double unitarity_defect(const Matrix &u);

/// Kronecker product a (x) b.
Matrix kron(const Matrix &a, const Matrix &b);

}  // namespace mzqbc::linalg

#endif
