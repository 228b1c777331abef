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

#include <cmath>

#include "mzqbc/error.h"

namespace mzqbc::linalg {

double standard_normal(Rng &rng) {
    double u1;
    do {
        u1 = uniform01(rng);
    } while (u1 <= 0.0);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {

Matrix ginibre(int rows, int cols, Rng &rng) {
    Matrix g(rows, cols);
    for (int j = 0; j < cols; j++) {
        for (int i = 0; i < rows; i++) {
            double re = standard_normal(rng);
            double im = standard_normal(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

}  // namespace

Matrix haar_unitary(int dim, Rng &rng) {
    if (dim < 1) {
        throw ParameterError("unitary dimension must be positive");
    }
    Matrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (int j = 0; j < dim; j++) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        Complex phase = mag > 0 ? d / mag : Complex(1.0);
        q.col(j) *= phase;
    }
    return q;
}

Vector random_unit_vector(int dim, Rng &rng) {
    Vector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

Matrix random_hermitian(int dim, Rng &rng) {
    Matrix g = ginibre(dim, dim, rng);
    return (g + g.adjoint()) / 2.0;
}

Matrix cayley(const Matrix &hermitian, double step) {
    int n = static_cast<int>(hermitian.rows());
    Matrix id = Matrix::Identity(n, n);
    Complex half(0.0, step / 2.0);
    Matrix a = id - half * hermitian;
    Matrix b = id + half * hermitian;
    return a.partialPivLu().solve(b);
}

Matrix complete_to_unitary(const Vector &v, int column) {
    int n = static_cast<int>(v.size());
    if (column < 0 || column >= n) {
        throw ParameterError("column out of range");
    }
    if (std::abs(v.norm() - 1.0) > 1e-10) {
        throw ParameterError("vector must be normalized");
    }
    double mag = std::abs(v(column));
    Complex alpha = mag > 0 ? v(column) / mag : Complex(1.0);
    Vector target = v / alpha;  // target(column) is real and non-negative
    Vector u = -target;
    u(column) += 1.0;
    double un = u.squaredNorm();
    Matrix h = Matrix::Identity(n, n);
    if (un > 1e-30) {
        h -= (2.0 / un) * (u * u.adjoint());
    }
    return alpha * h;
}

double unitarity_defect(const Matrix &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); i++) {
        for (int j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace mzqbc::linalg
