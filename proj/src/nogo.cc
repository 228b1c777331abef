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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mzqbc/error.h"

namespace mzqbc::nogo {

namespace {

constexpr int kMaxDenseQubits = 12;

int64_t word_index(const codes::BitString &word) {
    int64_t out = 0;
    for (int i = 0; i < word.length(); i++) {
        out = (out << 1) | word.bit(i);
    }
    return out;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries, double tolerance) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ParameterError("density matrix must be square and nonempty");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
        throw ParameterError("density matrix must be Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tolerance) {
        throw ParameterError("density matrix must have unit trace");
    }
    if (min_eigenvalue() < -tolerance) {
        throw ParameterError("density matrix must be positive semidefinite");
    }
}

DensityMatrix unchecked_density(Matrix entries) {
    return DensityMatrix(std::move(entries), DensityMatrix::Unchecked{});
}

DensityMatrix DensityMatrix::pure(const Vector &psi) {
    double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ParameterError("pure state must be normalized");
    }
    return unchecked_density(psi * psi.adjoint());
}

double DensityMatrix::trace() const {
    return m_.trace().real();
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DiagonalDensity::weight(const codes::BitString &word) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), word,
                               [](const auto &entry, const codes::BitString &w) { return entry.first < w; });
    if (it != entries.end() && it->first == word) {
        return it->second;
    }
    return 0.0;
}

double DiagonalDensity::purity() const {
    double out = 0.0;
    for (const auto &[word, w] : entries) {
        out += w * w;
    }
    return out;
}

DensityMatrix DiagonalDensity::to_dense() const {
    if (n > kMaxDenseQubits) {
        throw GuardError("dense density matrix needs n <= " + std::to_string(kMaxDenseQubits));
    }
    int64_t dim = int64_t{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &[word, w] : entries) {
        int64_t i = word_index(word);
        m(i, i) = w;
    }
    return unchecked_density(std::move(m));
}

DiagonalDensity rho_alpha(const codes::LinearCode &code, const codes::BitString &r, int b) {
    if (b != 0 && b != 1) {
        throw ParameterError("bit must be 0 or 1");
    }
    auto split = codes::coset_split(code, r);
    const auto &coset = split.of(b);
    if (coset.empty()) {
        throw ParameterError("committed subset empty; choose different r");
    }
    DiagonalDensity out;
    out.n = code.n();
    double w = 1.0 / static_cast<double>(coset.size());
    for (const auto &c : coset) {
        out.entries.emplace_back(c, w);
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    return out;
}

double overlap(const DiagonalDensity &a, const DiagonalDensity &b) {
    if (a.n != b.n) {
        throw ParameterError("overlap needs equal dimensions");
    }
    double out = 0.0;
    for (const auto &[word, w] : a.entries) {
        out += w * b.weight(word);
    }
    return out;
}

double overlap(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw ParameterError("overlap needs equal dimensions");
    }
    // trace(AB) = sum_ij A_ij B_ji.
    Complex t = (a.matrix().array() * b.matrix().transpose().array()).sum();
    if (std::abs(t.imag()) > 1e-10) {
        throw ParameterError("overlap is not real; inputs are not Hermitian");
    }
    return t.real();
}

double physical_overlap(const DiagonalDensity &a, const DiagonalDensity &b,
                        const optics::BeamSplitterParams &params) {
    if (a.n != b.n) {
        throw ParameterError("overlap needs equal dimensions");
    }
    optics::PhotonState psi[2] = {optics::encode(0, params), optics::encode(1, params)};
    Complex single[2][2];
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            single[x][y] = optics::inner_product(psi[x], psi[y]);
        }
    }
    double out = 0.0;
    for (const auto &[u, wu] : a.entries) {
        for (const auto &[v, wv] : b.entries) {
            Complex amp = 1.0;
            for (int i = 0; i < a.n; i++) {
                amp *= single[u.bit(i)][v.bit(i)];
            }
            out += wu * wv * std::norm(amp);
        }
    }
    return out;
}

CompositeSystem::CompositeSystem(int n) : n_(n), qutrit_dim_(1) {
    if (n < 1 || n > kMaxCompositePhotons) {
        throw GuardError("composite system supports 1 <= n <= " + std::to_string(kMaxCompositePhotons) +
                         " (dimension 1728 at n = 3)");
    }
    for (int i = 0; i < n; i++) {
        qutrit_dim_ *= 3;
    }
}

int64_t CompositeSystem::index(int64_t beta, int64_t alpha, int64_t gamma) const {
    return (beta * qubit_dim() + alpha) * qutrit_dim_ + gamma;
}

int64_t CompositeSystem::gamma_all_two() const {
    return qutrit_dim_ - 1;
}

int CompositeSystem::qutrit(int64_t gamma, int i) const {
    for (int k = n_ - 1; k > i; k--) {
        gamma /= 3;
    }
    return static_cast<int>(gamma % 3);
}

int CompositeSystem::qubit(int64_t word, int i) const {
    return static_cast<int>((word >> (n_ - 1 - i)) & 1);
}

DensityMatrix initial_state(const CompositeSystem &system, const DensityMatrix &rho_beta,
                            const DensityMatrix &rho_alpha) {
    if (rho_beta.dim() != system.qubit_dim() || rho_alpha.dim() != system.qubit_dim()) {
        throw ParameterError("beta and alpha states must have dimension 2^n");
    }
    Matrix gamma = Matrix::Zero(system.qutrit_dim(), system.qutrit_dim());
    gamma(system.gamma_all_two(), system.gamma_all_two()) = 1.0;
    return unchecked_density(linalg::kron(linalg::kron(rho_beta.matrix(), rho_alpha.matrix()), gamma));
}

DensityMatrix default_beta(const CompositeSystem &system) {
    Matrix m = Matrix::Zero(system.qubit_dim(), system.qubit_dim());
    m(0, 0) = 1.0;
    return unchecked_density(std::move(m));
}

std::vector<int64_t> ub_permutation(const CompositeSystem &system, std::span<const UbMode> modes) {
    int n = system.n();
    if (static_cast<int>(modes.size()) != n) {
        throw ParameterError("need one mode per photon");
    }
    std::vector<int64_t> pow3(n);
    for (int i = 0; i < n; i++) {
        pow3[i] = 1;
        for (int k = i + 1; k < n; k++) {
            pow3[i] *= 3;
        }
    }
    std::vector<int64_t> out(system.dim());
    for (int64_t beta = 0; beta < system.qubit_dim(); beta++) {
        for (int64_t alpha = 0; alpha < system.qubit_dim(); alpha++) {
            for (int64_t gamma = 0; gamma < system.qutrit_dim(); gamma++) {
                int64_t b2 = beta;
                int64_t a2 = alpha;
                int64_t g2 = gamma;
                for (int i = 0; i < n; i++) {
                    int shift = n - 1 - i;
                    int bi = system.qubit(beta, i);
                    int ai = system.qubit(alpha, i);
                    if (modes[i] == UbMode::Bypass) {
                        b2 = (b2 & ~(int64_t{1} << shift)) | (int64_t{ai} << shift);
                        a2 = (a2 & ~(int64_t{1} << shift)) | (int64_t{bi} << shift);
                    } else {
                        int gi = system.qutrit(gamma, i);
                        int gnew = gi == 2 ? ai : (gi == ai ? 2 : gi);
                        g2 += (gnew - gi) * pow3[i];
                    }
                }
                out[system.index(beta, alpha, gamma)] = system.index(b2, a2, g2);
            }
        }
    }
    return out;
}

Matrix ub_matrix(const CompositeSystem &system, std::span<const UbMode> modes) {
    auto perm = ub_permutation(system, modes);
    Matrix u = Matrix::Zero(system.dim(), system.dim());
    for (int64_t i = 0; i < system.dim(); i++) {
        u(perm[i], i) = 1.0;
    }
    return u;
}

DensityMatrix apply_UB(const CompositeSystem &system, std::span<const UbMode> modes, const DensityMatrix &state) {
    if (state.dim() != system.dim()) {
        throw ParameterError("state dimension does not match the composite system");
    }
    const Matrix &rho = state.matrix();
    for (int64_t i = 0; i < system.dim(); i++) {
        if (i % system.qutrit_dim() != system.gamma_all_two() && std::abs(rho(i, i)) > 1e-12) {
            throw ParameterError("gamma register must be initialized to |2...2>");
        }
    }
    auto perm = ub_permutation(system, modes);
    Matrix out(system.dim(), system.dim());
    for (int64_t j = 0; j < system.dim(); j++) {
        for (int64_t i = 0; i < system.dim(); i++) {
            out(perm[i], perm[j]) = rho(i, j);
        }
    }
    return unchecked_density(std::move(out));
}

bool is_legitimate_ub(std::span<const UbMode> modes, const codes::LinearCode &code) {
    if (static_cast<int>(modes.size()) != code.n()) {
        throw ParameterError("need one mode per photon");
    }
    auto intercepts = std::count(modes.begin(), modes.end(), UbMode::Intercept);
    return intercepts < code.n() - code.d();
}

DensityMatrix bob_reduced_state(const DensityMatrix &state, const CompositeSystem &system) {
    if (state.dim() != system.dim()) {
        throw ParameterError("state dimension does not match the composite system");
    }
    int64_t s = system.bob_dim();
    Matrix out = Matrix::Zero(s, s);
    for (int64_t b = 0; b < system.qubit_dim(); b++) {
        out += state.matrix().block(b * s, b * s, s, s);
    }
    return unchecked_density(std::move(out));
}

DensityMatrix reduced_after_beta_unitary(const DensityMatrix &state, const CompositeSystem &system,
                                         const Matrix &v) {
    int64_t q = system.qubit_dim();
    if (v.rows() != q || v.cols() != q) {
        throw ParameterError("beta unitary must be 2^n x 2^n");
    }
    int64_t s = system.bob_dim();
    // Tr_beta[(V x I) rho (V x I)^dagger] = sum_{k,l} (sum_b V_bk conj(V_bl)) rho_kl.
    Matrix g = v.transpose() * v.conjugate();
    Matrix out = Matrix::Zero(s, s);
    for (int64_t k = 0; k < q; k++) {
        for (int64_t l = 0; l < q; l++) {
            out += g(k, l) * state.matrix().block(k * s, l * s, s, s);
        }
    }
    return unchecked_density(std::move(out));
}

double max_entry_deviation(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ParameterError("matrix shapes differ");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw ParameterError("trace distance needs equal dimensions");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

InvarianceReport alice_local_invariance(const CompositeSystem &system, std::span<const UbMode> modes,
                                        const codes::LinearCode &code, const codes::BitString &r, int trials,
                                        Rng &rng) {
    if (code.n() != system.n()) {
        throw ParameterError("code length must match the composite system");
    }
    if (trials < 0) {
        throw ParameterError("trials must be >= 0");
    }
    DensityMatrix beta = default_beta(system);
    DensityMatrix committed[2] = {
        apply_UB(system, modes, initial_state(system, beta, rho_alpha(code, r, 0).to_dense())),
        apply_UB(system, modes, initial_state(system, beta, rho_alpha(code, r, 1).to_dense())),
    };
    DensityMatrix bob0 = bob_reduced_state(committed[0], system);
    DensityMatrix bob1 = bob_reduced_state(committed[1], system);

    InvarianceReport report;
    report.n = system.n();
    report.trials = trials;
    report.overlap_before = overlap(bob0, bob1);
    report.record_distance = trace_distance(bob0, bob1);
    for (int t = 0; t < trials; t++) {
        Matrix v = linalg::haar_unitary(static_cast<int>(system.qubit_dim()), rng);
        DensityMatrix moved = reduced_after_beta_unitary(committed[0], system, v);
        report.max_deviation = std::max(report.max_deviation, max_entry_deviation(moved.matrix(), bob0.matrix()));
        report.max_overlap_deviation =
            std::max(report.max_overlap_deviation, std::abs(overlap(moved, bob1) - report.overlap_before));
    }
    return report;
}

ParityPosterior bob_bit_posterior(const codes::LinearCode &code, const codes::BitString &r,
                                  std::span<const int> known_positions, std::span<const int> known_values) {
    if (r.length() != code.n()) {
        throw ParameterError("r length must equal n");
    }
    auto words = codes::consistent_codewords(code, known_positions, known_values);
    ParityPosterior out;
    if (words.empty()) {
        out.impossible = true;
        return out;
    }
    double count[2] = {0, 0};
    for (const auto &c : words) {
        count[codes::parity(c, r)] += 1;
    }
    double total = count[0] + count[1];
    out.p0 = count[0] / total;
    out.p1 = count[1] / total;
    return out;
}

}  // namespace mzqbc::nogo
