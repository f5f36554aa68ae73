// Copyright 2026 The delta-vqe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "deltavqe/pauli.hpp"
#include "deltavqe/rng.hpp"
#include "deltavqe/statevec.hpp"

namespace deltavqe {

enum class EigMethod { Dense, Lanczos };

struct GroundStateResult {
    double energy = 0.0;
    double residual_norm = 0.0;  // ||H v - E v|| of the converged eigenpair
    EigMethod method = EigMethod::Dense;
};

struct LowSpectrum {
    double e0 = 0.0;
    double e1 = 0.0;
    double residual0 = 0.0;
    double residual1 = 0.0;
    EigMethod method = EigMethod::Dense;
};

namespace detail {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// H(h) column by column through the statevector kernel (matrix-free columns).
inline DenseMatrix dense_hamiltonian(const GroupedHamiltonian& H, double h) {
    const auto terms = H.at(h);
    const int n = H.n_sites();
    const std::size_t dim = std::size_t{1} << n;
    DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    StateVector basis(n), col(n);
    for (std::size_t b = 0; b < dim; ++b) {
        basis.set_zero();
        basis[b] = 1.0;
        col.set_zero();
        accumulate_pauli_sum(terms, basis, col);
        for (std::size_t r = 0; r < dim; ++r) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = col[r];
    }
    return out;
}

struct LanczosPair {
    double eigenvalue = 0.0;
    DenseVector vector;
    double residual = 0.0;
};

// Lanczos with full reorthogonalization (twice per step, against the whole
// basis and any deflated vectors). Krylov dimensions here are tiny, so the
// n*k^2 reorthogonalization cost is irrelevant next to the matvec.
template <typename MatVec>
LanczosPair lanczos_lowest(const MatVec& matvec, std::size_t dim, int max_krylov, double tol,
                           const std::vector<DenseVector>* deflation = nullptr) {
    const auto idx = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
    UniformSampler rng(derive_seed(0x1a9c205e5eedULL, dim));
    DenseVector v = DenseVector::Zero(idx(dim));
    for (std::size_t i = 0; i < dim; ++i)
        v[idx(i)] = std::complex<double>(rng.symmetric(1.0), rng.symmetric(1.0));
    auto project_out = [&](DenseVector& w, const std::vector<DenseVector>& basis) {
        for (const auto& u : basis) w -= u * u.dot(w);
    };
    if (deflation != nullptr) {
        project_out(v, *deflation);
        project_out(v, *deflation);
    }
    if (v.norm() < 1e-8) throw std::runtime_error("lanczos: start vector vanished after deflation");
    v.normalize();

    std::vector<DenseVector> basis{v};
    std::vector<double> alpha, beta;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
    for (int k = 0; k < max_krylov; ++k) {
        DenseVector w = matvec(basis.back());
        const double a = basis.back().dot(w).real();
        alpha.push_back(a);
        w -= a * basis.back();
        if (k > 0) w -= beta.back() * basis[static_cast<std::size_t>(k) - 1];
        for (int pass = 0; pass < 2; ++pass) {
            project_out(w, basis);
            if (deflation != nullptr) project_out(w, *deflation);
        }
        const double b = w.norm();

        const int m = k + 1;
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        small.compute(tri);
        const double theta = small.eigenvalues()(0);
        const double last = std::abs(small.eigenvectors()(m - 1, 0));
        const bool converged = b * last <= tol * std::max(1.0, std::abs(theta));
        const bool exhausted = b <= 1e-13;  // Krylov space closed; Ritz pairs exact inside it
        if (converged || exhausted) {
            DenseVector ritz = DenseVector::Zero(idx(dim));
            for (int i = 0; i < m; ++i) ritz += small.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
            ritz.normalize();
            const double residual = (matvec(ritz) - theta * ritz).norm();
            return {theta, std::move(ritz), residual};
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    throw std::runtime_error("lanczos: no convergence within the Krylov budget");
}

}  // namespace detail

/// Two lowest eigenvalues of H(h) with eigenpair residuals. Dense full
/// diagonalization for N <= 10, matrix-free Lanczos (Krylov dim <= 200,
/// tol 1e-10, deflated second pass) above; N capped at 16.
inline LowSpectrum low_spectrum(const GroupedHamiltonian& H, double h, EigMethod method) {
    if (H.n_sites() > 16) throw std::invalid_argument("low_spectrum: n_sites > 16 exceeds the resource guard");
    const std::size_t dim = std::size_t{1} << H.n_sites();
    LowSpectrum out;
    out.method = method;
    if (method == EigMethod::Dense) {
        const auto M = detail::dense_hamiltonian(H, h);
        Eigen::SelfAdjointEigenSolver<detail::DenseMatrix> es(M);
        if (es.info() != Eigen::Success) throw std::runtime_error("low_spectrum: dense eigensolver failed");
        out.e0 = es.eigenvalues()(0);
        out.e1 = es.eigenvalues()(1);
        const auto v0 = es.eigenvectors().col(0);
        const auto v1 = es.eigenvectors().col(1);
        out.residual0 = (M * v0 - out.e0 * v0).norm();
        out.residual1 = (M * v1 - out.e1 * v1).norm();
    } else {
        const auto terms = H.at(h);
        const int n = H.n_sites();
        StateVector in(n), acc(n);
        auto matvec = [&](const detail::DenseVector& x) {
            for (std::size_t i = 0; i < dim; ++i) in[i] = x[static_cast<Eigen::Index>(i)];
            acc.set_zero();
            accumulate_pauli_sum(terms, in, acc);
            detail::DenseVector y(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) y[static_cast<Eigen::Index>(i)] = acc[i];
            return y;
        };
        auto first = detail::lanczos_lowest(matvec, dim, 200, 1e-10);
        std::vector<detail::DenseVector> deflation{first.vector};
        auto second = detail::lanczos_lowest(matvec, dim, 200, 1e-10, &deflation);
        if (second.eigenvalue < first.eigenvalue) std::swap(first, second);
        out.e0 = first.eigenvalue;
        out.e1 = second.eigenvalue;
        out.residual0 = first.residual;
        out.residual1 = second.residual;
    }
    return out;
}

inline LowSpectrum low_spectrum(const GroupedHamiltonian& H, double h) {
    return low_spectrum(H, h, H.n_sites() <= 10 ? EigMethod::Dense : EigMethod::Lanczos);
}

/// Smallest eigenvalue of H(h).
inline GroundStateResult ground_energy(const GroupedHamiltonian& H, double h, EigMethod method) {
    const auto s = low_spectrum(H, h, method);
    return {s.e0, s.residual0, s.method};
}

inline GroundStateResult ground_energy(const GroupedHamiltonian& H, double h) {
    return ground_energy(H, h, H.n_sites() <= 10 ? EigMethod::Dense : EigMethod::Lanczos);
}

/// E1 - E0 >= 0, degeneracy included (no symmetry-sector resolution).
inline double gap(const GroupedHamiltonian& H, double h) {
    const auto s = low_spectrum(H, h);
    return std::max(0.0, s.e1 - s.e0);
}

}  // namespace deltavqe
