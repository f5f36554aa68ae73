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

// Test-only dense oracle. Operators are built from explicit Kronecker
// products and exponentials from eigendecompositions — deliberately nothing
// shared with the bitwise kernel under test.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "deltavqe/pauli.hpp"
#include "deltavqe/statevec.hpp"

namespace dense_ref {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using deltavqe::Axis;
using deltavqe::CommutingGroup;
using deltavqe::GroupedHamiltonian;
using deltavqe::PauliString;

inline Mat axis_matrix(Axis a) {
    Mat m(2, 2);
    const std::complex<double> i{0.0, 1.0};
    switch (a) {
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, -i, i, 0; break;
        case Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// P-hat as a 2^n x 2^n matrix (unit coefficient). Site 0 is the least
/// significant bit, i.e. the rightmost Kronecker factor.
inline Mat unit_term_matrix(const PauliString& p, int n) {
    std::vector<Mat> site(static_cast<std::size_t>(n), Mat::Identity(2, 2));
    for (const auto& f : p.factors()) site[static_cast<std::size_t>(f.site)] = axis_matrix(f.axis);
    Mat out = site[static_cast<std::size_t>(n - 1)];
    for (int s = n - 2; s >= 0; --s) out = kron(out, site[static_cast<std::size_t>(s)]);
    return out;
}

inline Mat term_matrix(const PauliString& p, int n) { return p.coefficient() * unit_term_matrix(p, n); }

inline Mat operator_sum(std::span<const PauliString> terms, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat out = Mat::Zero(dim, dim);
    for (const auto& t : terms) out += term_matrix(t, n);
    return out;
}

inline Mat group_matrix(const CommutingGroup& g, int n) {
    return operator_sum(std::span<const PauliString>(g.terms), n);
}

inline Mat hamiltonian_matrix(const GroupedHamiltonian& H, double h) {
    const auto terms = H.at(h);
    return operator_sum(terms, H.n_sites());
}

/// exp(+i theta H) for Hermitian H, via the spectral decomposition.
inline Mat expi(const Mat& hermitian, double theta) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian);
    const std::complex<double> i{0.0, 1.0};
    Vec phases = (i * theta * es.eigenvalues().array().cast<std::complex<double>>()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Vec to_eigen(const deltavqe::StateVector& s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
    return v;
}

inline void from_eigen(const Vec& v, deltavqe::StateVector& s) {
    for (std::size_t i = 0; i < s.dim(); ++i) s[i] = v[static_cast<Eigen::Index>(i)];
}

inline double lowest_eigenvalue(const Mat& hermitian) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace dense_ref
