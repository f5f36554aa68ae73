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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "deltavqe/pauli.hpp"

namespace deltavqe {

// Bit/site convention, used everywhere: basis index b encodes site i as bit i
// of b, little-endian (site 0 = least-significant bit). |psi> for N sites has
// 2^N amplitudes; operations mutate in place and return the same state.

using Complex = std::complex<double>;

class StateVector {
  public:
    explicit StateVector(int n_sites) : n_sites_(n_sites) {
        if (n_sites_ < 1 || n_sites_ > 26)
            throw std::invalid_argument("StateVector: n_sites must be in [1, 26]");
        amp_.assign(std::size_t{1} << n_sites_, Complex{0.0, 0.0});
        amp_[0] = 1.0;
    }

    int n_sites() const { return n_sites_; }
    std::size_t dim() const { return amp_.size(); }

    Complex& operator[](std::size_t i) { return amp_[i]; }
    const Complex& operator[](std::size_t i) const { return amp_[i]; }

    std::span<Complex> amplitudes() { return amp_; }
    std::span<const Complex> amplitudes() const { return amp_; }

    void set_zero() { amp_.assign(amp_.size(), Complex{0.0, 0.0}); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return s;
    }

  private:
    int n_sites_;
    std::vector<Complex> amp_;
};

/// <a|b>
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

namespace detail {

// Bitmask form of a Pauli string: X and Y factors flip bits (xmask), Y and Z
// factors contribute a (-1) phase on set bits (yzmask), and each Y contributes
// one factor of i (y_phase = i^{#Y}).
struct TermMasks {
    std::uint64_t xmask = 0;
    std::uint64_t yzmask = 0;
    Complex y_phase{1.0, 0.0};
    double coefficient = 1.0;
};

inline TermMasks masks_for(const PauliString& p, int n_sites) {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    TermMasks m;
    m.coefficient = p.coefficient();
    int ny = 0;
    for (const auto& f : p.factors()) {
        if (f.site >= n_sites) throw std::invalid_argument("PauliString site out of range for state");
        const std::uint64_t bit = std::uint64_t{1} << f.site;
        if (f.axis != Axis::Z) m.xmask |= bit;
        if (f.axis != Axis::X) m.yzmask |= bit;
        if (f.axis == Axis::Y) ++ny;
    }
    m.y_phase = kIPow[ny & 3];
    return m;
}

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

// (P-hat psi)[b ^ xmask] = phase(b) * psi[b], unit coefficient.
inline void apply_string_span(const TermMasks& m, std::span<Complex> a) {
    const std::size_t dim = a.size();
    if (m.xmask == 0) {
        for (std::size_t b = 0; b < dim; ++b) a[b] *= m.y_phase * parity_sign(b & m.yzmask);
        return;
    }
    const std::size_t pivot = std::bit_floor(static_cast<std::size_t>(m.xmask));
    const std::size_t low = pivot - 1;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t b = ((k & ~low) << 1) | (k & low);
        const std::size_t j = b ^ m.xmask;
        const Complex vb = a[b];
        a[b] = m.y_phase * parity_sign(j & m.yzmask) * a[j];
        a[j] = m.y_phase * parity_sign(b & m.yzmask) * vb;
    }
}

// exp(+i angle P-hat) = cos(angle) I + i sin(angle) P-hat  (P-hat^2 = I).
inline void apply_rotation_span(const TermMasks& m, double angle, std::span<Complex> a) {
    const double c = std::cos(angle);
    const Complex is{0.0, std::sin(angle)};
    const std::size_t dim = a.size();
    if (m.xmask == 0) {
        for (std::size_t b = 0; b < dim; ++b)
            a[b] *= c + is * m.y_phase * parity_sign(b & m.yzmask);
        return;
    }
    const std::size_t pivot = std::bit_floor(static_cast<std::size_t>(m.xmask));
    const std::size_t low = pivot - 1;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t b = ((k & ~low) << 1) | (k & low);
        const std::size_t j = b ^ m.xmask;
        const Complex vb = a[b];
        const Complex vj = a[j];
        a[b] = c * vb + is * m.y_phase * parity_sign(j & m.yzmask) * vj;
        a[j] = c * vj + is * m.y_phase * parity_sign(b & m.yzmask) * vb;
    }
}

// out += coeff * P-hat in
inline void accumulate_span(const TermMasks& m, std::span<const Complex> in, std::span<Complex> out) {
    const std::size_t dim = in.size();
    const Complex cphase = m.coefficient * m.y_phase;
    for (std::size_t b = 0; b < dim; ++b)
        out[b ^ m.xmask] += cphase * parity_sign(b & m.yzmask) * in[b];
}

// <bra| coeff P-hat |ket>
inline Complex transition_span(const TermMasks& m, std::span<const Complex> bra,
                               std::span<const Complex> ket) {
    const std::size_t dim = bra.size();
    Complex s{0.0, 0.0};
    for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t src = b ^ m.xmask;
        s += std::conj(bra[b]) * parity_sign(src & m.yzmask) * ket[src];
    }
    return m.coefficient * m.y_phase * s;
}

}  // namespace detail

/// state <- P-hat |psi> (unit-coefficient operator action; P's coefficient is ignored).
inline StateVector& apply_pauli_string(StateVector& state, const PauliString& p) {
    detail::apply_string_span(detail::masks_for(p, state.n_sites()), state.amplitudes());
    return state;
}

/// state <- exp(+i theta c P-hat) |psi> with c the coefficient of p.
inline StateVector& apply_pauli_rotation(StateVector& state, const PauliString& p, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("apply_pauli_rotation: non-finite theta");
    const auto m = detail::masks_for(p, state.n_sites());
    detail::apply_rotation_span(m, theta * m.coefficient, state.amplitudes());
    return state;
}

/// state <- exp(+i theta weight H_g) |psi>, factored exactly over the group's
/// commuting terms in their stored (ascending-site) order. theta == 0 or
/// weight == 0 leaves the amplitudes untouched, bit for bit.
inline StateVector& apply_group_evolution(StateVector& state, const CommutingGroup& g, double weight,
                                          double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("apply_group_evolution: non-finite theta");
    if (theta == 0.0 || weight == 0.0) return state;
    const double t = theta * weight;
    for (const auto& term : g.terms) {
        const auto m = detail::masks_for(term, state.n_sites());
        detail::apply_rotation_span(m, t * m.coefficient, state.amplitudes());
    }
    return state;
}

/// coeff * <psi|t-hat|psi>. The imaginary residue is bounded by Hermiticity
/// (|Im| <= 1e-12 for normalized states) and discarded.
inline double expectation(const StateVector& state, const PauliString& term) {
    const auto m = detail::masks_for(term, state.n_sites());
    return detail::transition_span(m, state.amplitudes(), state.amplitudes()).real();
}

inline double expectation(const StateVector& state, std::span<const PauliString> terms) {
    double e = 0.0;
    for (const auto& t : terms) e += expectation(state, t);
    return e;
}

/// <bra| coeff t-hat |ket>
inline Complex transition_amplitude(const StateVector& bra, const PauliString& term,
                                    const StateVector& ket) {
    if (bra.dim() != ket.dim()) throw std::invalid_argument("transition_amplitude: dimension mismatch");
    return detail::transition_span(detail::masks_for(term, bra.n_sites()), bra.amplitudes(),
                                   ket.amplitudes());
}

/// out += sum_t coeff(t) t-hat |in>. Caller zeroes out first (or reuses it as
/// an accumulator on purpose).
inline void accumulate_pauli_sum(std::span<const PauliString> terms, const StateVector& in,
                                 StateVector& out) {
    if (in.dim() != out.dim()) throw std::invalid_argument("accumulate_pauli_sum: dimension mismatch");
    for (const auto& t : terms) {
        const auto m = detail::masks_for(t, in.n_sites());
        detail::accumulate_span(m, in.amplitudes(), out.amplitudes());
    }
}

inline StateVector& apply_hadamard(StateVector& state, int site) {
    if (site < 0 || site >= state.n_sites()) throw std::invalid_argument("apply_hadamard: site out of range");
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    const std::size_t bit = std::size_t{1} << site;
    const std::size_t dim = state.dim();
    const std::size_t low = bit - 1;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t b = ((k & ~low) << 1) | (k & low);
        const std::size_t j = b | bit;
        const Complex v0 = state[b];
        const Complex v1 = state[j];
        state[b] = kInvSqrt2 * (v0 + v1);
        state[j] = kInvSqrt2 * (v0 - v1);
    }
    return state;
}

inline StateVector& apply_cz(StateVector& state, int site_a, int site_b) {
    if (site_a == site_b) throw std::invalid_argument("apply_cz: sites must be distinct");
    if (site_a < 0 || site_a >= state.n_sites() || site_b < 0 || site_b >= state.n_sites())
        throw std::invalid_argument("apply_cz: site out of range");
    const std::size_t mask = (std::size_t{1} << site_a) | (std::size_t{1} << site_b);
    const std::size_t dim = state.dim();
    for (std::size_t b = 0; b < dim; ++b) {
        if ((b & mask) == mask) state[b] = -state[b];
    }
    return state;
}

}  // namespace deltavqe
