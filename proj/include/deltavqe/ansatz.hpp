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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deltavqe/pauli.hpp"
#include "deltavqe/statevec.hpp"

namespace deltavqe {

/// The fixed initial states of the ansatz.
///   AllZero  |0>^N            AllPlusX |+>^N           AllPlusY |+y>^N
///   Cluster  CZ-ring on H^N|0>^N
///   GhzZ     (|0..0> + |1..1>)/sqrt(2)
///   GhzY     (|+y..+y> + |-y..-y>)/sqrt(2)
enum class ReferenceId { AllZero, AllPlusX, AllPlusY, Cluster, GhzZ, GhzY };

inline const char* reference_name(ReferenceId id) {
    switch (id) {
        case ReferenceId::AllZero: return "zero";
        case ReferenceId::AllPlusX: return "plus-x";
        case ReferenceId::AllPlusY: return "plus-y";
        case ReferenceId::Cluster: return "cluster";
        case ReferenceId::GhzZ: return "ghz-z";
        case ReferenceId::GhzY: return "ghz-y";
    }
    return "?";
}

inline ReferenceId parse_reference(std::string_view name) {
    if (name == "zero") return ReferenceId::AllZero;
    if (name == "plus-x") return ReferenceId::AllPlusX;
    if (name == "plus-y") return ReferenceId::AllPlusY;
    if (name == "cluster") return ReferenceId::Cluster;
    if (name == "ghz-z") return ReferenceId::GhzZ;
    if (name == "ghz-y") return ReferenceId::GhzY;
    throw std::invalid_argument("unknown reference '" + std::string(name) +
                                "' (expected zero|plus-x|plus-y|cluster|ghz-z|ghz-y)");
}

inline StateVector prepare_reference(ReferenceId id, int n_sites) {
    if (id == ReferenceId::Cluster && n_sites < 3)
        throw std::invalid_argument("prepare_reference: cluster state needs n_sites >= 3");
    StateVector s(n_sites);
    const std::size_t dim = s.dim();
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    switch (id) {
        case ReferenceId::AllZero:
            break;  // |0...0> is the constructed state
        case ReferenceId::AllPlusX:
            for (std::size_t b = 0; b < dim; ++b) s[b] = amp;
            break;
        case ReferenceId::AllPlusY:
            for (std::size_t b = 0; b < dim; ++b) s[b] = amp * kIPow[std::popcount(b) & 3];
            break;
        case ReferenceId::Cluster:
            for (int i = 0; i < n_sites; ++i) apply_hadamard(s, i);
            for (int i = 0; i < n_sites; ++i) apply_cz(s, i, (i + 1) % n_sites);
            break;
        case ReferenceId::GhzZ:
            s[0] = {0.70710678118654752440, 0.0};
            s[dim - 1] = s[0];
            break;
        case ReferenceId::GhzY:
            for (std::size_t b = 0; b < dim; ++b) {
                const int pc = std::popcount(b) & 3;
                // i^pc + (-i)^pc: 2 for pc=0, -2 for pc=2, 0 for odd pc
                const double w = (pc == 0) ? 2.0 : (pc == 2 ? -2.0 : 0.0);
                s[b] = w * amp / std::sqrt(2.0);
            }
            break;
    }
    return s;
}

/// Group application order within each layer, first-applied first. The rule:
/// the group whose ground state the reference is (which only phases it) goes
/// last; the group that actually rotates the reference goes first.
inline std::vector<std::size_t> default_order(ModelId model, ReferenceId reference) {
    switch (model) {
        case ModelId::TFIM:
        case ModelId::XZ:
            // group 0 = zz, group 1 = x / xx
            if (reference == ReferenceId::AllZero || reference == ReferenceId::GhzZ) return {1, 0};
            if (reference == ReferenceId::AllPlusX) return {0, 1};
            break;
        case ModelId::ClusterIsing:
            // group 0 = cluster, group 1 = yy
            if (reference == ReferenceId::Cluster) return {1, 0};
            if (reference == ReferenceId::AllPlusY || reference == ReferenceId::GhzY) return {0, 1};
            break;
    }
    throw std::invalid_argument(std::string("default_order: unsupported pairing (") + model_name(model) +
                                ", " + reference_name(reference) + ")");
}

/// p x n grid of evolution durations; theta(i, k) drives the group at position
/// k of the layer order in layer i. Row-major, zero-initialized.
class ParameterGrid {
  public:
    ParameterGrid(int depth, int n_groups) : depth_(depth), n_groups_(n_groups) {
        if (depth_ < 1 || n_groups_ < 1) throw std::invalid_argument("ParameterGrid: bad dimensions");
        theta_.assign(static_cast<std::size_t>(depth_) * n_groups_, 0.0);
    }

    int depth() const { return depth_; }
    int n_groups() const { return n_groups_; }
    std::size_t size() const { return theta_.size(); }

    double& at(int layer, int position) { return theta_[index(layer, position)]; }
    double at(int layer, int position) const { return theta_[index(layer, position)]; }

    std::span<double> flat() { return theta_; }
    std::span<const double> flat() const { return theta_; }

    bool all_finite() const {
        for (double t : theta_) {
            if (!std::isfinite(t)) return false;
        }
        return true;
    }

    friend bool operator==(const ParameterGrid&, const ParameterGrid&) = default;

  private:
    std::size_t index(int layer, int position) const {
        if (layer < 0 || layer >= depth_ || position < 0 || position >= n_groups_)
            throw std::out_of_range("ParameterGrid: index out of range");
        return static_cast<std::size_t>(layer) * n_groups_ + position;
    }

    int depth_;
    int n_groups_;
    std::vector<double> theta_;
};

/// Reference state + per-layer group ordering + depth. The circuit generators
/// are the bare groups (weight 1); any field weight is a reparameterization of
/// theta and stays out of the circuit.
struct HvaAnsatz {
    GroupedHamiltonian hamiltonian;
    ReferenceId reference;
    int depth;
    std::vector<std::size_t> layer_order;  // first-applied first

    std::size_t parameter_count() const { return static_cast<std::size_t>(depth) * layer_order.size(); }
};

/// True iff evolving the raw reference under group g does more than phase it.
inline bool group_rotates_reference(const GroupedHamiltonian& H, std::size_t group, ReferenceId reference) {
    StateVector ref = prepare_reference(reference, H.n_sites());
    StateVector evolved = ref;
    apply_group_evolution(evolved, H.groups().at(group), 1.0, 0.37);  // generic angle
    return std::abs(inner(ref, evolved)) < 1.0 - 1e-9;
}

/// Builds a validated ansatz. layer_order must be a permutation of the group
/// indices; with check_first_group set (the default used for catalog orders),
/// the first-applied group must genuinely rotate the reference — a stabilizing
/// group up front would only burn a parameter on a phase. Pass false to study
/// deliberately reordered circuits.
inline HvaAnsatz make_ansatz(GroupedHamiltonian hamiltonian, ReferenceId reference, int depth,
                             std::vector<std::size_t> layer_order, bool check_first_group = true) {
    if (depth < 1) throw std::invalid_argument("make_ansatz: depth must be >= 1");
    const std::size_t n = hamiltonian.n_groups();
    if (layer_order.size() != n) throw std::invalid_argument("make_ansatz: layer_order size mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t g : layer_order) {
        if (g >= n || seen[g]) throw std::invalid_argument("make_ansatz: layer_order is not a permutation");
        seen[g] = true;
    }
    if (check_first_group && !group_rotates_reference(hamiltonian, layer_order.front(), reference))
        throw std::invalid_argument("make_ansatz: first-applied group stabilizes the reference");
    return HvaAnsatz{std::move(hamiltonian), reference, depth, std::move(layer_order)};
}

/// out <- U(theta) |reference>: layers i = 1..p, within each layer the groups
/// in layer_order, each as exp(+i theta_ik H_g) at weight 1.
inline void apply_ansatz(const HvaAnsatz& ansatz, const ParameterGrid& theta, StateVector& out) {
    if (theta.depth() != ansatz.depth || theta.n_groups() != static_cast<int>(ansatz.layer_order.size()))
        throw std::invalid_argument("apply_ansatz: parameter grid dimension mismatch");
    if (!theta.all_finite()) throw std::invalid_argument("apply_ansatz: non-finite parameter");
    out = prepare_reference(ansatz.reference, ansatz.hamiltonian.n_sites());
    for (int i = 0; i < ansatz.depth; ++i) {
        for (std::size_t k = 0; k < ansatz.layer_order.size(); ++k) {
            apply_group_evolution(out, ansatz.hamiltonian.groups()[ansatz.layer_order[k]], 1.0,
                                  theta.at(i, static_cast<int>(k)));
        }
    }
}

inline StateVector apply_ansatz(const HvaAnsatz& ansatz, const ParameterGrid& theta) {
    StateVector out(ansatz.hamiltonian.n_sites());
    apply_ansatz(ansatz, theta, out);
    return out;
}

}  // namespace deltavqe
