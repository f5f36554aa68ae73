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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deltavqe {

enum class Axis : std::uint8_t { X, Y, Z };

inline char axis_char(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    return '?';
}

struct PauliFactor {
    int site;
    Axis axis;
};

/// A real coefficient times a tensor product of single-site Pauli operators.
/// Identity sites are omitted; an empty factor list is coefficient * identity.
/// Factor order is preserved as given, so a term reads back the way the model
/// wrote it (e.g. the cluster term at i=0 prints as "Z3 X0 Z1").
class PauliString {
  public:
    PauliString() = default;

    PauliString(double coefficient, std::vector<PauliFactor> factors)
        : coefficient_(coefficient), factors_(std::move(factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].site < 0) throw std::invalid_argument("PauliString: negative site index");
            for (std::size_t j = 0; j < i; ++j) {
                if (factors_[i].site == factors_[j].site)
                    throw std::invalid_argument("PauliString: site appears twice");
            }
        }
    }

    double coefficient() const { return coefficient_; }
    const std::vector<PauliFactor>& factors() const { return factors_; }

    PauliString scaled(double factor) const {
        PauliString out = *this;
        out.coefficient_ *= factor;
        return out;
    }

    /// Largest site index touched, -1 for the identity.
    int max_site() const {
        int m = -1;
        for (const auto& f : factors_) m = std::max(m, f.site);
        return m;
    }

    /// Text form "coeff * A_i B_j ..." (e.g. "-1.0 * Z0 Z1"); identity prints as "coeff * I".
    std::string str() const {
        std::string out = format_coefficient(coefficient_) + " *";
        if (factors_.empty()) {
            out += " I";
            return out;
        }
        for (const auto& f : factors_) {
            out += ' ';
            out += axis_char(f.axis);
            out += std::to_string(f.site);
        }
        return out;
    }

  private:
    static std::string format_coefficient(double c) {
        if (c == 0.0) c = 0.0;  // normalize -0.0
        char buf[40];
        if (c == std::floor(c) && std::abs(c) < 1e15) {
            std::snprintf(buf, sizeof buf, "%.1f", c);
        } else {
            std::snprintf(buf, sizeof buf, "%.12g", c);
        }
        return buf;
    }

    double coefficient_ = 1.0;
    std::vector<PauliFactor> factors_;
};

/// True iff the two strings commute as operators: they anticommute on an even
/// number of shared sites (sites where both act with different axes).
inline bool commutes(const PauliString& a, const PauliString& b) {
    int anti = 0;
    for (const auto& fa : a.factors()) {
        for (const auto& fb : b.factors()) {
            if (fa.site == fb.site && fa.axis != fb.axis) ++anti;
        }
    }
    return (anti % 2) == 0;
}

/// A labeled set of mutually commuting terms. Coefficients carry the model's
/// signs; the field multiplier h is applied externally by GroupedHamiltonian.
struct CommutingGroup {
    std::string label;
    std::vector<PauliString> terms;
};

inline bool is_internally_commuting(const CommutingGroup& g) {
    for (std::size_t i = 0; i < g.terms.size(); ++i) {
        for (std::size_t j = i + 1; j < g.terms.size(); ++j) {
            if (!commutes(g.terms[i], g.terms[j])) return false;
        }
    }
    return true;
}

enum class ModelId { TFIM, XZ, ClusterIsing };

inline const char* model_name(ModelId id) {
    switch (id) {
        case ModelId::TFIM: return "tfim";
        case ModelId::XZ: return "xz";
        case ModelId::ClusterIsing: return "cluster";
    }
    return "?";
}

inline ModelId parse_model(std::string_view name) {
    if (name == "tfim") return ModelId::TFIM;
    if (name == "xz") return ModelId::XZ;
    if (name == "cluster") return ModelId::ClusterIsing;
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected tfim|xz|cluster)");
}

/// H(h) = sum_g weight_g(h) * H_g with H_g a commuting group. For the whole
/// catalog the weights are (1, h): group 0 is the model-specific part, group 1
/// the field part. Immutable after construction.
class GroupedHamiltonian {
  public:
    GroupedHamiltonian(int n_sites, std::vector<CommutingGroup> groups)
        : n_sites_(n_sites), groups_(std::move(groups)) {
        if (n_sites_ < 1) throw std::invalid_argument("GroupedHamiltonian: n_sites must be positive");
        if (groups_.size() < 2) throw std::invalid_argument("GroupedHamiltonian: needs at least 2 groups");
        for (const auto& g : groups_) {
            for (const auto& t : g.terms) {
                if (t.max_site() >= n_sites_)
                    throw std::invalid_argument("GroupedHamiltonian: term site out of range");
            }
        }
    }

    int n_sites() const { return n_sites_; }
    const std::vector<CommutingGroup>& groups() const { return groups_; }
    std::size_t n_groups() const { return groups_.size(); }

    /// Field multiplier of group g at coupling h.
    double group_weight(std::size_t g, double h) const { return g == 0 ? 1.0 : h; }

    std::size_t group_index(std::string_view label) const {
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            if (groups_[g].label == label) return g;
        }
        throw std::invalid_argument("no group labeled '" + std::string(label) + "'");
    }

    /// Flat term list of H(h): all groups concatenated, coefficients scaled by
    /// the group weight. Zero-weight terms are kept, not pruned.
    std::vector<PauliString> at(double h) const {
        std::vector<PauliString> out;
        std::size_t total = 0;
        for (const auto& g : groups_) total += g.terms.size();
        out.reserve(total);
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const double w = group_weight(g, h);
            for (const auto& t : groups_[g].terms) out.push_back(t.scaled(w));
        }
        return out;
    }

  private:
    int n_sites_;
    std::vector<CommutingGroup> groups_;
};

/// Spin-chain catalog, periodic boundary conditions (site N == site 0).
///   TFIM:    {zz: -sum Z_i Z_{i+1},       x:  -sum X_i}
///   XZ:      {zz: -sum Z_i Z_{i+1},       xx: -sum X_i X_{i+1}}
///   Cluster: {cluster: -sum Z_{i-1} X_i Z_{i+1}, yy: -sum Y_i Y_{i+1}}
/// Group 2 carries the field weight h.
inline GroupedHamiltonian build_model(ModelId id, int n_sites) {
    if (n_sites < 3)
        throw std::invalid_argument("build_model: n_sites must be >= 3 (cluster term spans 3 sites)");
    const int n = n_sites;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };

    CommutingGroup g1, g2;
    switch (id) {
        case ModelId::TFIM:
            g1.label = "zz";
            g2.label = "x";
            for (int i = 0; i < n; ++i) {
                g1.terms.emplace_back(-1.0, std::vector<PauliFactor>{{i, Axis::Z}, {wrap(i + 1), Axis::Z}});
                g2.terms.emplace_back(-1.0, std::vector<PauliFactor>{{i, Axis::X}});
            }
            break;
        case ModelId::XZ:
            g1.label = "zz";
            g2.label = "xx";
            for (int i = 0; i < n; ++i) {
                g1.terms.emplace_back(-1.0, std::vector<PauliFactor>{{i, Axis::Z}, {wrap(i + 1), Axis::Z}});
                g2.terms.emplace_back(-1.0, std::vector<PauliFactor>{{i, Axis::X}, {wrap(i + 1), Axis::X}});
            }
            break;
        case ModelId::ClusterIsing:
            g1.label = "cluster";
            g2.label = "yy";
            for (int i = 0; i < n; ++i) {
                g1.terms.emplace_back(-1.0, std::vector<PauliFactor>{
                                                {wrap(i - 1), Axis::Z}, {i, Axis::X}, {wrap(i + 1), Axis::Z}});
                g2.terms.emplace_back(-1.0, std::vector<PauliFactor>{{i, Axis::Y}, {wrap(i + 1), Axis::Y}});
            }
            break;
        default:
            throw std::invalid_argument("build_model: unknown model id");
    }
    return GroupedHamiltonian(n, {std::move(g1), std::move(g2)});
}

/// Flat term list of H(h); see GroupedHamiltonian::at.
inline std::vector<PauliString> hamiltonian_at(const GroupedHamiltonian& H, double h) { return H.at(h); }

}  // namespace deltavqe
