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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "deltavqe/ansatz.hpp"
#include "deltavqe/oracle.hpp"
#include "deltavqe/pauli.hpp"
#include "deltavqe/rng.hpp"
#include "deltavqe/vqe.hpp"

namespace deltavqe {

/// One grid point of the Delta-VQE curve: the two optimized energies, their
/// absolute difference, and optionally the exact ground energy baseline.
struct DeltaPoint {
    double h = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double delta = 0.0;
    std::optional<double> e_exact;
};

struct DeltaCurve {
    ModelId model = ModelId::TFIM;
    int n_sites = 0;
    int depth = 0;
    std::pair<ReferenceId, ReferenceId> reference_pair{ReferenceId::AllZero, ReferenceId::AllPlusX};
    std::vector<DeltaPoint> points;  // sorted by h (strictly increasing)
    double located_minimum = 0.0;    // grid argmin of delta, smallest-h tiebreak
};

struct SweepConfig {
    double h_min = 0.2;
    double h_max = 2.0;
    double h_step = 0.05;
    int depth = 1;
    OptimizerConfig optimizer;
    bool compute_exact = false;
    int threads = 1;
    bool warm_start = false;  // chain restart 0 from the previous grid point; forces sequential order

    void validate() const {
        if (!(h_min < h_max)) throw std::invalid_argument("SweepConfig: h-min must be < h-max");
        if (!(h_step > 0.0)) throw std::invalid_argument("SweepConfig: h-step must be > 0");
        if (depth < 1) throw std::invalid_argument("SweepConfig: depth must be >= 1");
        if (threads < 1) throw std::invalid_argument("SweepConfig: threads must be >= 1");
        optimizer.validate();
    }

    std::size_t grid_size() const {
        return static_cast<std::size_t>(std::llround((h_max - h_min) / h_step)) + 1;
    }

    double h_at(std::size_t i) const { return h_min + static_cast<double>(i) * h_step; }
};

/// The paper's reference pairs: ground states of the two Hamiltonian groups.
inline std::pair<ReferenceId, ReferenceId> default_reference_pair(ModelId model) {
    if (model == ModelId::ClusterIsing) return {ReferenceId::Cluster, ReferenceId::AllPlusY};
    return {ReferenceId::AllZero, ReferenceId::AllPlusX};
}

namespace detail {

// Index-parallel map with capped worker count. Results must be written to
// disjoint slots; any exception aborts the remaining work and is rethrown
// (all-or-nothing semantics for the caller's result buffer).
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!abort.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    {
                        const std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                    abort.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Two independent optimizations of H(h) from the two references, each with
/// its own stabilizer-last ordering and the same depth and optimizer budget;
/// delta = |e0 - e1|.
inline DeltaPoint delta_point(ModelId model, int n_sites, int depth, double h,
                              std::pair<ReferenceId, ReferenceId> refs, const OptimizerConfig& opt,
                              bool compute_exact = false) {
    const GroupedHamiltonian H = build_model(model, n_sites);
    const HvaAnsatz a0 = make_ansatz(H, refs.first, depth, default_order(model, refs.first));
    const HvaAnsatz a1 = make_ansatz(H, refs.second, depth, default_order(model, refs.second));
    DeltaPoint p;
    p.h = h;
    p.e0 = optimize(a0, h, opt).best_energy;
    p.e1 = optimize(a1, h, opt).best_energy;
    p.delta = std::abs(p.e0 - p.e1);
    if (compute_exact) p.e_exact = ground_energy(H, h).energy;
    return p;
}

/// delta_point over the h grid. Every point draws from its own RNG stream
/// (seed, point index), so the curve is identical whether it was computed on
/// one thread or many. located_minimum is the grid argmin (no interpolation:
/// the curve has a V kink at the critical point).
inline DeltaCurve sweep(ModelId model, int n_sites, const SweepConfig& cfg,
                        std::pair<ReferenceId, ReferenceId> refs) {
    cfg.validate();
    const GroupedHamiltonian H = build_model(model, n_sites);
    const HvaAnsatz a0 = make_ansatz(H, refs.first, cfg.depth, default_order(model, refs.first));
    const HvaAnsatz a1 = make_ansatz(H, refs.second, cfg.depth, default_order(model, refs.second));

    const std::size_t grid = cfg.grid_size();
    std::vector<DeltaPoint> points(grid);
    auto solve_point = [&](std::size_t i, const ParameterGrid* warm0, const ParameterGrid* warm1)
        -> std::pair<ParameterGrid, ParameterGrid> {
        const double h = cfg.h_at(i);
        OptimizerConfig opt = cfg.optimizer;
        opt.seed = derive_seed(cfg.optimizer.seed, i);
        VqeResult r0 = optimize(a0, h, opt, warm0);
        VqeResult r1 = optimize(a1, h, opt, warm1);
        DeltaPoint p;
        p.h = h;
        p.e0 = r0.best_energy;
        p.e1 = r1.best_energy;
        p.delta = std::abs(p.e0 - p.e1);
        if (cfg.compute_exact) p.e_exact = ground_energy(H, h).energy;
        points[i] = p;
        return {std::move(r0.best_theta), std::move(r1.best_theta)};
    };

    if (cfg.warm_start) {
        std::optional<std::pair<ParameterGrid, ParameterGrid>> carry;
        for (std::size_t i = 0; i < grid; ++i) {
            carry = solve_point(i, carry ? &carry->first : nullptr, carry ? &carry->second : nullptr);
        }
    } else {
        detail::parallel_for(grid, cfg.threads, [&](std::size_t i) { solve_point(i, nullptr, nullptr); });
    }

    DeltaCurve curve;
    curve.model = model;
    curve.n_sites = n_sites;
    curve.depth = cfg.depth;
    curve.reference_pair = refs;
    curve.points = std::move(points);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (curve.points[i].delta < curve.points[arg].delta) arg = i;
    }
    curve.located_minimum = curve.points[arg].h;
    return curve;
}

inline DeltaCurve sweep(ModelId model, int n_sites, const SweepConfig& cfg) {
    return sweep(model, n_sites, cfg, default_reference_pair(model));
}

struct DepthScanCell {
    int depth = 0;
    double h = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double delta = 0.0;
};

/// delta_point for every (p, h) pair, rows ordered p-major. Cell c uses the
/// RNG stream (seed, c); same determinism contract as sweep.
inline std::vector<DepthScanCell> depth_scan(ModelId model, int n_sites, std::span<const double> h_values,
                                             std::span<const int> p_values,
                                             std::pair<ReferenceId, ReferenceId> refs,
                                             const OptimizerConfig& opt, int threads = 1) {
    if (h_values.empty()) throw std::invalid_argument("depth_scan: empty h list");
    if (p_values.empty()) throw std::invalid_argument("depth_scan: empty p list");
    for (int p : p_values) {
        if (p < 1) throw std::invalid_argument("depth_scan: depths must be >= 1");
    }
    const GroupedHamiltonian H = build_model(model, n_sites);
    const auto order0 = default_order(model, refs.first);
    const auto order1 = default_order(model, refs.second);

    std::vector<DepthScanCell> cells(h_values.size() * p_values.size());
    detail::parallel_for(cells.size(), threads, [&](std::size_t c) {
        const int p = p_values[c / h_values.size()];
        const double h = h_values[c % h_values.size()];
        const HvaAnsatz a0 = make_ansatz(H, refs.first, p, order0);
        const HvaAnsatz a1 = make_ansatz(H, refs.second, p, order1);
        OptimizerConfig o = opt;
        o.seed = derive_seed(opt.seed, c);
        DepthScanCell cell;
        cell.depth = p;
        cell.h = h;
        cell.e0 = optimize(a0, h, o).best_energy;
        cell.e1 = optimize(a1, h, o).best_energy;
        cell.delta = std::abs(cell.e0 - cell.e1);
        cells[c] = cell;
    });
    return cells;
}

}  // namespace deltavqe
