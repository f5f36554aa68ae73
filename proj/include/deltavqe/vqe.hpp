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
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "deltavqe/ansatz.hpp"
#include "deltavqe/lbfgs.hpp"
#include "deltavqe/rng.hpp"
#include "deltavqe/statevec.hpp"

namespace deltavqe {

struct OptimizerConfig {
    int restarts = 8;
    double init_half_width = std::numbers::pi / 4;  // uniform symmetric initialization
    int max_iterations = 500;
    double grad_tolerance = 1e-6;
    double energy_tolerance = 1e-10;
    std::uint64_t seed = 1;

    void validate() const {
        if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
        if (!(init_half_width > 0.0)) throw std::invalid_argument("OptimizerConfig: init-width must be > 0");
        if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max-iters must be >= 1");
        if (!(grad_tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: grad-tol must be > 0");
        if (!(energy_tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: energy-tol must be > 0");
    }
};

struct VqeResult {
    double best_energy = std::numeric_limits<double>::infinity();
    ParameterGrid best_theta{1, 1};
    int best_restart = -1;
    std::vector<double> per_restart_energies;
    std::vector<int> iterations_used;
    std::vector<bool> converged;
};

namespace detail {

// Energy / adjoint-gradient engine for one (ansatz, h). Owns the flat term
// list and the two statevector buffers so optimizer iterations do not
// allocate.
class EnergyModel {
  public:
    EnergyModel(const HvaAnsatz& ansatz, double h)
        : ansatz_(ansatz),
          terms_(ansatz.hamiltonian.at(h)),
          psi_(ansatz.hamiltonian.n_sites()),
          lambda_(ansatz.hamiltonian.n_sites()) {}

    double energy(const ParameterGrid& theta) {
        apply_ansatz(ansatz_, theta, psi_);
        return expectation(psi_, terms_);
    }

    // Reverse-sweep adjoint differentiation. Forward pass stores only the
    // final state; the backward pass un-applies each group evolution while
    // accumulating generator overlaps:
    //   dE/dtheta_ik = -2 Im <lambda | H_g | mu>
    // with lambda = H(h)|psi> and mu the state rewound to just after gate
    // (i, k). Costs O(p n) group applications total.
    double energy_and_gradient(const ParameterGrid& theta, ParameterGrid& grad) {
        apply_ansatz(ansatz_, theta, psi_);
        lambda_.set_zero();
        accumulate_pauli_sum(terms_, psi_, lambda_);
        const double e = inner(psi_, lambda_).real();

        const auto& groups = ansatz_.hamiltonian.groups();
        const int n = static_cast<int>(ansatz_.layer_order.size());
        for (int i = ansatz_.depth - 1; i >= 0; --i) {
            for (int k = n - 1; k >= 0; --k) {
                const CommutingGroup& g = groups[ansatz_.layer_order[static_cast<std::size_t>(k)]];
                Complex overlap{0.0, 0.0};
                for (const auto& t : g.terms) overlap += transition_amplitude(lambda_, t, psi_);
                grad.at(i, k) = -2.0 * overlap.imag();
                apply_group_evolution(psi_, g, 1.0, -theta.at(i, k));
                apply_group_evolution(lambda_, g, 1.0, -theta.at(i, k));
            }
        }
        return e;
    }

  private:
    const HvaAnsatz& ansatz_;
    std::vector<PauliString> terms_;
    StateVector psi_;
    StateVector lambda_;
};

}  // namespace detail

/// E(theta; h) = <psi(theta)| H(h) |psi(theta)>
inline double evaluate_energy(const HvaAnsatz& ansatz, const ParameterGrid& theta, double h) {
    detail::EnergyModel model(ansatz, h);
    return model.energy(theta);
}

/// Exact dE/dtheta via the adjoint method; layout matches the parameter grid.
inline ParameterGrid gradient(const HvaAnsatz& ansatz, const ParameterGrid& theta, double h) {
    detail::EnergyModel model(ansatz, h);
    ParameterGrid grad(theta.depth(), theta.n_groups());
    model.energy_and_gradient(theta, grad);
    return grad;
}

/// Multi-start local minimization of E(theta; h). Restart r draws its initial
/// theta uniformly from [-init_half_width, init_half_width) using the RNG
/// stream (seed, r), so results are deterministic for a fixed config and the
/// best energy is non-increasing in the restart count. Non-convergence of a
/// restart is reported, not thrown; only every restart going non-finite is an
/// error. If warm_start is given, restart 0 starts there instead of sampling.
inline VqeResult optimize(const HvaAnsatz& ansatz, double h, const OptimizerConfig& config,
                          const ParameterGrid* warm_start = nullptr) {
    config.validate();
    if (warm_start != nullptr && warm_start->size() != ansatz.parameter_count())
        throw std::invalid_argument("optimize: warm start dimension mismatch");
    detail::EnergyModel model(ansatz, h);
    const int n = static_cast<int>(ansatz.layer_order.size());

    LbfgsOptions lopt;
    lopt.max_iterations = config.max_iterations;
    lopt.grad_tolerance = config.grad_tolerance;
    lopt.value_tolerance = config.energy_tolerance;

    VqeResult out;
    out.best_theta = ParameterGrid(ansatz.depth, n);
    ParameterGrid scratch(ansatz.depth, n);  // evaluation copy; must not alias the iterate
    ParameterGrid grad(ansatz.depth, n);
    auto objective = [&](std::span<const double> x, std::span<double> g) {
        std::copy(x.begin(), x.end(), scratch.flat().begin());
        const double e = model.energy_and_gradient(scratch, grad);
        std::copy(grad.flat().begin(), grad.flat().end(), g.begin());
        return e;
    };

    std::vector<double> x(ansatz.parameter_count());
    for (int r = 0; r < config.restarts; ++r) {
        if (warm_start != nullptr && r == 0) {
            const auto warm = warm_start->flat();
            std::copy(warm.begin(), warm.end(), x.begin());
        } else {
            UniformSampler rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
            for (double& t : x) t = rng.symmetric(config.init_half_width);
        }
        const LbfgsSummary summary = lbfgs_minimize(objective, std::span<double>(x), lopt);
        out.per_restart_energies.push_back(summary.value);
        out.iterations_used.push_back(summary.iterations);
        out.converged.push_back(summary.converged);
        if (std::isfinite(summary.value) && summary.value < out.best_energy) {
            out.best_energy = summary.value;
            std::copy(x.begin(), x.end(), out.best_theta.flat().begin());
            out.best_restart = r;
        }
    }
    if (out.best_restart < 0) throw std::runtime_error("optimize: every restart diverged to a non-finite energy");
    return out;
}

}  // namespace deltavqe
