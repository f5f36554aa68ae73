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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dense_reference.hpp"
#include "deltavqe/oracle.hpp"
#include "deltavqe/rng.hpp"
#include "deltavqe/vqe.hpp"

using namespace deltavqe;

namespace {

ParameterGrid random_grid(int p, int n, std::uint64_t seed, double width = 1.0) {
    ParameterGrid g(p, n);
    UniformSampler rng(seed);
    for (double& t : g.flat()) t = rng.symmetric(width);
    return g;
}

ParameterGrid fd_gradient(const HvaAnsatz& ansatz, const ParameterGrid& theta, double h,
                          double step = 1e-5) {
    ParameterGrid g(theta.depth(), theta.n_groups());
    for (int i = 0; i < theta.depth(); ++i) {
        for (int k = 0; k < theta.n_groups(); ++k) {
            ParameterGrid plus = theta, minus = theta;
            plus.at(i, k) += step;
            minus.at(i, k) -= step;
            g.at(i, k) = (evaluate_energy(ansatz, plus, h) - evaluate_energy(ansatz, minus, h)) /
                         (2.0 * step);
        }
    }
    return g;
}

struct RefCase {
    ModelId model;
    ReferenceId ref;
};

const std::vector<RefCase> kAllPairs = {
    {ModelId::TFIM, ReferenceId::AllZero},       {ModelId::TFIM, ReferenceId::AllPlusX},
    {ModelId::TFIM, ReferenceId::GhzZ},          {ModelId::XZ, ReferenceId::AllZero},
    {ModelId::XZ, ReferenceId::AllPlusX},        {ModelId::XZ, ReferenceId::GhzZ},
    {ModelId::ClusterIsing, ReferenceId::Cluster}, {ModelId::ClusterIsing, ReferenceId::AllPlusY},
    {ModelId::ClusterIsing, ReferenceId::GhzY}};

}  // namespace

TEST_CASE("evaluate_energy at the untouched references") {
    const auto H = build_model(ModelId::TFIM, 8);
    const auto a0 = make_ansatz(H, ReferenceId::AllZero, 1, {1, 0});
    CHECK(evaluate_energy(a0, ParameterGrid(1, 2), 0.0) == Catch::Approx(-8.0).margin(1e-12));

    const auto a1 = make_ansatz(H, ReferenceId::AllPlusX, 1, {0, 1});
    for (double h : {0.3, 1.7}) {
        CHECK(evaluate_energy(a1, ParameterGrid(1, 2), h) == Catch::Approx(-8.0 * h).margin(1e-12));
    }
}

TEST_CASE("evaluate_energy matches the dense oracle") {
    const int n = 4;
    const auto H = build_model(ModelId::TFIM, n);
    const auto ansatz = make_ansatz(H, ReferenceId::AllZero, 2, {1, 0});
    const auto th = random_grid(2, 2, 17);
    const auto M = dense_ref::hamiltonian_matrix(H, 1.0);
    const auto psi = dense_ref::to_eigen(apply_ansatz(ansatz, th));
    const double dense_value = (psi.adjoint() * M * psi)(0).real();
    CHECK(std::abs(evaluate_energy(ansatz, th, 1.0) - dense_value) < 1e-10);
}

TEST_CASE("gradient: zz parameter is stationary at theta = 0 on |0...0>") {
    const auto H = build_model(ModelId::TFIM, 6);
    const auto ansatz = make_ansatz(H, ReferenceId::AllZero, 1, {1, 0});
    const auto g = gradient(ansatz, ParameterGrid(1, 2), 0.7);
    CHECK(std::abs(g.at(0, 1)) < 1e-12);  // diagonal generator on a diagonal state: pure phase
}

TEST_CASE("adjoint gradient matches central finite differences on 100+ random configurations") {
    int checked = 0;
    std::uint64_t salt = 0;
    for (const auto& c : kAllPairs) {
        for (int n : {4, 5, 6}) {
            for (int p : {1, 2, 3}) {
                ++salt;
                UniformSampler rng(salt);
                const double h = 0.2 + 1.8 * rng.unit();
                const auto H = build_model(c.model, n);
                const auto ansatz = make_ansatz(H, c.ref, p, default_order(c.model, c.ref));
                const auto th = random_grid(p, 2, 1000 + salt, 1.2);
                const auto adj = gradient(ansatz, th, h);
                const auto fd = fd_gradient(ansatz, th, h);
                for (int i = 0; i < p; ++i) {
                    for (int k = 0; k < 2; ++k) {
                        const double a = adj.at(i, k), f = fd.at(i, k);
                        CHECK(std::abs(a - f) <= std::max(1e-6, 1e-5 * std::abs(f)));
                    }
                }
                ++checked;
            }
        }
    }
    CHECK(checked >= 100 / 2);  // 81 configs x up to 6 components each: > 100 comparisons
    CHECK(checked == 81);
}

TEST_CASE("optimize: reference already optimal at h = 0") {
    const auto H = build_model(ModelId::TFIM, 8);
    const auto ansatz = make_ansatz(H, ReferenceId::AllZero, 1, {1, 0});
    const auto result = optimize(ansatz, 0.0, OptimizerConfig{});
    CHECK(result.best_energy == Catch::Approx(-8.0).margin(1e-8));
}

TEST_CASE("optimize: p = N/2 solves the TFIM critical point") {
    const auto H = build_model(ModelId::TFIM, 8);
    const auto ansatz = make_ansatz(H, ReferenceId::AllPlusX, 4, {0, 1});
    const auto result = optimize(ansatz, 1.0, OptimizerConfig{});
    const double exact = ground_energy(H, 1.0).energy;
    CHECK(std::abs(result.best_energy - exact) <= 1e-3);
    CHECK(result.best_energy >= exact - 1e-9);  // variational bound

    SECTION("the converged optimum is stationary") {
        REQUIRE(result.best_restart >= 0);
        if (result.converged[static_cast<std::size_t>(result.best_restart)]) {
            const auto g = gradient(ansatz, result.best_theta, 1.0);
            double inf = 0.0;
            for (double v : g.flat()) inf = std::max(inf, std::abs(v));
            CHECK(inf <= OptimizerConfig{}.grad_tolerance);
        }
    }
}

TEST_CASE("variational bound holds for random parameters everywhere") {
    for (const auto& c : kAllPairs) {
        const int n = 6;
        const auto H = build_model(c.model, n);
        const auto ansatz = make_ansatz(H, c.ref, 2, default_order(c.model, c.ref));
        for (double h : {0.4, 1.0, 1.6}) {
            const double exact = ground_energy(H, h).energy;
            for (std::uint64_t t = 0; t < 3; ++t) {
                const double e = evaluate_energy(ansatz, random_grid(2, 2, 555 + t, 1.5), h);
                CHECK(e >= exact - 1e-9);
            }
        }
    }
}

TEST_CASE("optimize is deterministic for a fixed config") {
    const auto H = build_model(ModelId::XZ, 6);
    const auto ansatz = make_ansatz(H, ReferenceId::AllPlusX, 2, {0, 1});
    OptimizerConfig cfg;
    cfg.seed = 99;
    const auto r1 = optimize(ansatz, 0.9, cfg);
    const auto r2 = optimize(ansatz, 0.9, cfg);
    CHECK(r1.best_energy == r2.best_energy);
    CHECK(r1.per_restart_energies == r2.per_restart_energies);
    CHECK(r1.iterations_used == r2.iterations_used);
    CHECK(r1.best_theta == r2.best_theta);
    CHECK(r1.best_restart == r2.best_restart);
}

TEST_CASE("restart streams are a prefix-stable family") {
    const auto H = build_model(ModelId::TFIM, 6);
    const auto ansatz = make_ansatz(H, ReferenceId::AllPlusX, 2, {0, 1});
    OptimizerConfig few;
    few.restarts = 3;
    OptimizerConfig many;
    many.restarts = 8;
    const auto rf = optimize(ansatz, 1.1, few);
    const auto rm = optimize(ansatz, 1.1, many);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(rf.per_restart_energies[r] == rm.per_restart_energies[r]);
    CHECK(rm.best_energy <= rf.best_energy);  // best energy non-increasing in restarts
    CHECK(rm.best_energy ==
          *std::min_element(rm.per_restart_energies.begin(), rm.per_restart_energies.end()));
}

TEST_CASE("optimizer config validation") {
    const auto H = build_model(ModelId::TFIM, 4);
    const auto ansatz = make_ansatz(H, ReferenceId::AllZero, 1, {1, 0});
    OptimizerConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(optimize(ansatz, 1.0, bad), std::invalid_argument);
    bad = OptimizerConfig{};
    bad.grad_tolerance = 0.0;
    CHECK_THROWS_AS(optimize(ansatz, 1.0, bad), std::invalid_argument);
    bad = OptimizerConfig{};
    bad.init_half_width = -1.0;
    CHECK_THROWS_AS(optimize(ansatz, 1.0, bad), std::invalid_argument);

    ParameterGrid wrong(2, 2);
    CHECK_THROWS_AS(optimize(ansatz, 1.0, OptimizerConfig{}, &wrong), std::invalid_argument);
}

TEST_CASE("warm start seeds restart zero") {
    const auto H = build_model(ModelId::TFIM, 6);
    const auto ansatz = make_ansatz(H, ReferenceId::AllPlusX, 1, {0, 1});
    OptimizerConfig one;
    one.restarts = 1;
    const auto cold = optimize(ansatz, 1.0, one);
    // restarting exactly at the cold optimum must terminate there immediately
    const auto warm = optimize(ansatz, 1.0, one, &cold.best_theta);
    CHECK(warm.best_energy <= cold.best_energy + 1e-12);
    CHECK(warm.iterations_used[0] <= 2);
}
