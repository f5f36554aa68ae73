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
#include <cstddef>
#include <span>
#include <vector>

namespace deltavqe {

struct LbfgsOptions {
    int max_iterations = 500;
    double grad_tolerance = 1e-6;    // stop when ||grad||_inf below
    double value_tolerance = 1e-10;  // stop when per-step improvement below
    int history = 10;                // stored (s, y) pairs
    double armijo_c1 = 1e-4;
    double backtrack_factor = 0.5;
    int max_backtracks = 60;
};

struct LbfgsSummary {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;  // gradient inf-norm at the final point is within grad_tolerance
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline bool all_finite(std::span<const double> a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace detail

/// Limited-memory BFGS with Armijo backtracking on the analytic gradient.
/// `value_and_gradient(x, grad_out) -> f` is evaluated at points x; x is
/// updated in place to the best point found. Fully sequential and
/// deterministic: same start point, same arithmetic, same result.
template <typename F>
LbfgsSummary lbfgs_minimize(F&& value_and_gradient, std::span<double> x, const LbfgsOptions& opt) {
    const std::size_t n = x.size();
    std::vector<double> g(n), x_trial(n), g_trial(n), d(n), alpha_buf;
    std::vector<std::vector<double>> s_hist, y_hist;
    std::vector<double> rho_hist;

    double f = value_and_gradient(std::span<const double>(x.data(), n), std::span<double>(g));
    if (!std::isfinite(f) || !detail::all_finite(g)) return {f, 0, false};

    LbfgsSummary out{f, 0, false};
    const auto stationary = [&] { return detail::norm_inf(g) <= opt.grad_tolerance; };
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        if (stationary()) {
            out.converged = true;
            return out;
        }

        // d = -H g via the two-loop recursion
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        const std::size_t m = s_hist.size();
        alpha_buf.assign(m, 0.0);
        for (std::size_t k = m; k-- > 0;) {
            alpha_buf[k] = rho_hist[k] * detail::dot(s_hist[k], d);
            for (std::size_t i = 0; i < n; ++i) d[i] -= alpha_buf[k] * y_hist[k][i];
        }
        if (m > 0) {
            const double gamma = 1.0 / (rho_hist[m - 1] * detail::dot(y_hist[m - 1], y_hist[m - 1]));
            for (std::size_t i = 0; i < n; ++i) d[i] *= gamma;
        }
        for (std::size_t k = 0; k < m; ++k) {
            const double beta = rho_hist[k] * detail::dot(y_hist[k], d);
            for (std::size_t i = 0; i < n; ++i) d[i] += (alpha_buf[k] - beta) * s_hist[k][i];
        }

        double dg = detail::dot(d, g);
        if (dg >= 0.0) {  // not a descent direction; restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            dg = -detail::dot(g, g);
        }

        double step = s_hist.empty() ? 1.0 / std::max(1.0, detail::norm2(g)) : 1.0;
        bool accepted = false;
        double f_trial = f;
        for (int bt = 0; bt < opt.max_backtracks; ++bt) {
            for (std::size_t i = 0; i < n; ++i) x_trial[i] = x[i] + step * d[i];
            f_trial = value_and_gradient(std::span<const double>(x_trial), std::span<double>(g_trial));
            if (std::isfinite(f_trial) && detail::all_finite(g_trial) &&
                f_trial <= f + opt.armijo_c1 * step * dg) {
                accepted = true;
                break;
            }
            step *= opt.backtrack_factor;
        }
        out.iterations = iter;
        if (!accepted) {
            if (!s_hist.empty()) {  // drop curvature info and retry as steepest descent
                s_hist.clear();
                y_hist.clear();
                rho_hist.clear();
                continue;
            }
            out.converged = stationary();  // stuck along -g; typically a flat spot
            return out;
        }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_trial[i] - x[i];
            y[i] = g_trial[i] - g[i];
        }
        const double sy = detail::dot(s, y);
        if (sy > 1e-10 * detail::norm2(s) * detail::norm2(y)) {
            if (static_cast<int>(s_hist.size()) == opt.history) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
        }

        const double improvement = f - f_trial;
        std::copy(x_trial.begin(), x_trial.end(), x.begin());
        g.swap(g_trial);
        f = f_trial;
        out.value = f;
        if (improvement <= opt.value_tolerance) {
            out.converged = stationary();
            return out;
        }
    }
    out.converged = stationary();
    return out;
}

}  // namespace deltavqe
