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

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltavqe/delta.hpp"
#include "deltavqe/version.hpp"

namespace deltavqe {

// CSV conventions: header row, 12 significant digits, '.' decimal point
// regardless of locale, LF line endings. Precision exceeds every tolerance in
// play, so re-parsing a file reproduces the run at the printed precision.

inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string to_csv(const DeltaCurve& curve) {
    std::string out = "h,e0,e1,delta,e_exact\n";
    for (const auto& p : curve.points) {
        out += format_sig12(p.h);
        out += ',';
        out += format_sig12(p.e0);
        out += ',';
        out += format_sig12(p.e1);
        out += ',';
        out += format_sig12(p.delta);
        out += ',';
        if (p.e_exact) out += format_sig12(*p.e_exact);
        out += '\n';
    }
    return out;
}

inline std::string to_csv(std::span<const DepthScanCell> cells) {
    std::string out = "p,h,e0,e1,delta\n";
    for (const auto& c : cells) {
        out += std::to_string(c.depth);
        out += ',';
        out += format_sig12(c.h);
        out += ',';
        out += format_sig12(c.e0);
        out += ',';
        out += format_sig12(c.e1);
        out += ',';
        out += format_sig12(c.delta);
        out += '\n';
    }
    return out;
}

struct ExactRow {
    double h = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
};

inline std::string to_csv(std::span<const ExactRow> rows) {
    std::string out = "h,E0,E1,gap\n";
    for (const auto& r : rows) {
        out += format_sig12(r.h);
        out += ',';
        out += format_sig12(r.e0);
        out += ',';
        out += format_sig12(r.e1);
        out += ',';
        out += format_sig12(r.gap);
        out += '\n';
    }
    return out;
}

/// Full resolved configuration of a run, written next to every CSV. The keys
/// mirror the CLI flags, so the sidecar doubles as the re-run recipe: feeding
/// them back to the binary reproduces the file byte for byte (threads=1).
struct RunManifest {
    nlohmann::json doc;

    std::string str() const { return doc.dump(2) + "\n"; }
};

inline nlohmann::json optimizer_json(const OptimizerConfig& opt) {
    return {{"restarts", opt.restarts},      {"init-width", opt.init_half_width},
            {"max-iters", opt.max_iterations}, {"grad-tol", opt.grad_tolerance},
            {"energy-tol", opt.energy_tolerance}, {"seed", opt.seed}};
}

inline RunManifest make_sweep_manifest(ModelId model, int n_sites, const SweepConfig& cfg,
                                       std::pair<ReferenceId, ReferenceId> refs) {
    RunManifest m;
    m.doc = {{"command", "sweep"},
             {"version", kVersion},
             {"model", model_name(model)},
             {"sites", n_sites},
             {"depth", cfg.depth},
             {"refs", {reference_name(refs.first), reference_name(refs.second)}},
             {"h-min", cfg.h_min},
             {"h-max", cfg.h_max},
             {"h-step", cfg.h_step},
             {"exact", cfg.compute_exact},
             {"threads", cfg.threads},
             {"warm-start", cfg.warm_start},
             {"optimizer", optimizer_json(cfg.optimizer)}};
    return m;
}

inline RunManifest make_depth_scan_manifest(ModelId model, int n_sites, std::span<const double> h_values,
                                            std::span<const int> p_values,
                                            std::pair<ReferenceId, ReferenceId> refs,
                                            const OptimizerConfig& opt, int threads) {
    RunManifest m;
    m.doc = {{"command", "depth-scan"},
             {"version", kVersion},
             {"model", model_name(model)},
             {"sites", n_sites},
             {"h-list", std::vector<double>(h_values.begin(), h_values.end())},
             {"p-list", std::vector<int>(p_values.begin(), p_values.end())},
             {"refs", {reference_name(refs.first), reference_name(refs.second)}},
             {"threads", threads},
             {"optimizer", optimizer_json(opt)}};
    return m;
}

inline RunManifest make_exact_manifest(ModelId model, int n_sites, std::span<const double> h_values) {
    RunManifest m;
    m.doc = {{"command", "exact"},
             {"version", kVersion},
             {"model", model_name(model)},
             {"sites", n_sites},
             {"h-list", std::vector<double>(h_values.begin(), h_values.end())}};
    return m;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace deltavqe
