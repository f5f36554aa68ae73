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

// Command-line front end. Exit codes: 0 success, 1 computation failure,
// 2 bad flags. Partial output files are removed on failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "deltavqe/delta.hpp"
#include "deltavqe/run_io.hpp"
#include "deltavqe/version.hpp"

namespace dv = deltavqe;

namespace {

struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<dv::ReferenceId, dv::ReferenceId> parse_ref_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw FlagError("--refs expects exactly two names, e.g. --refs zero,plus-x");
    return {dv::parse_reference(text.substr(0, comma)), dv::parse_reference(text.substr(comma + 1))};
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

// "1..6" or "1,3,5" or a mix: "1,4..6"
std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) continue;
        try {
            const auto dots = tok.find("..");
            if (dots != std::string::npos) {
                const int lo = std::stoi(tok.substr(0, dots));
                const int hi = std::stoi(tok.substr(dots + 2));
                if (hi < lo) throw FlagError(std::string(flag) + ": descending range '" + tok + "'");
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoi(tok));
            }
        } catch (const FlagError&) {
            throw;
        } catch (const std::exception&) {
            throw FlagError(std::string(flag) + ": cannot parse '" + tok + "'");
        }
    }
    if (out.empty()) throw FlagError(std::string(flag) + " is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw FlagError(std::string(flag) + ": cannot parse '" + tok + "'");
        }
    }
    if (out.empty()) throw FlagError(std::string(flag) + " is empty");
    return out;
}

void remove_quietly(const std::string& path) { std::remove(path.c_str()); }

struct OptimizerFlags {
    int restarts = 8;
    double init_width = dv::OptimizerConfig{}.init_half_width;
    int max_iters = 500;
    double grad_tol = 1e-6;
    double energy_tol = 1e-10;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", restarts, "independent optimizer restarts")->capture_default_str();
        cmd->add_option("--init-width", init_width, "uniform init half-width (radians)")->capture_default_str();
        cmd->add_option("--max-iters", max_iters, "iteration cap per restart")->capture_default_str();
        cmd->add_option("--grad-tol", grad_tol, "stop when gradient inf-norm below")->capture_default_str();
        cmd->add_option("--energy-tol", energy_tol, "stop when step improvement below")->capture_default_str();
        cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    }

    dv::OptimizerConfig config() const {
        dv::OptimizerConfig opt;
        opt.restarts = restarts;
        opt.init_half_width = init_width;
        opt.max_iterations = max_iters;
        opt.grad_tolerance = grad_tol;
        opt.energy_tolerance = energy_tol;
        opt.seed = seed;
        return opt;
    }
};

int run_models(const std::string& model_name, int sites) {
    const dv::ModelId model = dv::parse_model(model_name);
    const dv::GroupedHamiltonian H = dv::build_model(model, sites);
    std::cout << "model " << dv::model_name(model) << ", sites " << sites << "\n";
    for (std::size_t g = 0; g < H.n_groups(); ++g) {
        std::cout << "group " << H.groups()[g].label << " (weight " << (g == 0 ? "1" : "h") << "):\n";
        for (const auto& t : H.groups()[g].terms) std::cout << "  " << t.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(dv::kProjectName) + " " + dv::kVersion +
                 " — Delta-VQE critical-point locator for spin chains"};
    app.require_subcommand(1);
    // long-form help only: the short -h would shadow the --h coupling flag
    app.set_help_flag("--help", "print help");

    // ------------------------------ models ------------------------------
    auto* cmd_models = app.add_subcommand("models", "print the Hamiltonian catalog as Pauli terms");
    cmd_models->set_help_flag("--help", "print help");
    std::string models_model = "tfim";
    int models_sites = 8;
    cmd_models->add_option("--model", models_model, "tfim|xz|cluster")->capture_default_str();
    cmd_models->add_option("--sites", models_sites, "chain length (>= 3)")->capture_default_str();

    // ------------------------------ exact -------------------------------
    auto* cmd_exact = app.add_subcommand("exact", "exact low spectrum over an h grid (CSV h,E0,E1,gap)");
    cmd_exact->set_help_flag("--help", "print help");
    std::string exact_model = "tfim";
    int exact_sites = 8;
    double exact_hmin = 0.2, exact_hmax = 2.0, exact_hstep = 0.05;
    std::optional<double> exact_h;
    std::string exact_out;
    cmd_exact->add_option("--model", exact_model, "tfim|xz|cluster")->capture_default_str();
    cmd_exact->add_option("--sites", exact_sites, "chain length (3..16)")->capture_default_str();
    cmd_exact->add_option("--h-min", exact_hmin)->capture_default_str();
    cmd_exact->add_option("--h-max", exact_hmax)->capture_default_str();
    cmd_exact->add_option("--h-step", exact_hstep)->capture_default_str();
    cmd_exact->add_option("--h", exact_h, "single h instead of a grid");
    cmd_exact->add_option("--out", exact_out, "CSV path (default: stdout)");

    // ------------------------------- vqe --------------------------------
    auto* cmd_vqe = app.add_subcommand("vqe", "optimize one reference at one h");
    cmd_vqe->set_help_flag("--help", "print help");
    std::string vqe_model = "tfim";
    int vqe_sites = 8, vqe_depth = 1;
    double vqe_h = 1.0;
    std::string vqe_reference, vqe_order;
    OptimizerFlags vqe_opt;
    cmd_vqe->add_option("--model", vqe_model, "tfim|xz|cluster")->capture_default_str();
    cmd_vqe->add_option("--sites", vqe_sites)->capture_default_str();
    cmd_vqe->add_option("--depth", vqe_depth, "HVA layers p")->capture_default_str();
    cmd_vqe->add_option("--h", vqe_h, "field coupling")->capture_default_str();
    cmd_vqe->add_option("--reference", vqe_reference, "zero|plus-x|plus-y|cluster|ghz-z|ghz-y "
                                                      "(default: model's first reference)");
    cmd_vqe->add_option("--order", vqe_order, "per-layer group order as labels, e.g. x,zz "
                                              "(default: stabilizer-last rule)");
    vqe_opt.attach(cmd_vqe);

    // ------------------------------ sweep -------------------------------
    auto* cmd_sweep = app.add_subcommand("sweep", "Delta-VQE h sweep (CSV h,e0,e1,delta,e_exact)");
    cmd_sweep->set_help_flag("--help", "print help");
    std::string sweep_model = "tfim";
    int sweep_sites = 8, sweep_depth = 1, sweep_threads = 1;
    double sweep_hmin = 0.2, sweep_hmax = 2.0, sweep_hstep = 0.05;
    std::string sweep_refs, sweep_out = "sweep.csv";
    bool sweep_exact = false, sweep_warm = false;
    OptimizerFlags sweep_opt;
    cmd_sweep->add_option("--model", sweep_model, "tfim|xz|cluster")->capture_default_str();
    cmd_sweep->add_option("--sites", sweep_sites)->capture_default_str();
    cmd_sweep->add_option("--depth", sweep_depth, "HVA layers p")->capture_default_str();
    cmd_sweep->add_option("--h-min", sweep_hmin)->capture_default_str();
    cmd_sweep->add_option("--h-max", sweep_hmax)->capture_default_str();
    cmd_sweep->add_option("--h-step", sweep_hstep)->capture_default_str();
    cmd_sweep->add_option("--refs", sweep_refs, "reference pair a,b (default: model's pair)");
    cmd_sweep->add_flag("--exact", sweep_exact, "add the exact ground energy column");
    cmd_sweep->add_option("--out", sweep_out, "CSV path; manifest goes to PATH.manifest.json")
        ->capture_default_str();
    cmd_sweep->add_option("--threads", sweep_threads, "worker threads (1 = deterministic byte-for-byte)")
        ->capture_default_str();
    cmd_sweep->add_flag("--warm-start", sweep_warm, "chain restart 0 along h (study only; sequential)");
    sweep_opt.attach(cmd_sweep);

    // ---------------------------- depth-scan ----------------------------
    auto* cmd_scan = app.add_subcommand("depth-scan", "Delta E over (p, h) pairs (CSV p,h,e0,e1,delta)");
    cmd_scan->set_help_flag("--help", "print help");
    std::string scan_model = "tfim";
    int scan_sites = 8, scan_threads = 1;
    std::string scan_hlist, scan_plist, scan_refs, scan_out = "depth_scan.csv";
    OptimizerFlags scan_opt;
    cmd_scan->add_option("--model", scan_model, "tfim|xz|cluster")->capture_default_str();
    cmd_scan->add_option("--sites", scan_sites)->capture_default_str();
    cmd_scan->add_option("--h-list", scan_hlist, "comma list, e.g. 0.8,1.0,1.2")->required();
    cmd_scan->add_option("--p-list", scan_plist, "comma list / ranges, e.g. 1..6")->required();
    cmd_scan->add_option("--refs", scan_refs, "reference pair a,b (default: model's pair)");
    cmd_scan->add_option("--out", scan_out, "CSV path; manifest goes to PATH.manifest.json")
        ->capture_default_str();
    cmd_scan->add_option("--threads", scan_threads)->capture_default_str();
    scan_opt.attach(cmd_scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_models)) return run_models(models_model, models_sites);

        if (app.got_subcommand(cmd_exact)) {
            const dv::ModelId model = dv::parse_model(exact_model);
            if (exact_sites > 16) throw FlagError("--sites: exact diagonalization is capped at 16 sites");
            std::vector<double> hs;
            if (exact_h) {
                hs.push_back(*exact_h);
            } else {
                if (!(exact_hmin < exact_hmax))
                    throw FlagError("--h-min (" + std::to_string(exact_hmin) + ") must be < --h-max (" +
                                    std::to_string(exact_hmax) + ")");
                if (!(exact_hstep > 0.0)) throw FlagError("--h-step must be > 0");
                const auto n = static_cast<std::size_t>(std::llround((exact_hmax - exact_hmin) / exact_hstep)) + 1;
                for (std::size_t i = 0; i < n; ++i) hs.push_back(exact_hmin + static_cast<double>(i) * exact_hstep);
            }
            const dv::GroupedHamiltonian H = dv::build_model(model, exact_sites);
            try {
                std::vector<dv::ExactRow> rows;
                rows.reserve(hs.size());
                for (double h : hs) {
                    const auto s = dv::low_spectrum(H, h);
                    rows.push_back({h, s.e0, s.e1, std::max(0.0, s.e1 - s.e0)});
                }
                const std::string csv = dv::to_csv(std::span<const dv::ExactRow>(rows));
                if (exact_out.empty()) {
                    std::cout << csv;
                } else {
                    try {
                        dv::write_file(exact_out, csv);
                        dv::write_file(exact_out + ".manifest.json",
                                       dv::make_exact_manifest(model, exact_sites, hs).str());
                    } catch (...) {
                        remove_quietly(exact_out);
                        remove_quietly(exact_out + ".manifest.json");
                        throw;
                    }
                }
                return 0;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }

        if (app.got_subcommand(cmd_vqe)) {
            const dv::ModelId model = dv::parse_model(vqe_model);
            const dv::GroupedHamiltonian H = dv::build_model(model, vqe_sites);
            const dv::ReferenceId reference =
                vqe_reference.empty() ? dv::default_reference_pair(model).first : dv::parse_reference(vqe_reference);
            std::vector<std::size_t> order;
            bool custom_order = false;
            if (vqe_order.empty()) {
                order = dv::default_order(model, reference);
            } else {
                custom_order = true;
                for (const auto& label : split(vqe_order, ',')) order.push_back(H.group_index(label));
            }
            const dv::OptimizerConfig opt = vqe_opt.config();
            opt.validate();
            const dv::HvaAnsatz ansatz = dv::make_ansatz(H, reference, vqe_depth, order, !custom_order);
            try {
                const dv::VqeResult result = dv::optimize(ansatz, vqe_h, opt);
                int converged = 0;
                for (bool c : result.converged) converged += c ? 1 : 0;
                std::cout << "E = " << dv::format_sig12(result.best_energy) << "\n";
                std::cout << "reference = " << dv::reference_name(reference) << ", order =";
                for (std::size_t g : order) std::cout << " " << H.groups()[g].label;
                std::cout << ", depth = " << vqe_depth << "\n";
                std::cout << "converged " << converged << "/" << result.per_restart_energies.size()
                          << " restarts, best restart " << result.best_restart << "\n";
                return 0;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }

        if (app.got_subcommand(cmd_sweep)) {
            const dv::ModelId model = dv::parse_model(sweep_model);
            const auto refs = sweep_refs.empty() ? dv::default_reference_pair(model) : parse_ref_pair(sweep_refs);
            dv::SweepConfig cfg;
            cfg.depth = sweep_depth;
            cfg.h_step = sweep_hstep;
            cfg.compute_exact = sweep_exact;
            cfg.threads = sweep_threads;
            cfg.warm_start = sweep_warm;
            cfg.optimizer = sweep_opt.config();
            if (!(sweep_hmin < sweep_hmax))
                throw FlagError("--h-min (" + std::to_string(sweep_hmin) + ") must be < --h-max (" +
                                std::to_string(sweep_hmax) + ")");
            cfg.h_min = sweep_hmin;
            cfg.h_max = sweep_hmax;
            cfg.validate();
            if (sweep_exact && sweep_sites > 16)
                throw FlagError("--exact with --sites > 16 exceeds the diagonalization guard");
            dv::build_model(model, sweep_sites);                  // validates --sites
            dv::default_order(model, refs.first);                 // validates --refs
            dv::default_order(model, refs.second);
            const std::string manifest_path = sweep_out + ".manifest.json";
            try {
                const dv::DeltaCurve curve = dv::sweep(model, sweep_sites, cfg, refs);
                try {
                    dv::write_file(sweep_out, dv::to_csv(curve));
                    dv::write_file(manifest_path, dv::make_sweep_manifest(model, sweep_sites, cfg, refs).str());
                } catch (...) {
                    remove_quietly(sweep_out);
                    remove_quietly(manifest_path);
                    throw;
                }
                std::cout << "h_c = " << dv::format_sig12(curve.located_minimum) << "\n";
                return 0;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }

        if (app.got_subcommand(cmd_scan)) {
            const dv::ModelId model = dv::parse_model(scan_model);
            const auto refs = scan_refs.empty() ? dv::default_reference_pair(model) : parse_ref_pair(scan_refs);
            const std::vector<double> hs = parse_double_list(scan_hlist, "--h-list");
            const std::vector<int> ps = parse_int_list(scan_plist, "--p-list");
            if (scan_threads < 1) throw FlagError("--threads must be >= 1");
            const dv::OptimizerConfig opt = scan_opt.config();
            opt.validate();
            dv::build_model(model, scan_sites);
            dv::default_order(model, refs.first);
            dv::default_order(model, refs.second);
            const std::string manifest_path = scan_out + ".manifest.json";
            try {
                const auto cells = dv::depth_scan(model, scan_sites, hs, ps, refs, opt, scan_threads);
                try {
                    dv::write_file(scan_out, dv::to_csv(std::span<const dv::DepthScanCell>(cells)));
                    dv::write_file(manifest_path,
                                   dv::make_depth_scan_manifest(model, scan_sites, hs, ps, refs, opt,
                                                                scan_threads)
                                       .str());
                } catch (...) {
                    remove_quietly(scan_out);
                    remove_quietly(manifest_path);
                    throw;
                }
                return 0;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        // configuration errors from validation (bad values, unsupported pairings)
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
