// Copyright 2026 The qavg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// qavg: command-line driver for the shift-averaged QPE workflow.

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qavg/error.hpp"
#include "qavg_cli/commands.hpp"

namespace {

using qavg::cli::RunConfig;
using qavg::io::Json;

// Collects flags that were actually given, as config-key overrides.
class Overrides {
   public:
    template <typename T>
    void add(CLI::App &app, const std::string &flag, const std::string &key, const std::string &help) {
        auto value = std::make_shared<T>();
        auto *opt = app.add_option(flag, *value, help);
        apply_.push_back([opt, value, key](Json &j) {
            if (opt->count() > 0) {
                j[key] = *value;
            }
        });
    }

    void custom(CLI::App &app, const std::string &flag, const std::string &help,
                std::function<void(const std::string &, Json &)> f) {
        auto value = std::make_shared<std::string>();
        auto *opt = app.add_option(flag, *value, help);
        apply_.push_back([opt, value, f](Json &j) {
            if (opt->count() > 0) {
                f(*value, j);
            }
        });
    }

    Json collect() const {
        Json j = Json::object();
        for (const auto &f : apply_) {
            f(j);
        }
        return j;
    }

   private:
    std::vector<std::function<void(Json &)>> apply_;
};

double to_number(const std::string &s, const std::string &flag) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw qavg::InputError(flag + ": '" + s + "' is not a number");
}

std::vector<double> numbers(const std::string &s, const std::string &flag, std::size_t n) {
    auto parts = qavg::cli::split_list(s);
    if (parts.size() != n) {
        throw qavg::InputError(flag + " expects " + std::to_string(n) + " comma-separated values");
    }
    std::vector<double> out;
    for (const auto &p : parts) {
        out.push_back(to_number(p, flag));
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Shift-averaged quantum phase estimation for a two-orbital Hubbard dimer"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    unsigned threads = 0;
    app.add_option("--config", config_path, "Flat JSON config file; flags override it")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (default: current directory)");
    app.add_option("--threads", threads, "Worker threads for sampling (0: all cores)");

    Overrides ov;
    ov.add<std::string>(app, "--variant", "variant", "Circuit variant: phys3a, phys1a or log1a");
    ov.add<std::uint64_t>(app, "--shots", "shots", "Shots per setting");
    ov.add<std::uint64_t>(app, "--seed", "seed", "Master seed");
    ov.add<std::string>(app, "--rte", "rte", "Time evolution: exact or trotter:<steps>");
    ov.add<double>(app, "--delta-mu", "delta_mu", "Chemical-potential shift (eV)");
    ov.add<std::string>(app, "--params", "params", "Dimer source: reference or wannier");
    ov.add<std::string>(app, "--wannier", "wannier_file", "Wannier JSON used with --params wannier");
    ov.add<int>(app, "--restarts", "restarts", "Optimizer restarts");
    ov.add<std::string>(app, "--measure", "measure", "Discrepancy: l1, infidelity or nll");
    ov.add<std::string>(app, "--window", "window", "Energy search window: centered or origin");
    ov.add<int>(app, "--resolution", "resolution", "Landscape grid points per axis");
    ov.add<std::string>(app, "--fixed-axis", "fixed_axis", "Landscape axis held fixed: theta, eps0 or eps1");
    ov.add<double>(app, "--fixed-value", "fixed_value", "Value of the fixed axis (default: optimized)");
    ov.add<std::string>(app, "--sector", "sector", "Landscape sector: electron or hole");
    ov.add<double>(app, "--delta", "delta", "Lorentzian half width (eV)");
    ov.custom(app, "--noise", "Depolarizing and readout rates p1,p2,pm", [](const std::string &s, Json &j) {
        auto v = numbers(s, "--noise", 3);
        j["p1"] = v[0];
        j["p2"] = v[1];
        j["pm"] = v[2];
    });
    ov.custom(app, "--shifts", "Comma-separated shift indices", [](const std::string &s, Json &j) {
        std::vector<int> shifts;
        for (const auto &p : qavg::cli::split_list(s)) {
            double v = to_number(p, "--shifts");
            if (v != static_cast<int>(v)) {
                throw qavg::InputError("--shifts takes integers");
            }
            shifts.push_back(static_cast<int>(v));
        }
        j["shifts"] = shifts;
    });
    ov.custom(app, "--grid", "Energy grid low,high,step (eV)", [](const std::string &s, Json &j) {
        auto v = numbers(s, "--grid", 3);
        j["grid_low"] = v[0];
        j["grid_high"] = v[1];
        j["grid_step"] = v[2];
    });

    std::vector<std::string> inputs;
    using Command = std::function<qavg::cli::CommandResult(const RunConfig &)>;
    Command run;
    auto simple = [&](const char *name, const char *help, auto fn) {
        app.add_subcommand(name, help)->callback([&run, fn] { run = fn; });
    };
    auto with_inputs = [&](const char *name, const char *help, auto fn, bool required) {
        auto *sub = app.add_subcommand(name, help);
        auto *opt = sub->add_option("inputs", inputs, "Input files");
        if (required) {
            opt->required()->check(CLI::ExistingFile);
        } else {
            opt->check(CLI::ExistingFile);
        }
        sub->callback([&run, &inputs, fn] {
            run = [&inputs, fn](const RunConfig &c) {
                return fn(c, std::vector<std::filesystem::path>(inputs.begin(), inputs.end()));
            };
        });
    };
    simple("fci", "Ground state, natural orbitals and excitation tables", qavg::cli::cmd_fci);
    simple("sample", "Monte Carlo histograms for every setting", qavg::cli::cmd_sample);
    simple("exact-dist", "Noiseless outcome distributions for every setting", qavg::cli::cmd_exact_dist);
    with_inputs("optimize", "Fit each sector to histogram files", qavg::cli::cmd_optimize, true);
    with_inputs("dos", "Density of states from fit files (none: exact parameters)", qavg::cli::cmd_dos, false);
    with_inputs("direct", "Direct per-shift density of states from histogram files", qavg::cli::cmd_direct, true);
    with_inputs("landscape", "Cost landscape on a plane", qavg::cli::cmd_landscape, true);
    simple("survival", "Checkpoint survival table of noisy log1a runs", qavg::cli::cmd_survival);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        Json file = Json::object();
        if (!config_path.empty()) {
            file = qavg::io::read_json(config_path);
        }
        Json resolved = qavg::cli::merge_flat(qavg::cli::merge_flat(RunConfig{}.to_json(), file), ov.collect());
        RunConfig config = RunConfig::from_json(resolved);
        config.threads = threads;
        if (!out_dir.empty()) {
            config.out = out_dir;
        }
        auto result = run(config);
        for (const auto &p : result.written) {
            std::cerr << "wrote " << p.string() << '\n';
        }
        if (!result.summary.empty()) {
            std::cout << result.summary << '\n';
        }
    } catch (const std::exception &e) {
        std::cerr << "qavg: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
