// Copyright 2026 The pauli-mrf Authors
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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/harness.h"

using namespace pauli_mrf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitStage = 2;

struct CommonArgs {
    std::string config;
    std::string output_dir;
    int threads = 0;
};

ExperimentConfig resolve(const CommonArgs &args) {
    ExperimentConfig cfg = args.config.empty() ? config_from_json(Json{{"master_seed", 1}}) : load_config(args.config);
    if (!args.output_dir.empty()) {
        cfg.output_dir = args.output_dir;
    }
    if (args.threads > 0) {
        cfg.threads = static_cast<uint32_t>(args.threads);
    }
    return cfg;
}

int run_stage(const CommonArgs &args, const std::function<void(Experiment &)> &body) {
    ExperimentConfig cfg;
    try {
        cfg = resolve(args);
    } catch (const ConfigError &ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    }
    try {
        Experiment exp(cfg);
        body(exp);
    } catch (const ConfigError &ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &ex) {
        std::cerr << "stage failed: " << ex.what() << "\n";
        return kExitStage;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Learn Pauli channels with Markov random field structure."};
    app.require_subcommand(0, 1);
    bool describe = false;
    app.add_flag("--describe", describe, "Print the default config and exit");

    CommonArgs args;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("-c,--config", args.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("-o,--output-dir", args.output_dir, "Override output_dir");
        sub->add_option("-j,--threads", args.threads, "Override worker threads")->check(CLI::PositiveNumber);
    };

    auto *gen = app.add_subcommand("gen-model", "Generate and validate the noise model");
    auto *sim = app.add_subcommand("simulate", "Write the shot bank");
    auto *est = app.add_subcommand("estimate", "Estimate all eigenvalues up to a weight");
    uint32_t weight = 0;
    est->add_option("-w,--weight", weight, "Maximum Pauli weight (default r)");
    auto *ls = app.add_subcommand("learn-structure", "Learn the dependency graph");
    auto *lc = app.add_subcommand("learn-coeffs", "Learn the interaction coefficients");
    auto *ev = app.add_subcommand("evaluate", "Write the report from persisted artifacts");
    auto *pipe = app.add_subcommand("pipeline", "Run every stage and report");
    for (auto *sub : {gen, sim, est, ls, lc, ev, pipe}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (describe) {
        std::cout << default_config_json().dump(2) << "\n";
        return kExitOk;
    }
    if (*gen) {
        return run_stage(args, [](Experiment &e) {
            const auto &m = e.model();
            std::cout << e.path(ArtifactNames::kModel) << ": n=" << m.num_qubits()
                      << " hyperedges=" << m.potentials().size() << "\n";
        });
    }
    if (*sim) {
        return run_stage(args, [](Experiment &e) {
            if (e.config().provider != ProviderMode::kProtocol) {
                throw ConfigError("simulate needs provider 'protocol'.");
            }
            std::cout << e.path(ArtifactNames::kShots) << ": " << e.shots().size() << " shots\n";
        });
    }
    if (*est) {
        return run_stage(args, [weight](Experiment &e) {
            AlphaTable t = e.estimate(weight);
            std::cout << e.path(ArtifactNames::kAlphas) << ": " << t.size() << " eigenvalues\n";
        });
    }
    if (*ls) {
        return run_stage(args, [](Experiment &e) {
            const auto &s = e.structure();
            std::cout << e.path(ArtifactNames::kStructure) << ": " << s.graph.edges().size() << " edges, "
                      << s.hyperedge_candidates.size() << " candidates\n";
        });
    }
    if (*lc) {
        return run_stage(args, [](Experiment &e) {
            const auto &m = e.coefficients();
            std::cout << e.path(ArtifactNames::kLearned) << ": " << m.potentials.size() << " potentials\n";
        });
    }
    if (*ev) {
        return run_stage(args, [](Experiment &e) {
            e.report();
            std::cout << e.path(ArtifactNames::kReportText) << "\n";
        });
    }
    if (*pipe) {
        int code = kExitOk;
        int rc = run_stage(args, [&code](Experiment &e) {
            Json r = e.pipeline();
            for (const auto &[stage, status] : r["stages"].items()) {
                if (status.get<std::string>().rfind("failed", 0) == 0) {
                    code = kExitStage;
                }
            }
            std::cout << e.path(ArtifactNames::kReportText) << "\n";
        });
        return rc != kExitOk ? rc : code;
    }
    std::cout << app.help() << "\n";
    return kExitOk;
}
