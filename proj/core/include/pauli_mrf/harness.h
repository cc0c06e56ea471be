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

#ifndef PAULI_MRF_HARNESS_H
#define PAULI_MRF_HARNESS_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pauli_mrf/coefficients.h"
#include "pauli_mrf/estimator.h"
#include "pauli_mrf/graphical_model.h"
#include "pauli_mrf/model_generation.h"
#include "pauli_mrf/model_io.h"
#include "pauli_mrf/shot_bank.h"
#include "pauli_mrf/spam.h"
#include "pauli_mrf/structure.h"

namespace pauli_mrf {

struct ModelSpec {
    /// Load this model file instead of generating one.
    std::optional<std::string> file;
    GenerationParams params;
    /// Generation seed; defaults to the master seed.
    std::optional<uint64_t> seed;
};

struct SpamSpec {
    double q_prep = 0;
    double q_meas = 0;
    /// Explicit per-qubit factors (I, X, Z, Y); override q_prep / q_meas when set.
    std::optional<std::vector<SiteChannel>> prep;
    std::optional<std::vector<SiteChannel>> meas;
};

struct ScheduleSpec {
    /// Repetition counts; empty selects default_k_grid.
    std::vector<uint32_t> ks;
    /// Shots per k; unset selects the budget formula divided by desk_scale.
    std::optional<uint64_t> shots_per_k;
    uint32_t k_cap = 16;
    /// Ceiling applied to formula budgets.
    uint64_t max_total_shots = 10'000'000;
};

struct ConstantsSpec {
    std::optional<double> tau;
    std::optional<uint64_t> L;
    double rho_min_scale = 1e-6;
    uint32_t w_cap = 0;
    uint32_t groups = 0;
    double delta = 0.05;
    double delta_struct = 0.05;
    double desk_scale = 1e3;
    double floor_sigmas = 3;
};

struct ExperimentConfig {
    uint64_t master_seed = 1;
    std::string output_dir = "run";
    ModelSpec model;
    SpamSpec spam;
    ScheduleSpec schedule;
    ProviderMode provider = ProviderMode::kProtocol;
    ConstantsSpec constants;
    Symmetrization symmetrization = Symmetrization::kAnd;
    /// Skip structure learning and use the true hyperedges as candidates.
    bool known_structure = false;
    GaugeConvention gauge = GaugeConvention::kCanonical;
    /// Defaults to alpha / 2.
    std::optional<double> spurious_threshold;
    uint32_t threads = 1;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
ExperimentConfig config_from_json(const Json &json);
Json config_to_json(const ExperimentConfig &config);
ExperimentConfig load_config(const std::string &path);

/// File names inside the output directory.
struct ArtifactNames {
    static constexpr const char *kModel = "model.json";
    static constexpr const char *kShots = "shots.txt";
    static constexpr const char *kAlphas = "alphas.txt";
    static constexpr const char *kStructure = "structure.json";
    static constexpr const char *kLearned = "learned_model.json";
    static constexpr const char *kReport = "report.json";
    static constexpr const char *kReportText = "report.txt";
    static constexpr const char *kAlphaCsv = "alpha_errors.csv";
    static constexpr const char *kTimings = "timings.json";
};

/// Stage runner over one output directory.
///
/// Every stage first looks for its artifact and loads it when present, so a
/// run resumes from whatever was persisted. Artifacts are pure functions of
/// the config; wall-clock timings go to a separate file.
class Experiment {
   public:
    explicit Experiment(ExperimentConfig config);

    const ExperimentConfig &config() const { return config_; }
    std::string path(const char *name) const;

    const GibbsNoiseModel &model();
    const ShotBank &shots();
    /// Marginal source selected by the config.
    MarginalProvider &provider();
    /// Estimates every Pauli up to weight w (default r) and writes the alpha table.
    AlphaTable estimate(uint32_t w = 0);
    const LearnedStructure &structure();
    const LearnedModel &coefficients();
    /// Builds the report from persisted artifacts and writes it (JSON, text, CSV).
    Json report();

    /// Runs every stage, recording failures; returns the report.
    Json pipeline();

    ModelConstants constants();
    std::vector<ScheduleEntry> schedule();

   private:
    template <typename F>
    auto timed(const std::string &stage, F &&f);
    void write_timings() const;
    void persist_alphas();

    ExperimentConfig config_;
    std::optional<GibbsNoiseModel> model_;
    std::optional<ShotBank> bank_;
    std::shared_ptr<const ShotBank> bank_ptr_;
    std::optional<MarginalProvider> provider_;
    std::optional<LearnedStructure> structure_;
    std::optional<LearnedModel> learned_;
    std::map<std::string, double> timings_;
    Json stage_status_ = Json::object();
};

/// Printable defaults for --describe.
Json default_config_json();

}  // namespace pauli_mrf

#endif
