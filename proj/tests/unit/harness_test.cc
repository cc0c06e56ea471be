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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "pauli_mrf/errors.h"
#include "pauli_mrf/harness.h"

using namespace pauli_mrf;
namespace fs = std::filesystem;

namespace {

class HarnessTest : public ::testing::Test {
   protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("pauli_mrf_harness_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    Json base(const std::string &dir) const {
        return Json{{"master_seed", 5},
                    {"output_dir", (root_ / dir).string()},
                    {"model", {{"topology", "chain"}, {"n", 4}}},
                    {"schedule", {{"k", {1, 2}}, {"shots_per_k", 20000}}},
                    {"constants", {{"tau", 0.01}, {"L", 3}}}};
    }

    static std::string slurp(const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    fs::path root_;
};

}  // namespace

TEST(Config, RequiresSeed) {
    EXPECT_THROW(config_from_json(Json::object()), ConfigError);
    EXPECT_NO_THROW(config_from_json(Json{{"master_seed", 1}}));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"sed", 2}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"model", {{"nn", 2}}}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"schedule", {{"shots_per_k", 0}}}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"schedule", {{"k", {0, 1}}}}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"model", {{"alpha", 0.5}, {"beta", 0.4}}}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"provider", "oracle"}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", "one"}}), ConfigError);
    EXPECT_THROW(config_from_json(Json{{"master_seed", 1}, {"spam", {{"prep", {{0.5, 0.5}}}}}}), ConfigError);
}

TEST(Config, RoundTrip) {
    Json j{{"master_seed", 9},
           {"provider", "exact"},
           {"model", {{"topology", "cycle"}, {"n", 5}, {"seed", 3}}},
           {"spam", {{"q_prep", 0.1}, {"meas", {{0.9, 0.05, 0.05, 0}}}}},
           {"schedule", {{"k", {1, 4}}, {"shots_per_k", 100}}},
           {"constants", {{"tau", 0.02}, {"L", 2}, {"groups", 5}}},
           {"structure", {{"symmetrization", "or"}, {"known", true}}},
           {"coefficients", {{"gauge", "unrestricted"}, {"spurious_threshold", 0.1}}}};
    ExperimentConfig c = config_from_json(j);
    Json again = config_to_json(c);
    EXPECT_EQ(config_to_json(config_from_json(again)), again);
    EXPECT_EQ(c.provider, ProviderMode::kExact);
    EXPECT_EQ(c.symmetrization, Symmetrization::kOr);
    EXPECT_TRUE(c.known_structure);
    EXPECT_EQ(*c.schedule.shots_per_k, 100u);
    EXPECT_EQ(default_config_json()["master_seed"], 1);
}

TEST_F(HarnessTest, ExactPipelineSkipsSimulation) {
    Json j = base("exact");
    j["provider"] = "exact";
    j["constants"]["tau"] = 0.004;
    Experiment e(config_from_json(j));
    Json r = e.pipeline();
    EXPECT_EQ(r["stages"]["simulate"], "skipped (exact provider)");
    EXPECT_FALSE(fs::exists(root_ / "exact" / ArtifactNames::kShots));
    EXPECT_TRUE(r["structure"]["recovered"].get<bool>());
    EXPECT_LT(r["coefficients"]["max_theta_error"].get<double>(), 1e-10);
    EXPECT_LT(r["distances"]["diamond"].get<double>(), 1e-10);
    EXPECT_TRUE(fs::exists(root_ / "exact" / ArtifactNames::kReportText));
}

TEST_F(HarnessTest, ProtocolPipelineWritesEveryArtifact) {
    Experiment e(config_from_json(base("proto")));
    Json r = e.pipeline();
    for (const char *f : {ArtifactNames::kModel, ArtifactNames::kShots, ArtifactNames::kAlphas,
                          ArtifactNames::kStructure, ArtifactNames::kLearned, ArtifactNames::kReport,
                          ArtifactNames::kReportText, ArtifactNames::kAlphaCsv, ArtifactNames::kTimings}) {
        EXPECT_TRUE(fs::exists(root_ / "proto" / f)) << f;
    }
    EXPECT_EQ(r["shots"]["total"], 40000);
    EXPECT_EQ(r["stages"]["learn-coeffs"], "ok");
    Json s = read_json_file((root_ / "proto" / ArtifactNames::kStructure).string());
    EXPECT_GT(s["lazy_estimation"]["regions_queried"].get<int>(), 0);
}

TEST_F(HarnessTest, DeterministicAcrossThreadsAndResume) {
    Json a = base("a");
    Json b = base("b");
    b["threads"] = 3;
    Experiment(config_from_json(a)).pipeline();
    Experiment(config_from_json(b)).pipeline();
    std::vector<const char *> files{ArtifactNames::kModel,   ArtifactNames::kShots,   ArtifactNames::kAlphas,
                                    ArtifactNames::kStructure, ArtifactNames::kLearned, ArtifactNames::kReport,
                                    ArtifactNames::kReportText, ArtifactNames::kAlphaCsv};
    for (const char *f : files) {
        EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
    }
    std::string report = slurp(root_ / "a" / ArtifactNames::kReport);
    fs::remove(root_ / "a" / ArtifactNames::kReport);
    Experiment(config_from_json(a)).report();
    EXPECT_EQ(slurp(root_ / "a" / ArtifactNames::kReport), report);

    fs::remove(root_ / "b" / ArtifactNames::kStructure);
    fs::remove(root_ / "b" / ArtifactNames::kLearned);
    Experiment(config_from_json(b)).pipeline();
    for (const char *f : files) {
        EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
    }
}

TEST_F(HarnessTest, StageFailureRecordedAndDownstreamSkipped) {
    Json j = base("broken");
    fs::create_directories(root_ / "broken");
    std::ofstream(root_ / "broken" / ArtifactNames::kShots) << "not a shot bank\n";
    Experiment e(config_from_json(j));
    Json r = e.pipeline();
    EXPECT_EQ(r["stages"]["gen-model"], "ok");
    EXPECT_EQ(r["stages"]["simulate"].get<std::string>().rfind("failed", 0), 0u);
    EXPECT_EQ(r["stages"]["learn-structure"], "skipped");
    EXPECT_EQ(r["stages"]["learn-coeffs"], "skipped");
    EXPECT_FALSE(r.contains("structure"));
}

TEST_F(HarnessTest, ModelViolatingConditionsIsConfigError) {
    Json model{{"format", "pauli-mrf-model"},
               {"version", 1},
               {"n", 2},
               {"r", 2},
               {"alpha", 0.4},
               {"beta", 0.4},
               {"hyperedges", Json::array({Json{{"qubits", {0, 1}}, {"potential", Json::object()}}})}};
    // An all-zero tensor violates the lower bound on maximal hyperedges.
    Json pot = Json::object();
    for (uint64_t i = 0; i < 16; i++) {
        pot[PauliString::from_index(2, i).str()] = 0.0;
    }
    model["hyperedges"][0]["potential"] = pot;
    write_json_file(model, (root_ / "bad_model.json").string());
    Json j = base("bad");
    j["model"] = {{"file", (root_ / "bad_model.json").string()}};
    Experiment e(config_from_json(j));
    EXPECT_THROW(e.model(), ConfigError);
    EXPECT_THROW(e.pipeline(), ConfigError);
}

TEST_F(HarnessTest, EstimateStageCoversRequestedWeight) {
    Experiment e(config_from_json(base("est")));
    AlphaTable t = e.estimate(2);
    EXPECT_EQ(t.size(), paulis_up_to_weight(4, 2).size());
    std::ifstream in(root_ / "est" / ArtifactNames::kAlphas);
    EXPECT_EQ(read_alpha_table(in).size(), t.size());
}

TEST_F(HarnessTest, FormulaBudgetIsCapped) {
    Json j = base("budget");
    j["schedule"] = {{"k", {1, 2}}, {"max_total_shots", 1000}};
    Experiment e(config_from_json(j));
    auto sched = e.schedule();
    ASSERT_EQ(sched.size(), 2u);
    EXPECT_EQ(sched[0].count, 500u);
}
