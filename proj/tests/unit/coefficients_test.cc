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

#include <cmath>

#include "pauli_mrf/coefficients.h"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/marginal_provider.h"
#include "pauli_mrf/model_generation.h"
#include "pauli_mrf/model_io.h"

using namespace pauli_mrf;

namespace {

GibbsNoiseModel generated(Topology topo, uint32_t n, uint64_t seed, uint32_t r = 2,
                          std::vector<Region> hyperedges = {}) {
    GenerationParams p;
    p.topology = topo;
    p.num_qubits = n;
    p.seed = seed;
    p.r = r;
    p.hyperedges = std::move(hyperedges);
    return generate_model(p);
}

double table_error(const PotentialTable &a, const PotentialTable &b) {
    double worst = 0;
    for (size_t i = 0; i < a.values.size(); i++) {
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
    return worst;
}

}  // namespace

TEST(Enclosure, Examples) {
    EXPECT_EQ(enclosure(Region{4, 5}, {Region{0, 1}, Region{4, 5}}).enclosure, Region({4, 5}));
    std::vector<Region> chain{Region{0, 1}, Region{1, 2}, Region{2, 3}};
    RegionAssignment a = enclosure(Region{1, 2}, chain);
    EXPECT_EQ(a.hyperedge, Region({1, 2}));
    EXPECT_EQ(a.enclosure, Region({0, 1, 2, 3}));
    EXPECT_EQ(enclosure(Region{0, 1}, chain).enclosure, Region({0, 1, 2}));
}

TEST(Enclosure, SizeBoundOnRandomInstances) {
    for (uint64_t seed = 1; seed <= 50; seed++) {
        GibbsNoiseModel m = generated(Topology::kRandomBoundedDegree, 10, seed);
        Hypergraph h = m.hypergraph();
        uint32_t r = h.max_edge_size();
        uint32_t d = derived_graph(h).max_degree();
        for (const auto &e : h.hyperedges) {
            EXPECT_LE(enclosure(e, h.hyperedges).enclosure.size(), r * std::pow(d, r + 1)) << seed;
        }
    }
}

TEST(Enclosure, CapEnforced) {
    std::vector<Region> star;
    for (uint32_t q = 1; q <= 13; q++) {
        star.push_back(Region{0, q});
    }
    EXPECT_THROW(enclosure(Region{0, 1}, star), UnsupportedSizeError);
}

TEST(EstimateTheta, ExactOnCanonicalModels) {
    std::vector<GibbsNoiseModel> models;
    for (uint32_t n = 2; n <= 6; n++) {
        models.push_back(generated(Topology::kChain, n, n));
    }
    models.push_back(generated(Topology::kExplicit, 4, 1, 3, {Region{0, 1, 2}, Region{2, 3}}));
    models.push_back(generated(Topology::kExplicit, 6, 2, 3, {Region{0, 1, 2}, Region{3, 4, 5}, Region{2, 3}}));
    for (const auto &m : models) {
        auto hyperedges = m.hypergraph().hyperedges;
        for (const auto &pot : m.potentials()) {
            Region r = enclosure(pot.hyperedge, hyperedges).enclosure;
            MarginalTable t{r, exact_marginal(m, r), 0};
            EXPECT_LT(table_error(estimate_theta(pot.hyperedge, t), pot), 1e-10);
        }
    }
}

TEST(EstimateTheta, UniformGivesZero) {
    Region r{0, 1, 2};
    MarginalTable t{r, std::vector<double>(64, 1.0 / 64), 0};
    for (double v : estimate_theta(Region{0, 1}, t).values) {
        EXPECT_NEAR(v, 0, 1e-15);
    }
    for (double v : estimate_theta(Region{0, 1}, t, GaugeConvention::kUnrestricted).values) {
        EXPECT_NEAR(v, 0, 1e-15);
    }
}

TEST(EstimateTheta, IsolatedHyperedgeGaugesAgree) {
    GibbsNoiseModel m = generated(Topology::kChain, 2, 6);
    MarginalTable t{Region{0, 1}, exact_marginal(m, Region{0, 1}), 0};
    PotentialTable c = estimate_theta(Region{0, 1}, t);
    PotentialTable u = estimate_theta(Region{0, 1}, t, GaugeConvention::kUnrestricted);
    EXPECT_LT(table_error(c, u), 1e-12);
}

TEST(EstimateTheta, StableUnderSmallPerturbations) {
    // Moving TV mass t = eps e^{-|R| |theta|} 4^{-|R| - 2r} costs at most eps in theta.
    GibbsNoiseModel m = generated(Topology::kChain, 3, 2);
    const PotentialTable &pot = m.potentials()[0];
    Region r = enclosure(pot.hyperedge, m.hypergraph().hyperedges).enclosure;
    std::vector<double> exact = exact_marginal(m, r);
    const double eps = 0.05;
    double tv = eps * std::exp(-double(r.size()) * pot.max_abs()) * std::pow(4.0, -double(r.size()) - 4);
    Rng rng(3);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<double> p = exact;
        uint64_t from = uniform_below(rng, 64), to = uniform_below(rng, 64);
        double moved = std::min(tv, p[from] / 2);
        p[from] -= moved;
        p[to] += moved;
        MarginalTable t{r, p, 0};
        EXPECT_LE(table_error(estimate_theta(pot.hyperedge, t), pot), eps);
    }
}

TEST(LearnAll, ExactProviderTrueStructure) {
    for (uint32_t n = 3; n <= 6; n++) {
        GibbsNoiseModel m = generated(Topology::kCycle, n, 10 + n);
        LearnedModel lm = learn_all_coefficients(m.hypergraph().hyperedges, MarginalProvider::exact(m));
        EXPECT_LT(max_coefficient_error(m, lm.reconstructed), 1e-10);
        EXPECT_TRUE(lm.spurious.empty());
        EXPECT_TRUE(lm.errors.empty());
    }
}

TEST(LearnAll, SpuriousCandidateFlagged) {
    GibbsNoiseModel m = generated(Topology::kChain, 4, 1);
    auto candidates = m.hypergraph().hyperedges;
    candidates.push_back(Region{0, 3});
    LearnedModel lm = learn_all_coefficients(candidates, MarginalProvider::exact(m));
    ASSERT_EQ(lm.spurious.size(), 1u);
    EXPECT_EQ(lm.spurious[0], Region({0, 3}));
    EXPECT_LT(max_coefficient_error(m, lm.reconstructed), 1e-10);
}

TEST(LearnAll, EmptyStructureIsUniform) {
    GibbsNoiseModel m = generated(Topology::kChain, 3, 1);
    LearnedModel lm = learn_all_coefficients({}, MarginalProvider::exact(m));
    for (double v : *lm.reconstructed.dense_table()) {
        EXPECT_NEAR(v, 1.0 / 64, 1e-15);
    }
}

TEST(LearnAll, JsonCarriesProvenance) {
    GibbsNoiseModel m = generated(Topology::kChain, 3, 1);
    LearnedModel lm = learn_all_coefficients(m.hypergraph().hyperedges, MarginalProvider::exact(m));
    Json j = learned_model_to_json(lm, Json{{"provider", "exact"}});
    EXPECT_EQ(j["provenance"]["provider"], "exact");
    EXPECT_TRUE(model_from_json(j) == lm.reconstructed);
}

TEST(Distance, TvExamples) {
    std::vector<double> a{0.5, 0.5, 0, 0}, u(4, 0.25), b{0, 0, 1, 0}, c{1, 0, 0, 0};
    EXPECT_EQ(tv_distance(a, a), 0);
    EXPECT_EQ(tv_distance(b, c), 1);
    EXPECT_DOUBLE_EQ(tv_distance(a, u), 0.5);
}

TEST(Distance, DiamondIsTwiceTv) {
    GibbsNoiseModel m = generated(Topology::kChain, 3, 1);
    EXPECT_EQ(diamond_distance(m, m).value, 0);
    for (double p : {0.05, 0.2}) {
        ChannelDistance d = diamond_distance(product_depolarizing_model(1, p), product_depolarizing_model(1, 0.1));
        EXPECT_NEAR(d.value, 2 * std::abs(p - 0.1), 1e-14);
        EXPECT_FALSE(d.proxy);
        std::vector<double> dep{1 - p, p / 3, p / 3, p / 3}, id{1, 0, 0, 0};
        EXPECT_NEAR(2 * tv_distance(dep, id), 2 * p, 1e-15);
    }
}

TEST(Distance, ProxyAboveCap) {
    GibbsNoiseModel m = generated(Topology::kChain, 13, 1);
    ChannelDistance d = diamond_distance(m, m, {Region{0, 1}, Region{6, 7}}, 2000, 4);
    EXPECT_TRUE(d.proxy);
    EXPECT_LT(d.value, 0.3);
}
