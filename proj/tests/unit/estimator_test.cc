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

#include "pauli_mrf/estimator.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "pauli_mrf/channel.h"
#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"

namespace pauli_mrf {
namespace {

PauliChannel depolarizing_channel(uint32_t n, double p) {
    std::vector<double> site{1 - p, p / 3, p / 3, p / 3};
    std::vector<double> table{1};
    for (uint32_t q = 0; q < n; q++) {
        // Qubit q is the high digit of the new table in (x, z) order.
        uint32_t m = q;
        std::vector<double> next(table_size(m + 1));
        for (uint64_t i = 0; i < table.size(); i++) {
            uint64_t x = i & ((uint64_t{1} << m) - 1);
            uint64_t z = i >> m;
            for (uint8_t a = 0; a < 4; a++) {
                uint64_t nx = x | (uint64_t{a & 1u} << m);
                uint64_t nz = z | (uint64_t{(a >> 1) & 1u} << m);
                next[nx | (nz << (m + 1))] += table[i] * site[a];
            }
        }
        table = std::move(next);
    }
    return PauliChannel::from_table(n, std::move(table));
}

ShotView make_view(const std::vector<uint8_t> &ids, PauliString in, PauliString out, uint64_t x) {
    return ShotView(ids, in, out, 1, x);
}

TEST(Omega, IdentityIsOne) {
    std::vector<uint8_t> ids{5, 7};
    auto v = make_view(ids, PauliString::from_text("XY"), PauliString::from_text("ZZ"), 3);
    EXPECT_EQ(omega_value(PauliString::identity(2), v), 1);
    EXPECT_EQ(omega_sample(PauliString::identity(2), v), 1);
}

TEST(Omega, DiagonalCase) {
    std::vector<uint8_t> ids{0};
    auto v = make_view(ids, PauliString::identity(1), PauliString::identity(1), 0);
    EXPECT_EQ(omega_value(PauliString::from_text("Z"), v), 3);
    auto v1 = make_view(ids, PauliString::identity(1), PauliString::identity(1), 1);
    EXPECT_EQ(omega_value(PauliString::from_text("Z"), v1), -3);
}

TEST(Omega, HadamardKillsZ) {
    const auto &group = clifford_group();
    uint8_t h = 0;
    for (uint8_t c = 0; c < kNumCliffords; c++) {
        if (group[c].x_image == 2 && group[c].z_image == 1) {
            h = c;
            break;
        }
    }
    ASSERT_NE(h, 0);
    std::vector<uint8_t> ids{h};
    for (uint64_t x : {0, 1}) {
        auto v = make_view(ids, PauliString::identity(1), PauliString::identity(1), x);
        EXPECT_EQ(omega_value(PauliString::from_text("Z"), v), 0);
    }
}

TEST(Omega, AnticommutingTwirlFlipsSign) {
    std::vector<uint8_t> ids{0};
    auto v = make_view(ids, PauliString::from_text("X"), PauliString::identity(1), 0);
    EXPECT_EQ(omega_sample(PauliString::from_text("Z"), v), -3);
}

TEST(Omega, DimensionMismatchThrows) {
    std::vector<uint8_t> ids{0};
    auto v = make_view(ids, PauliString::identity(1), PauliString::identity(1), 0);
    EXPECT_THROW(omega_value(PauliString::from_text("ZZ"), v), DimensionError);
}

TEST(MedianOfMeans, ConstantAndMean) {
    std::vector<double> c(100, 2.5);
    EXPECT_EQ(median_of_means(c, 7), 2.5);
    std::vector<double> s{1, 2, 3, 10};
    EXPECT_DOUBLE_EQ(median_of_means(s, 1), 4);
    EXPECT_THROW(median_of_means(std::vector<double>{}, 3), EstimationError);
}

TEST(MedianOfMeans, RobustToOutliers) {
    Rng rng = derive_stream(7, StreamTag::kTest);
    std::normal_distribution<double> normal;
    std::vector<double> s(20000);
    for (double &v : s) {
        v = normal(rng);
    }
    // 1% corruption at +-1e6, clustered so it lands in few blocks.
    for (size_t i = 0; i < 200; i++) {
        s[i * 7] = (i % 2) ? 1e6 : -1e6;
    }
    EXPECT_NEAR(median_of_means(s, 20), 0, 0.1);
}

TEST(MedianOfMeans, DefaultGroups) {
    EXPECT_EQ(default_mom_groups(0.05), 24u);
    EXPECT_EQ(default_mom_groups(0.5), 6u);
}

TEST(FitAlpha, ExactPointsRecoverParameters) {
    DecayPoints dp;
    dp.pauli = PauliString::from_text("ZX");
    for (uint32_t k : {1, 2, 3}) {
        DecayPoint pt;
        pt.k = k;
        pt.shots = 1000000000;
        pt.value = 0.8 * std::pow(0.6, k);
        dp.points.push_back(pt);
    }
    AlphaEstimate est = fit_alpha(dp);
    EXPECT_NEAR(est.alpha_hat, 0.6, 1e-10);
    EXPECT_NEAR(est.c_hat, 0.8, 1e-10);
    EXPECT_FALSE(est.flagged());
}

TEST(FitAlpha, NegativeAlpha) {
    DecayPoints dp;
    dp.pauli = PauliString::from_text("Z");
    for (uint32_t k : {1, 2, 3}) {
        DecayPoint pt;
        pt.k = k;
        pt.shots = 1000000000;
        pt.value = 0.9 * std::pow(-0.5, k);
        dp.points.push_back(pt);
    }
    AlphaEstimate est = fit_alpha(dp);
    EXPECT_NEAR(est.alpha_hat, -0.5, 1e-10);
    EXPECT_NEAR(est.c_hat, 0.9, 1e-10);
}

TEST(FitAlpha, FloorErrors) {
    DecayPoints dp;
    dp.pauli = PauliString::from_text("Z");
    dp.m_groups = 1;
    dp.points = {{1, 100, 0.01}, {2, 100, 0.001}};
    EXPECT_THROW(fit_alpha(dp), IndeterminateDecayError);
    dp.points = {{1, 100, 0.9}, {2, 100, 0.001}};
    EXPECT_THROW(fit_alpha(dp), InsufficientDataError);
    AlphaEstimate est = fit_alpha_or_fallback(dp);
    EXPECT_DOUBLE_EQ(est.alpha_hat, 0.9);
    EXPECT_TRUE(est.flagged());
}

class SimulatedBank : public ::testing::Test {
   protected:
    static std::shared_ptr<const ShotBank> bank_for(uint32_t n, double p, double q, uint64_t shots) {
        auto channel = depolarizing_channel(n, p);
        auto spam = SpamModel::depolarizing(n, q, q);
        return std::make_shared<const ShotBank>(batch_simulate(channel, spam, {{1, shots}, {2, shots}}, 11));
    }
};

TEST_F(SimulatedBank, DecayPointsMatchEigenvalues) {
    auto bank = bank_for(1, 0.3, 0, 200000);
    DecayPoints dp = estimate_decay_points(PauliString::from_text("Z"), *bank, 1);
    double se1 = std::sqrt(3.0 / 200000);
    EXPECT_NEAR(dp.points[0].mean, 0.6, 4 * se1);
    EXPECT_NEAR(dp.points[1].mean, 0.36, 4 * se1);

    auto noisy = bank_for(1, 0.3, 0.1, 200000);
    DecayPoints dn = estimate_decay_points(PauliString::from_text("Z"), *noisy, 1);
    EXPECT_NEAR(dn.points[0].mean, 0.81 * 0.6, 4 * se1);
}

TEST_F(SimulatedBank, FastPathMatchesDirectEvaluation) {
    auto bank = bank_for(3, 0.2, 0.05, 3000);
    AlphaEstimator estimator(bank, {.groups = 5});
    for (const auto &p : paulis_up_to_weight(3, 3)) {
        DecayPoints slow = estimate_decay_points(p, *bank, 5);
        DecayPoints fast = estimator.decay_points(p);
        ASSERT_EQ(slow.points.size(), fast.points.size());
        for (size_t j = 0; j < slow.points.size(); j++) {
            EXPECT_NEAR(slow.points[j].value, fast.points[j].value, 1e-12) << p;
            EXPECT_NEAR(slow.points[j].mean, fast.points[j].mean, 1e-12) << p;
            EXPECT_NEAR(slow.points[j].second_moment, fast.points[j].second_moment, 1e-9) << p;
        }
    }
}

TEST_F(SimulatedBank, IdentityForcedToOne) {
    auto bank = bank_for(2, 0.2, 0.1, 100);
    AlphaEstimator estimator(bank);
    auto table = batch_estimate({PauliString::identity(2)}, estimator);
    EXPECT_EQ(table.begin()->second.alpha_hat, 1);
}

TEST(PaulisUpToWeight, Counts) {
    EXPECT_EQ(paulis_up_to_weight(2, 1).size(), 7u);
    EXPECT_EQ(paulis_up_to_weight(2, 2).size(), 16u);
    EXPECT_EQ(paulis_up_to_weight(4, 2).size(), 1u + 12u + 6u * 9u);
}

TEST(MarginalFromAlphas, DeltaAndUniform) {
    Region a{0, 1};
    AlphaTable ones;
    AlphaTable zeros;
    for (const auto &p : paulis_up_to_weight(2, 2)) {
        ones[p].alpha_hat = 1;
        zeros[p].alpha_hat = p.is_identity() ? 1 : 0;
    }
    double floor = default_marginal_floor(2);
    MarginalTable delta = marginal_from_alphas(a, 2, ones, floor);
    EXPECT_NEAR(delta.probs[0], 1 - 15 * floor, 1e-15);
    EXPECT_NEAR(delta.probs[5], floor, 1e-20);
    MarginalTable uniform = marginal_from_alphas(a, 2, zeros, floor);
    for (double v : uniform.probs) {
        EXPECT_NEAR(v, 1.0 / 16, 1e-15);
    }
}

TEST(MarginalFromAlphas, MissingEigenvalueThrows) {
    AlphaTable partial;
    EXPECT_THROW(marginal_from_alphas(Region{0}, 1, partial, 0), EstimationError);
}

TEST(AlphaTableFile, RoundTrip) {
    AlphaTable t;
    AlphaEstimate e;
    e.pauli = PauliString::from_text("XZ");
    e.alpha_hat = 0.1 + 0.2;
    e.std_error = 1e-3 / 3;
    e.c_hat = 0.7;
    e.m_groups = 24;
    e.flags = {"insufficient_data", "spam_unresolved"};
    e.per_k_means = {{1, 0.3}, {2, 1.0 / 7}};
    t[e.pauli] = e;
    std::stringstream ss;
    write_alpha_table(t, ss);
    AlphaTable back = read_alpha_table(ss);
    ASSERT_EQ(back.size(), 1u);
    const auto &b = back.begin()->second;
    EXPECT_EQ(b.alpha_hat, e.alpha_hat);
    EXPECT_EQ(b.std_error, e.std_error);
    EXPECT_EQ(b.flags, e.flags);
    EXPECT_EQ(b.per_k_means, e.per_k_means);
}

TEST(MarginalTableFile, RoundTrip) {
    MarginalTable t = project_marginal(Region{3, 1}, std::vector<double>(16, 1.0 / 16), 1e-9);
    t.probs[3] = 1.0 / 3;
    std::stringstream ss;
    write_marginal_table(t, ss);
    MarginalTable back = read_marginal_table(ss);
    EXPECT_EQ(back.region, t.region);
    EXPECT_EQ(back.probs, t.probs);
    EXPECT_EQ(back.floor, t.floor);
}

}  // namespace
}  // namespace pauli_mrf
