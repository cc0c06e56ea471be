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
#include <sstream>

#include "pauli_mrf/channel.h"
#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/model_generation.h"

using namespace pauli_mrf;

namespace {

std::vector<double> depolarizing_table(double p) {
    return {1 - p, p / 3, p / 3, p / 3};
}

// k-fold XOR-convolution computed by brute force.
std::vector<double> convolve_power(const std::vector<double> &mu, uint32_t k) {
    std::vector<double> out(mu.size(), 0);
    out[0] = 1;
    for (uint32_t step = 0; step < k; step++) {
        std::vector<double> next(mu.size(), 0);
        for (uint64_t a = 0; a < mu.size(); a++) {
            for (uint64_t b = 0; b < mu.size(); b++) {
                next[a ^ b] += out[a] * mu[b];
            }
        }
        out = next;
    }
    return out;
}

PauliChannel bit_flip_channel(uint32_t n) {
    std::vector<double> t(uint64_t{1} << (2 * n), 0);
    t[PauliString::single(n, 0, 'X').index()] = 1;
    return PauliChannel::from_table(n, t);
}

}  // namespace

TEST(Eigenvalue, IdentityIsOne) {
    PauliChannel c = PauliChannel::from_model(generate_model(GenerationParams{}));
    EXPECT_NEAR(eigenvalue(c, PauliString::identity(4)), 1, 1e-14);
}

TEST(Eigenvalue, Depolarizing) {
    for (double p : {0.0, 0.1, 0.3}) {
        PauliChannel c = PauliChannel::from_table(1, depolarizing_table(p));
        for (const char *q : {"X", "Y", "Z"}) {
            EXPECT_NEAR(eigenvalue(c, PauliString::from_text(q)), 1 - 4 * p / 3, 1e-15);
        }
    }
}

TEST(Eigenvalue, CompositionIsPower) {
    GenerationParams gp;
    gp.num_qubits = 2;
    gp.seed = 4;
    PauliChannel c = PauliChannel::from_model(generate_model(gp));
    auto composed = compose_channel_table(c.table(), 2, 3);
    auto brute = convolve_power(c.table(), 3);
    PauliChannel c3 = PauliChannel::from_table(2, composed);
    for (uint64_t q = 0; q < 16; q++) {
        EXPECT_NEAR(composed[q], brute[q], 1e-15);
        PauliString qs = PauliString::from_index(2, q);
        EXPECT_NEAR(eigenvalue(c3, qs), std::pow(eigenvalue(c, qs), 3), 1e-14);
    }
}

TEST(Channel, TableValidation) {
    EXPECT_THROW(PauliChannel::from_table(1, {0.5, 0.5, 0.5, 0}), ConfigError);
    EXPECT_THROW(PauliChannel::from_table(1, {1.5, -0.5, 0, 0}), ConfigError);
    EXPECT_THROW(PauliChannel::from_table(2, {1, 0, 0, 0}), DimensionError);
    EXPECT_NEAR(PauliChannel::from_table(1, depolarizing_table(0.2)).p0(), 0.8, 1e-15);
}

TEST(Spam, Attenuation) {
    PauliString p = PauliString::from_text("XIZY");
    EXPECT_EQ(spam_attenuation(SpamModel::noiseless(4), p), 1);
    SpamModel dep = SpamModel::depolarizing(4, 0.1, 0.1);
    EXPECT_NEAR(spam_attenuation(dep, p), std::pow(0.9, 6), 1e-15);
    EXPECT_NEAR(spam_attenuation(dep, PauliString::identity(4)), 1, 1e-15);
    SpamModel skew = SpamModel::noiseless(1);
    skew.prep[0] = {0.7, 0.3, 0, 0};
    EXPECT_NEAR(spam_attenuation(skew, PauliString::from_text("X")), 1, 1e-15);
    EXPECT_NEAR(spam_attenuation(skew, PauliString::from_text("Z")), 0.4, 1e-15);
}

TEST(Spam, Validation) {
    SpamModel bad = SpamModel::noiseless(2);
    bad.meas[1] = {0.5, 0.6, 0, 0};
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(SimulateShot, OutcomesMatchMatrixOracle) {
    PauliChannel channel = bit_flip_channel(3);
    Rng rng(8);
    const auto &group = clifford_group();
    for (int i = 0; i < 3000; i++) {
        uint32_t k = 1 + i % 3;
        ShotRecord r = simulate_shot(channel, SpamModel::noiseless(3), k, rng);
        PauliString e = r.q_out * r.q_in;
        if (k % 2) {
            e *= PauliString::single(3, 0, 'X');
        }
        for (uint32_t q = 0; q < 3; q++) {
            const Matrix2 &u = group[r.clifford_ids[q]].unitary;
            Matrix2 m = matmul(matmul(adjoint(u), pauli_matrix(e.site_code(q))), u);
            bool one = std::norm(m[2]) > 0.5;
            EXPECT_EQ((r.outcome >> q) & 1, one ? 1u : 0u);
        }
    }
}

TEST(SimulateShot, IdentityCliffordsExposeBitFlip) {
    // With identity Cliffords the outcome is the X part of Q_out X_0 Q_in.
    PauliChannel channel = bit_flip_channel(2);
    Rng rng(9);
    int seen = 0;
    for (int i = 0; i < 100000; i++) {
        ShotRecord r = simulate_shot(channel, SpamModel::noiseless(2), 1, rng);
        if (r.clifford_ids == std::vector<uint8_t>{0, 0}) {
            EXPECT_EQ(r.outcome, (r.q_in.xs ^ r.q_out.xs) ^ 1u);
            seen++;
        }
    }
    EXPECT_GT(seen, 50);
}

TEST(BatchSimulate, DeterministicAndThreadInvariant) {
    PauliChannel c = PauliChannel::from_model(generate_model(GenerationParams{}));
    SpamModel spam = SpamModel::depolarizing(4, 0.05, 0.02);
    std::vector<ScheduleEntry> sched{{1, 10000}, {2, 5000}};
    ShotBank a = batch_simulate(c, spam, sched, 3, 1);
    ShotBank b = batch_simulate(c, spam, sched, 3, 1);
    ShotBank t = batch_simulate(c, spam, sched, 3, 4);
    EXPECT_TRUE(a == b);
    EXPECT_TRUE(a == t);
}

TEST(BatchSimulate, ScheduleHonored) {
    PauliChannel c = PauliChannel::from_table(1, depolarizing_table(0.1));
    ShotBank bank = batch_simulate(c, SpamModel::noiseless(1), {{1, 100}, {2, 100}}, 1);
    ASSERT_EQ(bank.size(), 200u);
    for (size_t i = 0; i < bank.size(); i++) {
        EXPECT_EQ(bank.view(i).k, i < 100 ? 1u : 2u);
    }
    EXPECT_EQ(bank.group_range(2), std::make_pair(size_t{100}, size_t{200}));
}

TEST(BatchSimulate, SeedsDiffer) {
    PauliChannel c = PauliChannel::from_table(2, std::vector<double>(16, 1.0 / 16));
    ShotBank a = batch_simulate(c, SpamModel::noiseless(2), {{1, 100}}, 1);
    ShotBank b = batch_simulate(c, SpamModel::noiseless(2), {{1, 100}}, 2);
    EXPECT_FALSE(a == b);
}

TEST(BatchSimulate, RejectsBadSchedules) {
    PauliChannel c = PauliChannel::from_table(1, depolarizing_table(0.1));
    EXPECT_THROW(batch_simulate(c, SpamModel::noiseless(1), {{0, 10}}, 1), ConfigError);
    EXPECT_THROW(batch_simulate(c, SpamModel::noiseless(1), {{1, 10}, {1, 10}}, 1), ConfigError);
    EXPECT_THROW(batch_simulate(c, SpamModel::noiseless(2), {{1, 10}}, 1), DimensionError);
}

TEST(ShotBankFile, RoundTripAndHeader) {
    PauliChannel c = PauliChannel::from_model(generate_model(GenerationParams{}));
    SpamModel spam = SpamModel::depolarizing(4, 0.1, 0.03);
    ShotBank bank = batch_simulate(c, spam, {{1, 300}, {4, 200}}, 77);
    std::stringstream s;
    write_shot_bank(bank, s);
    std::string text = s.str();
    std::istringstream in(text);
    EXPECT_TRUE(read_shot_bank(in) == bank);
    std::istringstream head(text);
    ShotBank h = read_shot_bank(head, true);
    EXPECT_TRUE(h.empty());
    EXPECT_EQ(h.planned_size(), 500u);
    EXPECT_EQ(h.spam(), spam);
    EXPECT_EQ(h.seed(), 77u);
}

TEST(ShotBankFile, TruncatedRejected) {
    PauliChannel c = PauliChannel::from_table(1, depolarizing_table(0.1));
    ShotBank bank = batch_simulate(c, SpamModel::noiseless(1), {{1, 10}}, 1);
    std::stringstream s;
    write_shot_bank(bank, s);
    std::string text = s.str();
    std::istringstream in(text.substr(0, text.size() - 8));
    EXPECT_THROW(read_shot_bank(in), ParseError);
}

TEST(ShotBankFile, DoublesRoundTrip) {
    for (double v : {0.1, 1.0 / 3, 1e-300, 0.925, 5e-324}) {
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
}

TEST(KGrid, Defaults) {
    EXPECT_EQ(default_k_grid(1, 1), (std::vector<uint32_t>{1, 2}));
    // ln(1/(1 - 0.9)) * 2 / (1 - 0.5) = 9.2 -> up to 8.
    EXPECT_EQ(default_k_grid(0.9, 0.5), (std::vector<uint32_t>{1, 2, 4, 8}));
    EXPECT_EQ(default_k_grid(0.999999, 0.9, 16), (std::vector<uint32_t>{1, 2, 4, 8, 16}));
}
