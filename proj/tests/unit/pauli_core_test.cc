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
#include <set>

#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"
#include "pauli_mrf/pauli_string.h"
#include "pauli_mrf/random.h"

using namespace pauli_mrf;

namespace {

PauliString P(const char *text) {
    return PauliString::from_text(text);
}

bool matrices_commute(const Matrix2 &a, const Matrix2 &b) {
    Matrix2 ab = matmul(a, b);
    Matrix2 ba = matmul(b, a);
    for (int i = 0; i < 4; i++) {
        if (std::abs(ab[i] - ba[i]) > 1e-12) {
            return false;
        }
    }
    return true;
}

// Equal up to a global phase.
bool proportional(const Matrix2 &a, const Matrix2 &b) {
    Amplitude ratio = 0;
    for (int i = 0; i < 4; i++) {
        if (std::abs(b[i]) > 1e-9) {
            ratio = a[i] / b[i];
            break;
        }
    }
    for (int i = 0; i < 4; i++) {
        if (std::abs(a[i] - ratio * b[i]) > 1e-9) {
            return false;
        }
    }
    return std::abs(std::abs(ratio) - 1) < 1e-9;
}

}  // namespace

TEST(PauliString, SiteEncoding) {
    PauliString p = P("IXZY");
    EXPECT_EQ(p.xs, 0b1010u);
    EXPECT_EQ(p.zs, 0b1100u);
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.str(), "IXZY");
    EXPECT_EQ(p.letter(3), 'Y');
    EXPECT_TRUE(PauliString::identity(5).is_identity());
    EXPECT_EQ(PauliString::identity(5).weight(), 0u);
}

TEST(PauliString, IndexRoundTrip) {
    for (uint64_t i = 0; i < 256; i++) {
        PauliString p = PauliString::from_index(4, i);
        EXPECT_EQ(p.index(), i);
        EXPECT_EQ(PauliString::from_text(p.str()), p);
    }
}

TEST(PauliString, ParseErrors) {
    EXPECT_THROW(PauliString::from_text("XQ"), ParseError);
}

TEST(PauliString, ProductDropsPhase) {
    EXPECT_EQ(P("X") * P("Z"), P("Y"));
    EXPECT_EQ(P("XY") * P("XY"), P("II"));
}

TEST(SymplecticProduct, Examples) {
    EXPECT_EQ(symplectic_product(P("X"), P("Z")), 1);
    EXPECT_EQ(symplectic_product(P("XZ"), P("ZX")), 0);
    for (uint64_t i = 0; i < 16; i++) {
        PauliString p = PauliString::from_index(2, i);
        EXPECT_EQ(symplectic_product(p, p), 0);
    }
}

TEST(SymplecticProduct, MatchesMatrixCommutator) {
    for (uint8_t a = 0; a < 4; a++) {
        for (uint8_t b = 0; b < 4; b++) {
            bool commute = matrices_commute(pauli_matrix(a), pauli_matrix(b));
            EXPECT_EQ(symplectic_product(PauliString::from_index(1, a), PauliString::from_index(1, b)), commute ? 0 : 1);
        }
    }
}

TEST(SymplecticProduct, IndexFormAgrees) {
    for (uint64_t a = 0; a < 64; a++) {
        for (uint64_t b = 0; b < 64; b++) {
            EXPECT_EQ(symplectic_product_index(a, b, 3),
                      symplectic_product(PauliString::from_index(3, a), PauliString::from_index(3, b)));
        }
    }
}

TEST(CharacterValue, Examples) {
    for (uint64_t i = 0; i < 4; i++) {
        EXPECT_EQ(character_value(PauliString::from_index(1, i), P("I")), 1);
    }
    EXPECT_EQ(character_value(P("X"), P("Z")), -1);
}

TEST(CharacterValue, Orthogonality) {
    // sum_Q chi_P(Q) chi_R(Q) = 4^n [P = R].
    for (uint64_t p = 0; p < 16; p++) {
        for (uint64_t r = 0; r < 16; r++) {
            int sum = 0;
            for (uint64_t q = 0; q < 16; q++) {
                PauliString qs = PauliString::from_index(2, q);
                sum += character_value(PauliString::from_index(2, p), qs) *
                       character_value(PauliString::from_index(2, r), qs);
            }
            EXPECT_EQ(sum, p == r ? 16 : 0);
        }
    }
}

TEST(RestrictEmbed, Examples) {
    EXPECT_EQ(restrict_to(P("XYZ"), Region{1}), P("Y"));
    EXPECT_EQ(restrict_to(P("XYZ"), Region::full(3)), P("XYZ"));
    EXPECT_EQ(restrict_to(P("XYZ"), Region{2, 0}), P("ZX"));
    EXPECT_EQ(restrict_to(PauliString::identity(4), Region{0, 3}), P("II"));
    EXPECT_EQ(embed(P("Y"), Region{1}, 3), P("IYI"));
    EXPECT_EQ(embed(P("II"), Region{0, 2}, 4), PauliString::identity(4));
}

TEST(RestrictEmbed, RoundTripExhaustive) {
    for (uint32_t n = 1; n <= 4; n++) {
        for (uint64_t mask = 1; mask < (uint64_t{1} << n); mask++) {
            Region a = Region::from_mask(mask);
            for (const PauliString &q : enumerate_paulis(a)) {
                PauliString e = embed(q, a, n);
                EXPECT_EQ(restrict_to(e, a), q);
                EXPECT_EQ(restricted_index(e, a), q.index());
                EXPECT_EQ(e.support_mask() & ~mask, 0u);
            }
        }
    }
}

TEST(EnumeratePaulis, OrderAndCount) {
    auto one = enumerate_paulis(Region{0});
    ASSERT_EQ(one.size(), 4u);
    EXPECT_EQ(one[0].str(), "I");
    EXPECT_EQ(one[1].str(), "X");
    EXPECT_EQ(one[2].str(), "Z");
    EXPECT_EQ(one[3].str(), "Y");
    auto two = enumerate_paulis(Region{3, 5});
    EXPECT_EQ(std::set<PauliString>(two.begin(), two.end()).size(), 16u);
    EXPECT_TRUE(two[0].is_identity());
}

TEST(EnumeratePaulis, CapEnforced) {
    EXPECT_THROW(enumerate_paulis(Region::full(13)), UnsupportedSizeError);
}

TEST(Region, Validation) {
    EXPECT_THROW(Region({0, 0}), DimensionError);
    EXPECT_THROW(Region({0, 4}).validate(4), DimensionError);
    EXPECT_EQ(Region({3, 1}).sorted(), Region({1, 3}));
    EXPECT_EQ(Region({3, 1}).mask(), 0b1010u);
    EXPECT_EQ(region_union(Region{2, 0}, Region{1, 2}), Region({0, 1, 2}));
}

TEST(Fourier, TransformTwiceScales) {
    Rng rng(5);
    std::vector<double> t(64);
    for (double &v : t) {
        v = uniform01(rng);
    }
    std::vector<double> u = t;
    symplectic_transform(u, 3);
    // Direct evaluation of the defining sum.
    for (uint64_t p = 0; p < 64; p++) {
        double sum = 0;
        for (uint64_t q = 0; q < 64; q++) {
            sum += (symplectic_product_index(p, q, 3) ? -1 : 1) * t[q];
        }
        EXPECT_NEAR(u[p], sum, 1e-12);
    }
    inverse_symplectic_transform(u, 3);
    for (size_t i = 0; i < t.size(); i++) {
        EXPECT_NEAR(u[i], t[i], 1e-14);
    }
}

TEST(Fourier, MarginalizeAndLift) {
    Rng rng(6);
    std::vector<double> t(64);
    for (double &v : t) {
        v = uniform01(rng);
    }
    Region from{0, 1, 2};
    Region onto{2, 0};
    auto m = marginalize(t, from, onto);
    for (uint64_t a = 0; a < 16; a++) {
        double sum = 0;
        for (uint64_t q = 0; q < 64; q++) {
            if (restricted_index(PauliString::from_index(3, q), onto) == a) {
                sum += t[q];
            }
        }
        EXPECT_NEAR(m[a], sum, 1e-12);
    }
    EXPECT_EQ(lift_index(P("XZ").index(), Region{2, 0}, from), P("ZIX").index());
}

TEST(CliffordGroup, TwentyFourDistinctElements) {
    const auto &group = clifford_group();
    for (size_t a = 0; a < group.size(); a++) {
        for (size_t b = a + 1; b < group.size(); b++) {
            EXPECT_FALSE(proportional(group[a].unitary, group[b].unitary)) << a << " " << b;
        }
    }
    // Without signs the action on (X, Z) falls into the 6 permutations of {X, Y, Z}.
    std::set<std::pair<uint8_t, uint8_t>> actions;
    for (const auto &c : group) {
        actions.insert({c.x_image, c.z_image});
    }
    EXPECT_EQ(actions.size(), 6u);
    EXPECT_EQ(group[0].x_image, 1);
    EXPECT_EQ(group[0].z_image, 2);
}

TEST(CliffordGroup, MatricesMatchRecordedAction) {
    for (const auto &c : clifford_group()) {
        Matrix2 u = c.unitary;
        Matrix2 ud = adjoint(u);
        EXPECT_TRUE(proportional(matmul(matmul(u, pauli_matrix(1)), ud), pauli_matrix(c.x_image)));
        EXPECT_TRUE(proportional(matmul(matmul(u, pauli_matrix(2)), ud), pauli_matrix(c.z_image)));
        // U^dagger L U is diagonal.
        Matrix2 d = matmul(matmul(ud, pauli_matrix(c.diagonalized)), u);
        EXPECT_NEAR(std::abs(d[1]), 0, 1e-12);
        EXPECT_NEAR(std::abs(d[2]), 0, 1e-12);
        for (uint8_t e = 0; e < 4; e++) {
            double p = c.prob_one[e];
            EXPECT_TRUE(p == 0 || p == 1);
        }
        EXPECT_EQ(c.prob_one[0], 0);
    }
}

TEST(Random, StreamsAreDistinctAndStable) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
    Rng a = derive_stream(7, StreamTag::kShots);
    Rng b = derive_stream(7, StreamTag::kShots);
    EXPECT_EQ(a(), b());
    Rng rng(1);
    for (int i = 0; i < 1000; i++) {
        EXPECT_LT(uniform_below(rng, 24), 24u);
        double u = uniform01(rng);
        EXPECT_GE(u, 0);
        EXPECT_LT(u, 1);
    }
}
