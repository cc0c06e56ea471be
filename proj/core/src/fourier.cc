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

#include "pauli_mrf/fourier.h"

#include <cmath>
#include <utility>

#include "pauli_mrf/errors.h"

namespace pauli_mrf {

namespace {

// Swapping the x and z halves turns the symplectic form into a dot product:
// P.Q = popcount(swap(P) & Q) mod 2.
uint64_t swap_halves(uint64_t index, uint32_t m) {
    uint64_t low = (uint64_t{1} << m) - 1;
    return (index >> m) | ((index & low) << m);
}

void check_length(std::span<const double> table, uint32_t m) {
    if (table.size() != table_size(m, 31)) {
        throw DimensionError("Table of size " + std::to_string(table.size()) + " is not 4^" + std::to_string(m) + ".");
    }
}

}  // namespace

void symplectic_transform(std::span<double> table, uint32_t m) {
    check_length(table, m);
    size_t size = table.size();
    for (size_t half = 1; half < size; half <<= 1) {
        for (size_t block = 0; block < size; block += half << 1) {
            for (size_t k = block; k < block + half; k++) {
                double a = table[k];
                double b = table[k + half];
                table[k] = a + b;
                table[k + half] = a - b;
            }
        }
    }
    for (uint64_t idx = 0; idx < size; idx++) {
        uint64_t partner = swap_halves(idx, m);
        if (partner > idx) {
            std::swap(table[idx], table[partner]);
        }
    }
}

void inverse_symplectic_transform(std::span<double> table, uint32_t m) {
    symplectic_transform(table, m);
    double scale = std::ldexp(1.0, -2 * static_cast<int>(m));
    for (double &v : table) {
        v *= scale;
    }
}

uint64_t lift_index(uint64_t sub_index, const Region &sub, const Region &super) {
    size_t ms = sub.size();
    size_t mS = super.size();
    uint64_t x = 0, z = 0;
    for (size_t k = 0; k < ms; k++) {
        int pos = super.position(sub[k]);
        if (pos < 0) {
            throw DimensionError("Region " + sub.str() + " is not inside " + super.str() + ".");
        }
        x |= ((sub_index >> k) & 1) << pos;
        z |= ((sub_index >> (k + ms)) & 1) << pos;
    }
    return x | (z << mS);
}

std::vector<double> marginalize(std::span<const double> table, const Region &from, const Region &onto) {
    uint32_t m = static_cast<uint32_t>(from.size());
    check_length(table, m);
    std::vector<int> positions;
    for (uint32_t q : onto) {
        int pos = from.position(q);
        if (pos < 0) {
            throw DimensionError("Region " + onto.str() + " is not inside " + from.str() + ".");
        }
        positions.push_back(pos);
    }
    size_t mo = onto.size();
    std::vector<double> out(size_t{1} << (2 * mo), 0.0);
    for (uint64_t idx = 0; idx < table.size(); idx++) {
        uint64_t x = 0, z = 0;
        for (size_t k = 0; k < mo; k++) {
            x |= ((idx >> positions[k]) & 1) << k;
            z |= ((idx >> (positions[k] + m)) & 1) << k;
        }
        out[x | (z << mo)] += table[idx];
    }
    return out;
}

}  // namespace pauli_mrf
