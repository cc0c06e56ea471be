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

#include "pauli_mrf/pauli_string.h"

#include <algorithm>
#include <sstream>

#include "pauli_mrf/errors.h"

namespace pauli_mrf {

namespace {

uint64_t low_mask(uint32_t n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

void check_same_size(const PauliString &p, const PauliString &q) {
    if (p.num_qubits != q.num_qubits) {
        throw DimensionError("Pauli strings act on " + std::to_string(p.num_qubits) + " and " +
                             std::to_string(q.num_qubits) + " qubits.");
    }
}

}  // namespace

PauliString::PauliString(uint32_t n, uint64_t x_mask, uint64_t z_mask) : num_qubits(n), xs(x_mask), zs(z_mask) {
    if (n > kMaxQubits) {
        throw DimensionError("At most " + std::to_string(kMaxQubits) + " qubits are supported.");
    }
    if (((x_mask | z_mask) & ~low_mask(n)) != 0) {
        throw DimensionError("Pauli masks have bits beyond qubit " + std::to_string(n) + ".");
    }
}

PauliString PauliString::identity(uint32_t n) {
    return PauliString(n, 0, 0);
}

PauliString PauliString::from_text(std::string_view text) {
    if (text.size() > kMaxQubits) {
        throw ParseError("Pauli text longer than " + std::to_string(kMaxQubits) + " characters.");
    }
    uint64_t x = 0, z = 0;
    for (size_t k = 0; k < text.size(); k++) {
        uint64_t bit = uint64_t{1} << k;
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw ParseError("Not a Pauli string: '" + std::string(text) + "'.");
        }
    }
    return PauliString(static_cast<uint32_t>(text.size()), x, z);
}

PauliString PauliString::from_index(uint32_t n, uint64_t index) {
    if (n > 31) {
        throw UnsupportedSizeError("Table indices exist only for at most 31 qubits.");
    }
    uint64_t m = low_mask(n);
    if (index >> (2 * n) != 0) {
        throw DimensionError("Index " + std::to_string(index) + " out of range for " + std::to_string(n) + " qubits.");
    }
    return PauliString(n, index & m, (index >> n) & m);
}

PauliString PauliString::single(uint32_t n, uint32_t qubit, char letter) {
    if (qubit >= n) {
        throw DimensionError("Qubit " + std::to_string(qubit) + " out of range.");
    }
    PauliString result = identity(n);
    uint64_t bit = uint64_t{1} << qubit;
    switch (letter) {
        case 'I':
            break;
        case 'X':
            result.xs = bit;
            break;
        case 'Y':
            result.xs = bit;
            result.zs = bit;
            break;
        case 'Z':
            result.zs = bit;
            break;
        default:
            throw ParseError(std::string("Not a Pauli letter: ") + letter);
    }
    return result;
}

char PauliString::letter(uint32_t qubit) const {
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[site_code(qubit)];
}

std::string PauliString::str() const {
    std::string out(num_qubits, 'I');
    for (uint32_t k = 0; k < num_qubits; k++) {
        out[k] = letter(k);
    }
    return out;
}

uint64_t PauliString::index() const {
    if (num_qubits > 31) {
        throw UnsupportedSizeError("Table indices exist only for at most 31 qubits.");
    }
    return xs | (zs << num_qubits);
}

uint32_t PauliString::weight() const {
    return static_cast<uint32_t>(std::popcount(xs | zs));
}

PauliString &PauliString::operator*=(const PauliString &other) {
    check_same_size(*this, other);
    xs ^= other.xs;
    zs ^= other.zs;
    return *this;
}

PauliString PauliString::operator*(const PauliString &other) const {
    PauliString result = *this;
    result *= other;
    return result;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

Region::Region(std::initializer_list<uint32_t> qubits) : Region(std::vector<uint32_t>(qubits)) {
}

Region::Region(std::vector<uint32_t> qubits) : qubits_(std::move(qubits)) {
    uint64_t seen = 0;
    for (uint32_t q : qubits_) {
        if (q >= kMaxQubits) {
            throw DimensionError("Qubit index " + std::to_string(q) + " out of range.");
        }
        uint64_t bit = uint64_t{1} << q;
        if (seen & bit) {
            throw DimensionError("Region lists qubit " + std::to_string(q) + " twice.");
        }
        seen |= bit;
    }
}

Region Region::from_mask(uint64_t mask) {
    std::vector<uint32_t> qubits;
    while (mask) {
        qubits.push_back(static_cast<uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return Region(std::move(qubits));
}

Region Region::full(uint32_t n) {
    return from_mask(low_mask(n));
}

Region Region::sorted() const {
    return from_mask(mask());
}

bool Region::contains(uint32_t qubit) const {
    return position(qubit) >= 0;
}

int Region::position(uint32_t qubit) const {
    auto it = std::find(qubits_.begin(), qubits_.end(), qubit);
    return it == qubits_.end() ? -1 : static_cast<int>(it - qubits_.begin());
}

uint64_t Region::mask() const {
    uint64_t m = 0;
    for (uint32_t q : qubits_) {
        m |= uint64_t{1} << q;
    }
    return m;
}

void Region::validate(uint32_t n) const {
    for (uint32_t q : qubits_) {
        if (q >= n) {
            throw DimensionError("Region " + str() + " exceeds " + std::to_string(n) + " qubits.");
        }
    }
}

std::string Region::str() const {
    std::ostringstream out;
    out << '{';
    for (size_t k = 0; k < qubits_.size(); k++) {
        if (k) {
            out << ',';
        }
        out << qubits_[k];
    }
    out << '}';
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const Region &r) {
    return out << r.str();
}

Region region_union(const Region &a, const Region &b) {
    return Region::from_mask(a.mask() | b.mask());
}

uint8_t symplectic_product(const PauliString &p, const PauliString &q) {
    check_same_size(p, q);
    return static_cast<uint8_t>(std::popcount((p.xs & q.zs) ^ (p.zs & q.xs)) & 1);
}

int character_value(const PauliString &p, const PauliString &q) {
    return symplectic_product(p, q) ? -1 : 1;
}

PauliString restrict_to(const PauliString &p, const Region &region) {
    region.validate(p.num_qubits);
    uint64_t x = 0, z = 0;
    for (size_t k = 0; k < region.size(); k++) {
        uint32_t q = region[k];
        x |= ((p.xs >> q) & 1) << k;
        z |= ((p.zs >> q) & 1) << k;
    }
    return PauliString(static_cast<uint32_t>(region.size()), x, z);
}

uint64_t restricted_index(const PauliString &p, const Region &region) {
    size_t m = region.size();
    uint64_t x = 0, z = 0;
    for (size_t k = 0; k < m; k++) {
        uint32_t q = region[k];
        x |= ((p.xs >> q) & 1) << k;
        z |= ((p.zs >> q) & 1) << k;
    }
    return x | (z << m);
}

PauliString embed(const PauliString &q, const Region &region, uint32_t n) {
    if (q.num_qubits != region.size()) {
        throw DimensionError("Cannot embed a " + std::to_string(q.num_qubits) + "-qubit string into region " +
                             region.str() + ".");
    }
    region.validate(n);
    uint64_t x = 0, z = 0;
    for (size_t k = 0; k < region.size(); k++) {
        uint32_t target = region[k];
        x |= ((q.xs >> k) & 1) << target;
        z |= ((q.zs >> k) & 1) << target;
    }
    return PauliString(n, x, z);
}

size_t table_size(size_t m, uint32_t cap) {
    if (m > cap) {
        throw UnsupportedSizeError("Region of " + std::to_string(m) + " qubits exceeds the enumeration cap of " +
                                   std::to_string(cap) + ".");
    }
    return size_t{1} << (2 * m);
}

std::vector<PauliString> enumerate_paulis(const Region &region, uint32_t cap) {
    uint32_t m = static_cast<uint32_t>(region.size());
    size_t count = table_size(m, cap);
    std::vector<PauliString> out;
    out.reserve(count);
    for (uint64_t idx = 0; idx < count; idx++) {
        out.push_back(PauliString::from_index(m, idx));
    }
    return out;
}

}  // namespace pauli_mrf
