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

#ifndef PAULI_MRF_PAULI_STRING_H
#define PAULI_MRF_PAULI_STRING_H

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pauli_mrf {

inline constexpr uint32_t kMaxQubits = 64;

/// Largest region (in qubits) any exact, enumerating operation will touch.
inline constexpr uint32_t kEnumerationCap = 12;

/// An n-qubit Pauli operator modulo phase.
///
/// Qubit i carries I when both bits are clear, X for (x=1,z=0), Z for
/// (x=0,z=1) and Y for (x=1,z=1). Products drop phases: multiplying two
/// strings XORs their masks.
///
/// Over m <= 31 qubits a string also has a dense table index
/// `x | (z << m)`. This is the enumeration order used for every table in
/// the library: identity first, and on one qubit the order is I, X, Z, Y.
struct PauliString {
    uint32_t num_qubits = 0;
    uint64_t xs = 0;
    uint64_t zs = 0;

    PauliString() = default;
    PauliString(uint32_t n, uint64_t x_mask, uint64_t z_mask);

    static PauliString identity(uint32_t n);
    /// Parses text like "IXZY" (qubit 0 leftmost).
    static PauliString from_text(std::string_view text);
    static PauliString from_index(uint32_t n, uint64_t index);
    /// Single non-identity site: `letter` in {'I','X','Y','Z'}.
    static PauliString single(uint32_t n, uint32_t qubit, char letter);

    std::string str() const;
    uint64_t index() const;
    uint32_t weight() const;
    uint64_t support_mask() const { return xs | zs; }
    bool is_identity() const { return (xs | zs) == 0; }
    char letter(uint32_t qubit) const;
    /// 0..3 code of the site in table order: 0=I, 1=X, 2=Z, 3=Y.
    uint8_t site_code(uint32_t qubit) const {
        return static_cast<uint8_t>(((xs >> qubit) & 1) | (((zs >> qubit) & 1) << 1));
    }

    PauliString &operator*=(const PauliString &other);
    PauliString operator*(const PauliString &other) const;

    bool operator==(const PauliString &) const = default;
    auto operator<=>(const PauliString &) const = default;
};

std::ostream &operator<<(std::ostream &out, const PauliString &p);

/// An ordered set of distinct qubit indices.
class Region {
   public:
    Region() = default;
    Region(std::initializer_list<uint32_t> qubits);
    explicit Region(std::vector<uint32_t> qubits);

    /// Sorted region holding the set bits of `mask`.
    static Region from_mask(uint64_t mask);
    static Region full(uint32_t n);
    /// Same qubits in increasing order.
    Region sorted() const;

    size_t size() const { return qubits_.size(); }
    bool empty() const { return qubits_.empty(); }
    uint32_t operator[](size_t k) const { return qubits_[k]; }
    auto begin() const { return qubits_.begin(); }
    auto end() const { return qubits_.end(); }
    const std::vector<uint32_t> &qubits() const { return qubits_; }

    bool contains(uint32_t qubit) const;
    /// Position of `qubit` inside the region, or -1.
    int position(uint32_t qubit) const;
    uint64_t mask() const;
    /// Throws DimensionError when an index is >= n.
    void validate(uint32_t n) const;

    std::string str() const;

    bool operator==(const Region &) const = default;
    auto operator<=>(const Region &) const = default;

   private:
    std::vector<uint32_t> qubits_;
};

std::ostream &operator<<(std::ostream &out, const Region &r);

/// Union of two regions as a sorted region.
Region region_union(const Region &a, const Region &b);

/// 0 when P and Q commute, 1 when they anticommute.
uint8_t symplectic_product(const PauliString &p, const PauliString &q);

/// chi_P(Q) = (-1)^{P.Q}.
int character_value(const PauliString &p, const PauliString &q);

/// Symplectic product of two dense table indices over m qubits.
inline uint8_t symplectic_product_index(uint64_t a, uint64_t b, uint32_t m) {
    uint64_t low = (m == 32) ? ~uint64_t{0} >> 32 : (uint64_t{1} << m) - 1;
    uint64_t ax = a & low, az = a >> m;
    uint64_t bx = b & low, bz = b >> m;
    return static_cast<uint8_t>(std::popcount((ax & bz) ^ (az & bx)) & 1);
}

/// Sub-string of P on `region`, in the region's order.
PauliString restrict_to(const PauliString &p, const Region &region);

/// Dense table index of restrict_to(p, region) without materializing it.
uint64_t restricted_index(const PauliString &p, const Region &region);

/// Places Q (over |region| qubits) on `region` of an n-qubit identity.
PauliString embed(const PauliString &q, const Region &region, uint32_t n);

/// All 4^|region| strings over |region| qubits in table order.
std::vector<PauliString> enumerate_paulis(const Region &region, uint32_t cap = kEnumerationCap);

/// Number of table entries for a region of m qubits; throws above the cap.
size_t table_size(size_t m, uint32_t cap = kEnumerationCap);

}  // namespace pauli_mrf

#endif
