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

#ifndef PAULI_MRF_CLIFFORD_H
#define PAULI_MRF_CLIFFORD_H

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace pauli_mrf {

using Amplitude = std::complex<double>;
/// Row-major 2x2 matrix.
using Matrix2 = std::array<Amplitude, 4>;

Matrix2 matmul(const Matrix2 &a, const Matrix2 &b);
Matrix2 adjoint(const Matrix2 &a);
/// Single-qubit Pauli matrix for a site code (0=I, 1=X, 2=Z, 3=Y).
Matrix2 pauli_matrix(uint8_t code);

inline constexpr uint32_t kNumCliffords = 24;

/// Tag written into shot banks; bump it if the enumeration below ever changes.
inline constexpr std::string_view kCliffordOrderingVersion = "sh-bfs-v1";

struct SingleQubitClifford {
    Matrix2 unitary;
    /// Site codes of U X U^dagger and U Z U^dagger (phase dropped).
    uint8_t x_image = 1;
    uint8_t z_image = 2;
    /// Code of the letter L with U^dagger L U = +-Z, i.e. the Pauli this
    /// Clifford rotates into the computational basis.
    uint8_t diagonalized = 2;
    /// Probability of reading 1 after U^dagger E U |0>, per error code E.
    std::array<double, 4> prob_one{};
};

/// The 24 single-qubit Cliffords modulo phase, in canonical order:
/// breadth-first products of the generators S then H starting from the
/// identity, deduplicated by action on (X, Z). Index 0 is the identity.
const std::array<SingleQubitClifford, kNumCliffords> &clifford_group();

}  // namespace pauli_mrf

#endif
