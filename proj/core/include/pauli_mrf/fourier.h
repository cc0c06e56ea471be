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

#ifndef PAULI_MRF_FOURIER_H
#define PAULI_MRF_FOURIER_H

#include <cstdint>
#include <span>
#include <vector>

#include "pauli_mrf/pauli_string.h"

namespace pauli_mrf {

/// In-place character transform over (Z2 x Z2)^m:
///     F(P) = sum_Q (-1)^{P.Q} f(Q)
/// with tables in PauliString index order. Applying it twice multiplies by 4^m.
void symplectic_transform(std::span<double> table, uint32_t m);

/// f(Q) = 4^{-m} sum_P (-1)^{P.Q} F(P).
void inverse_symplectic_transform(std::span<double> table, uint32_t m);

/// Sums a table over `from` down to the qubits of `onto` (which must be a
/// subset of `from`). The result is indexed in `onto`'s order.
std::vector<double> marginalize(std::span<const double> table, const Region &from, const Region &onto);

/// Maps an index over `sub` (a subset of `super`) to the index over `super`
/// with identity on the remaining sites.
uint64_t lift_index(uint64_t sub_index, const Region &sub, const Region &super);

}  // namespace pauli_mrf

#endif
