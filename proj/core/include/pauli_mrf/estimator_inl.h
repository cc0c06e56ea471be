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

#ifndef PAULI_MRF_ESTIMATOR_INL_H
#define PAULI_MRF_ESTIMATOR_INL_H

#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

template <typename AlphaFn>
std::vector<double> raw_marginal_from_alphas(const Region &region, uint32_t n, AlphaFn &&alpha_of) {
    uint32_t m = static_cast<uint32_t>(region.size());
    std::vector<double> table(table_size(m));
    for (uint64_t q = 0; q < table.size(); q++) {
        table[q] = alpha_of(embed(PauliString::from_index(m, q), region, n));
    }
    inverse_symplectic_transform(table, m);
    return table;
}

}  // namespace pauli_mrf

#endif
