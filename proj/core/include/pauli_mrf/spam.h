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

#ifndef PAULI_MRF_SPAM_H
#define PAULI_MRF_SPAM_H

#include <array>
#include <cstdint>
#include <vector>

#include "pauli_mrf/pauli_string.h"

namespace pauli_mrf {

/// Probabilities of a single-qubit Pauli channel in table order (I, X, Z, Y).
using SiteChannel = std::array<double, 4>;

/// rho -> (1-q) rho + q I/2: I with 1 - 3q/4, each of X, Y, Z with q/4.
SiteChannel depolarizing_site(double q);

/// Pauli eigenvalue of a single-qubit channel: sum_a p_a (-1)^{a.letter}.
double site_fidelity(const SiteChannel &channel, uint8_t letter);

/// State-preparation and measurement noise: a product of single-qubit Pauli
/// channels before the twirl (prep) and after it (meas).
struct SpamModel {
    std::vector<SiteChannel> prep;
    std::vector<SiteChannel> meas;

    static SpamModel noiseless(uint32_t n);
    /// Local depolarizing of strength q on both sides.
    static SpamModel depolarizing(uint32_t n, double q_prep, double q_meas);

    uint32_t num_qubits() const { return static_cast<uint32_t>(prep.size()); }
    /// Throws ConfigError unless every factor is a probability vector.
    void validate() const;

    bool operator==(const SpamModel &) const = default;
};

/// C_P = 2^{-2n} tr(Phi_1^*(P) P) tr(Phi_2^*(P) P), a product of per-site fidelities.
double spam_attenuation(const SpamModel &spam, const PauliString &p);

}  // namespace pauli_mrf

#endif
