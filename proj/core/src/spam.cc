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

#include "pauli_mrf/spam.h"

#include <cmath>
#include <string>

#include "pauli_mrf/errors.h"

namespace pauli_mrf {

SiteChannel depolarizing_site(double q) {
    return {1 - 0.75 * q, 0.25 * q, 0.25 * q, 0.25 * q};
}

double site_fidelity(const SiteChannel &channel, uint8_t letter) {
    double out = 0;
    for (uint8_t a = 0; a < 4; a++) {
        // Single-site symplectic product of codes a and letter.
        int anti = ((a & 1) & (letter >> 1)) ^ ((a >> 1) & (letter & 1));
        out += anti ? -channel[a] : channel[a];
    }
    return out;
}

SpamModel SpamModel::noiseless(uint32_t n) {
    return depolarizing(n, 0, 0);
}

SpamModel SpamModel::depolarizing(uint32_t n, double q_prep, double q_meas) {
    SpamModel out;
    out.prep.assign(n, depolarizing_site(q_prep));
    out.meas.assign(n, depolarizing_site(q_meas));
    out.validate();
    return out;
}

void SpamModel::validate() const {
    if (prep.size() != meas.size()) {
        throw ConfigError("SPAM prep and meas cover different qubit counts.");
    }
    for (const auto *side : {&prep, &meas}) {
        for (size_t i = 0; i < side->size(); i++) {
            double total = 0;
            for (double p : (*side)[i]) {
                if (!(p >= 0 && p <= 1)) {
                    throw ConfigError("SPAM factor on qubit " + std::to_string(i) + " has a probability outside [0, 1].");
                }
                total += p;
            }
            if (std::abs(total - 1) > 1e-9) {
                throw ConfigError("SPAM factor on qubit " + std::to_string(i) + " does not sum to 1.");
            }
        }
    }
}

double spam_attenuation(const SpamModel &spam, const PauliString &p) {
    if (p.num_qubits != spam.num_qubits()) {
        throw DimensionError("SPAM model and Pauli string disagree on qubit count.");
    }
    double out = 1;
    for (uint32_t i = 0; i < p.num_qubits; i++) {
        uint8_t code = p.site_code(i);
        if (code != 0) {
            out *= site_fidelity(spam.prep[i], code) * site_fidelity(spam.meas[i], code);
        }
    }
    return out;
}

}  // namespace pauli_mrf
