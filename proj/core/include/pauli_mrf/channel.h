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

#ifndef PAULI_MRF_CHANNEL_H
#define PAULI_MRF_CHANNEL_H

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pauli_mrf/graphical_model.h"
#include "pauli_mrf/shot_bank.h"
#include "pauli_mrf/spam.h"

namespace pauli_mrf {

/// The Pauli channel rho -> sum_P mu(P) P rho P.
class PauliChannel {
   public:
    static PauliChannel from_model(const GibbsNoiseModel &model, std::optional<McmcOptions> mcmc = std::nullopt);
    /// Explicit probability table over all 4^n strings (must sum to 1).
    static PauliChannel from_table(uint32_t n, std::vector<double> probs);

    uint32_t num_qubits() const { return sampler_.num_qubits(); }
    const ErrorSampler &sampler() const { return sampler_; }
    bool has_exact_table() const { return static_cast<bool>(table_); }
    /// Normalized error table; throws UnsupportedSizeError when the channel is MCMC-only.
    const std::vector<double> &table() const;
    /// mu(identity).
    double p0() const;
    /// All Pauli eigenvalues alpha_Q in table order.
    std::vector<double> eigenvalues() const;

   private:
    ErrorSampler sampler_;
    std::shared_ptr<const std::vector<double>> table_;
};

/// Ground-truth alpha_Q = sum_P (-1)^{P.Q} mu(P).
double eigenvalue(const PauliChannel &channel, const PauliString &q);

/// Distribution of the k-fold composed channel: the k-fold XOR-convolution of mu.
std::vector<double> compose_channel_table(const std::vector<double> &probs, uint32_t n, uint32_t k);

/// One run of the randomized circuit
///
///     |0> -> C -> Phi_1 -> Q_in -> P^k -> Q_out -> Phi_2 -> C^dagger -> measure Z
///
/// with C a uniformly random product of single-qubit Cliffords and Q_in, Q_out
/// uniform Pauli strings. Every element maps Pauli frames to Pauli frames, so
/// the circuit reduces to one composite Pauli E per shot; the outcome of qubit
/// i is drawn from the computational-basis distribution of C_i^dagger E_i C_i |0>.
ShotRecord simulate_shot(const PauliChannel &channel, const SpamModel &spam, uint32_t k, Rng &rng);

/// Shots per random stream in batch_simulate.
inline constexpr uint64_t kShotChunk = 4096;

/// Simulates every group of `schedule`. The shots j in [c B, (c+1) B) of the
/// group with repetition count k (B = kShotChunk) are drawn in order from the
/// stream derive_stream(master_seed, {kShots, k, c}); chunks are the unit of
/// parallel work, so the bank is identical for any `threads` value.
ShotBank batch_simulate(const PauliChannel &channel, const SpamModel &spam, const std::vector<ScheduleEntry> &schedule,
                        uint64_t master_seed, uint32_t threads = 1);

}  // namespace pauli_mrf

#endif
