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

#ifndef PAULI_MRF_MODEL_GENERATION_H
#define PAULI_MRF_MODEL_GENERATION_H

#include <cstdint>
#include <string>
#include <vector>

#include "pauli_mrf/graphical_model.h"

namespace pauli_mrf {

enum class Topology { kChain, kCycle, kRandomBoundedDegree, kExplicit };

Topology topology_from_name(const std::string &name);
std::string topology_name(Topology t);

struct GenerationParams {
    Topology topology = Topology::kChain;
    uint32_t num_qubits = 4;
    /// Hyperedge size. Chains and cycles use windows of r consecutive qubits.
    uint32_t r = 2;
    /// Degree bound of the derived graph for random instances.
    uint32_t max_degree = 3;
    double alpha = 0.4;
    double beta = 0.4;
    uint64_t seed = 1;
    /// Hyperedges for Topology::kExplicit.
    std::vector<Region> hyperedges;
};

/// Random canonical-gauge tensor on `h` whose largest |entry| equals `magnitude`.
PotentialTable random_canonical_potential(const Region &h, double magnitude, Rng &rng);

/// Builds the hypergraph for a topology (random ones use `rng`).
Hypergraph generate_hypergraph(const GenerationParams &params, Rng &rng);

/// A model satisfying conditions (a)-(c) for (alpha, beta): every tensor is in
/// canonical gauge and its largest |entry| is drawn uniformly from [alpha, beta].
/// Throws ConfigError when alpha > beta or the topology cannot be built.
GibbsNoiseModel generate_model(const GenerationParams &params);

/// Per-qubit independent channel with error probability p spread evenly over X, Y, Z.
GibbsNoiseModel product_depolarizing_model(uint32_t n, double p);

}  // namespace pauli_mrf

#endif
