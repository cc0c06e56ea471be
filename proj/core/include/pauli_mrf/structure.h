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

#ifndef PAULI_MRF_STRUCTURE_H
#define PAULI_MRF_STRUCTURE_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pauli_mrf/graphical_model.h"
#include "pauli_mrf/marginal_provider.h"
#include "pauli_mrf/model_io.h"

namespace pauli_mrf {

/// P(P_u = R, P_I = G | P_S = s) next to P(P_u = R | s) P(P_I = G | s).
struct ConditionalProbs {
    uint32_t i_size = 0;
    /// [R * 4^|I| + G], R and G as table indices over {u} and I.
    std::vector<double> joint;
    std::vector<double> product;
    /// mu(P_S = s).
    double weight = 0;

    double delta(uint64_t r, uint64_t g) const { return joint[r * (uint64_t{1} << (2 * i_size)) + g] - product[r * (uint64_t{1} << (2 * i_size)) + g]; }
};

/// Conditionals for one assignment `s` (a Pauli over S, in S's order) from a
/// table covering {u} u I u S.
ConditionalProbs conditional_probs(const MarginalTable &table, uint32_t u, const Region &i, const Region &s_region,
                                   const PauliString &s);

/// nu_{u,I|S} = E_{R,G} E_{s ~ mu_S} |Delta_{u,I|S}(R, G, s)| with R and G uniform.
double nu_from_table(const MarginalTable &table, uint32_t u, const Region &i, const Region &s);

/// nu_hat on the provider's marginal over {u} u I u S.
double nu_hat(uint32_t u, const Region &i, const Region &s, const MarginalProvider &provider);

/// Anything that scores (u, I, S) triples; lets tests inject perturbations.
using NuFunction = std::function<double(uint32_t u, const Region &i, const Region &s)>;

NuFunction nu_function(const MarginalProvider &provider);

struct NeighborhoodOptions {
    /// Largest hyperedge size r; candidate sets I have 1..r-1 elements.
    uint32_t r = 2;
    uint64_t L = 1;
    double tau = 0;
};

/// Grow: while |S| <= L, add the I maximizing nu(u, I | S) among those above
/// tau (ties to the lexicographically smallest I). Prune: remove every i of
/// the grown set S0 with nu(u, i | S0 \ i) < tau, tested against S0 itself.
Region neighborhood_learning(uint32_t u, uint32_t n, const NuFunction &nu, const NeighborhoodOptions &options);

enum class Symmetrization { kAnd, kOr };

struct StructureOptions {
    NeighborhoodOptions neighborhood;
    Symmetrization symmetrization = Symmetrization::kAnd;
    uint32_t threads = 1;
};

struct LearnedStructure {
    uint32_t num_qubits = 0;
    std::vector<Region> neighborhoods;
    DerivedGraph graph;
    /// All cliques of size <= r of `graph`.
    std::vector<Region> hyperedge_candidates;
    std::vector<std::string> warnings;
    double tau = 0;
    uint64_t L = 1;
    uint32_t r = 2;
    std::string provider;
};

LearnedStructure learn_graph(uint32_t n, const NuFunction &nu, const StructureOptions &options);
LearnedStructure learn_graph(const MarginalProvider &provider, const StructureOptions &options);

struct NuDeviation {
    uint32_t u = 0;
    Region i;
    Region s;
    double nu = 0;
    double nu_hat = 0;
};

struct EventAReport {
    double max_deviation = 0;
    size_t triples_checked = 0;
    std::vector<NuDeviation> violations;
    bool holds() const { return violations.empty(); }
};

/// Compares nu_hat with the exact nu over every (u, I, S) with |I| <= r - 1
/// and |S| <= ell (or over `sample_triples` random ones when nonzero).
EventAReport event_A_check(uint32_t n, const NuFunction &estimated, const NuFunction &exact, uint32_t r, uint32_t ell,
                           double epsilon, uint64_t sample_triples = 0, uint64_t seed = 0);

Json structure_to_json(const LearnedStructure &s);
LearnedStructure structure_from_json(const Json &json);

}  // namespace pauli_mrf

#endif
