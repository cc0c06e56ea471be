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

#include "pauli_mrf/model_generation.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

Topology topology_from_name(const std::string &name) {
    if (name == "chain") {
        return Topology::kChain;
    }
    if (name == "cycle") {
        return Topology::kCycle;
    }
    if (name == "random-bounded-degree") {
        return Topology::kRandomBoundedDegree;
    }
    if (name == "explicit") {
        return Topology::kExplicit;
    }
    throw ConfigError("Unknown topology '" + name + "'.");
}

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::kChain:
            return "chain";
        case Topology::kCycle:
            return "cycle";
        case Topology::kRandomBoundedDegree:
            return "random-bounded-degree";
        case Topology::kExplicit:
            return "explicit";
    }
    return "unknown";
}

PotentialTable random_canonical_potential(const Region &h, double magnitude, Rng &rng) {
    uint32_t m = static_cast<uint32_t>(h.size());
    uint64_t full = (uint64_t{1} << m) - 1;
    std::vector<double> coefficients(table_size(m), 0.0);
    for (uint64_t idx = 0; idx < coefficients.size(); idx++) {
        if (((idx & full) | (idx >> m)) == full) {
            coefficients[idx] = 2 * uniform01(rng) - 1;
        }
    }
    // theta(Q) = sum_P c_P chi_P(Q) is the forward transform of the coefficients.
    symplectic_transform(coefficients, m);
    PotentialTable table(h, std::move(coefficients));
    double top = table.max_abs();
    if (top > 0) {
        for (double &v : table.values) {
            v *= magnitude / top;
        }
    }
    return table;
}

namespace {

std::vector<Region> windows(uint32_t n, uint32_t r, bool wrap) {
    std::vector<Region> out;
    uint32_t count = wrap ? n : (n >= r ? n - r + 1 : 0);
    for (uint32_t start = 0; start < count; start++) {
        std::vector<uint32_t> qubits;
        for (uint32_t k = 0; k < r; k++) {
            qubits.push_back((start + k) % n);
        }
        out.push_back(Region(std::move(qubits)).sorted());
    }
    return out;
}

}  // namespace

Hypergraph generate_hypergraph(const GenerationParams &params, Rng &rng) {
    uint32_t n = params.num_qubits;
    uint32_t r = params.r;
    if (n == 0 || n > kMaxQubits) {
        throw ConfigError("Qubit count must be in 1.." + std::to_string(kMaxQubits) + ".");
    }
    if (r == 0 || r > n) {
        throw ConfigError("Hyperedge size r must be in 1..n.");
    }
    Hypergraph h{n, {}};
    switch (params.topology) {
        case Topology::kChain:
            h.hyperedges = windows(n, r, false);
            break;
        case Topology::kCycle:
            if (n <= r) {
                throw ConfigError("A cycle needs more qubits than the hyperedge size.");
            }
            h.hyperedges = windows(n, r, true);
            break;
        case Topology::kExplicit:
            for (const auto &e : params.hyperedges) {
                h.hyperedges.push_back(e.sorted());
            }
            break;
        case Topology::kRandomBoundedDegree: {
            if (r < 2) {
                throw ConfigError("Random bounded-degree instances need r >= 2.");
            }
            if (params.max_degree < r - 1) {
                throw ConfigError("Degree bound too small for hyperedges of size r.");
            }
            DerivedGraph g(n);
            std::set<uint64_t> used;
            uint32_t attempts = 50 * n;
            for (uint32_t a = 0; a < attempts; a++) {
                uint64_t mask = 0;
                while (static_cast<uint32_t>(std::popcount(mask)) < r) {
                    mask |= uint64_t{1} << uniform_below(rng, n);
                }
                if (used.count(mask)) {
                    continue;
                }
                Region e = Region::from_mask(mask);
                DerivedGraph trial = g;
                for (size_t i = 0; i < e.size(); i++) {
                    for (size_t j = i + 1; j < e.size(); j++) {
                        trial.add_edge(e[i], e[j]);
                    }
                }
                if (trial.max_degree() > params.max_degree) {
                    continue;
                }
                // Skip hyperedges that add no new edge: they would be nested in the graph's cliques.
                if (trial == g) {
                    continue;
                }
                g = trial;
                used.insert(mask);
                h.hyperedges.push_back(e);
            }
            break;
        }
    }
    h.validate(std::max(r, h.max_edge_size()));
    return h;
}

GibbsNoiseModel generate_model(const GenerationParams &params) {
    if (!(params.alpha > 0) || !(params.beta > 0)) {
        throw ConfigError("alpha and beta must be positive.");
    }
    if (params.alpha > params.beta) {
        throw ConfigError("Infeasible bounds: alpha > beta.");
    }
    Rng rng = derive_stream(params.seed, StreamTag::kModel);
    Hypergraph h = generate_hypergraph(params, rng);
    std::vector<PotentialTable> potentials;
    for (const auto &e : h.hyperedges) {
        double magnitude = params.alpha + (params.beta - params.alpha) * uniform01(rng);
        potentials.push_back(random_canonical_potential(e, magnitude, rng));
    }
    ModelMetadata meta{params.alpha, params.beta, params.seed};
    return GibbsNoiseModel(params.num_qubits, std::move(potentials), meta);
}

GibbsNoiseModel product_depolarizing_model(uint32_t n, double p) {
    if (!(p > 0) || !(p < 1)) {
        throw ConfigError("Depolarizing error probability must lie in (0, 1).");
    }
    std::vector<PotentialTable> potentials;
    double error = std::log(p / 3);
    double keep = std::log(1 - p);
    double mean = (keep + 3 * error) / 4;
    for (uint32_t q = 0; q < n; q++) {
        potentials.emplace_back(Region{q}, std::vector<double>{keep - mean, error - mean, error - mean, error - mean});
    }
    return GibbsNoiseModel(n, std::move(potentials));
}

}  // namespace pauli_mrf
