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

#ifndef PAULI_MRF_GRAPHICAL_MODEL_H
#define PAULI_MRF_GRAPHICAL_MODEL_H

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pauli_mrf/pauli_string.h"
#include "pauli_mrf/random.h"

namespace pauli_mrf {

/// Vertices are qubits; hyperedges are kept as sorted regions.
struct Hypergraph {
    uint32_t num_qubits = 0;
    std::vector<Region> hyperedges;

    /// Largest hyperedge size r.
    uint32_t max_edge_size() const;
    /// True when no strictly larger hyperedge contains hyperedge `k`.
    bool is_maximal(size_t k) const;
    /// Throws DimensionError on empty, duplicate, out-of-range or oversized hyperedges.
    void validate(uint32_t r_limit = kMaxQubits) const;
};

/// Simple graph obtained by replacing every hyperedge with a clique.
struct DerivedGraph {
    uint32_t num_qubits = 0;
    /// Bitmask of neighbors per vertex.
    std::vector<uint64_t> adjacency;

    explicit DerivedGraph(uint32_t n = 0) : num_qubits(n), adjacency(n, 0) {
    }

    void add_edge(uint32_t a, uint32_t b);
    bool has_edge(uint32_t a, uint32_t b) const;
    Region neighbors(uint32_t u) const;
    uint32_t degree(uint32_t u) const;
    uint32_t max_degree() const;
    /// Edges (a, b) with a < b, lexicographic.
    std::vector<std::pair<uint32_t, uint32_t>> edges() const;
    /// All cliques of size 1..max_size, as sorted regions, ordered by size then lexicographically.
    std::vector<Region> cliques(uint32_t max_size) const;
    /// True when every path from a vertex of `a` to a vertex of `c` crosses `b`.
    bool separates(const Region &b, const Region &a, const Region &c) const;

    bool operator==(const DerivedGraph &) const = default;
};

DerivedGraph derived_graph(const Hypergraph &h);

/// Clique potential theta^h: one real per Pauli string over the hyperedge,
/// in table order.
struct PotentialTable {
    Region hyperedge;
    std::vector<double> values;

    PotentialTable() = default;
    PotentialTable(Region h, std::vector<double> table);
    static PotentialTable zeros(Region h);

    double at(const PauliString &local) const;
    double max_abs() const;
    double sum() const;

    bool operator==(const PotentialTable &) const = default;
};

/// Subtracts the mean so the table sums to zero.
PotentialTable zero_sum_projection(const PotentialTable &table);

/// Keeps only the characters chi_P with P non-identity on every site of the
/// hyperedge. The result is the canonical (Fourier) gauge representative:
/// summing it over the letter of any single site gives zero.
PotentialTable canonical_projection(const PotentialTable &table);

/// Largest deviation of `table` from its canonical projection.
double canonical_gauge_defect(const PotentialTable &table);

struct ModelMetadata {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<uint64_t> seed;
    bool operator==(const ModelMetadata &) const = default;
};

/// Gibbs distribution mu(P) = exp(sum_h theta^h(P_h) - C) over n-qubit Pauli strings.
///
/// Immutable after construction. The normalized dense table (n <= cap) is
/// computed on first use and shared between copies.
class GibbsNoiseModel {
   public:
    GibbsNoiseModel() = default;
    GibbsNoiseModel(uint32_t n, std::vector<PotentialTable> potentials, ModelMetadata metadata = {});

    uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<PotentialTable> &potentials() const { return potentials_; }
    const ModelMetadata &metadata() const { return metadata_; }
    Hypergraph hypergraph() const;

    /// sum_h theta^h(restrict(P, h)).
    double log_density_unnormalized(const PauliString &p) const;
    /// Log-partition C; throws UnsupportedSizeError above the enumeration cap.
    double log_partition() const;
    /// Normalized table over all 4^n strings.
    std::shared_ptr<const std::vector<double>> dense_table() const;
    /// mu(P).
    double probability(const PauliString &p) const;

    /// Potentials on each site's incident hyperedges, for local updates.
    const std::vector<std::vector<uint32_t>> &incident_potentials() const { return incident_; }

    bool operator==(const GibbsNoiseModel &other) const;

   private:
    struct Cache;
    uint32_t num_qubits_ = 0;
    std::vector<PotentialTable> potentials_;
    ModelMetadata metadata_;
    std::vector<std::vector<uint32_t>> incident_;
    std::shared_ptr<Cache> cache_;
};

/// C = log sum_P exp(sum_h theta^h(P_h)).
double partition(const GibbsNoiseModel &model);

/// Marginal mu_A as a table over Pauli strings on A (in A's order).
std::vector<double> exact_marginal(const GibbsNoiseModel &model, const Region &region);

/// Single-site Metropolis settings for models above the enumeration cap.
struct McmcOptions {
    /// 0 selects the default of 100 * n sweeps.
    uint32_t burn_in_sweeps = 0;
    uint32_t thinning_sweeps = 10;
};

/// Draws Pauli errors P ~ mu.
///
/// Exact mode draws by inverse CDF from the dense table. MCMC mode starts a
/// fresh chain per call from the caller's stream, so each call is a pure
/// function of the stream state.
class ErrorSampler {
   public:
    /// Exact when n <= cap; otherwise MCMC, which requires `mcmc`.
    static ErrorSampler for_model(const GibbsNoiseModel &model, std::optional<McmcOptions> mcmc = std::nullopt);
    static ErrorSampler from_table(uint32_t n, std::shared_ptr<const std::vector<double>> probs);
    static ErrorSampler mcmc(const GibbsNoiseModel &model, McmcOptions options);

    uint32_t num_qubits() const { return num_qubits_; }
    bool is_exact() const { return static_cast<bool>(cdf_); }

    PauliString sample(Rng &rng) const;
    /// Product (mask XOR) of k independent draws: the error of the k-fold channel.
    PauliString sample_product(uint32_t k, Rng &rng) const;

   private:
    uint64_t draw_index(Rng &rng) const;
    void sweep(std::vector<uint8_t> &config, Rng &rng) const;

    uint32_t num_qubits_ = 0;
    std::shared_ptr<const std::vector<double>> cdf_;
    std::shared_ptr<const GibbsNoiseModel> model_;
    McmcOptions options_;
};

/// One draw from mu. Above the cap this needs MCMC options.
PauliString sample_error(const GibbsNoiseModel &model, Rng &rng, std::optional<McmcOptions> mcmc = std::nullopt);

struct ModelConstants {
    double gamma = 0;
    double eta = 0.25;
    double tau = 0;
    uint64_t L = 1;
    /// Value the threshold formula produced before any override or cap.
    double tau_formula = 0;
    bool tau_overridden = false;
    bool L_overridden = false;
};

struct ConstantsOverrides {
    std::optional<double> tau;
    std::optional<uint64_t> L;
};

/// gamma = sup_u sum_{h containing u} |theta^h|_max, eta = e^{-2 gamma} / 4,
/// tau from the structure-learning threshold formula and L = ceil(8 ln 4 / tau^2).
///
/// The threshold formula's undefined base and exponent symbols are bound as
/// delta := 4 eta and d := 2. When gamma = 0 the formula diverges and tau is
/// capped at 1 (no conditional-covariance score can exceed it).
ModelConstants compute_constants(const GibbsNoiseModel &model, double alpha, double beta, double delta_struct,
                                 ConstantsOverrides overrides = {});

/// log10 of the structure-learning copy count
/// log(1/(1-p0)) 4^{3r+5L} (C_SPAM tau eta^L)^-2 log(n^{r+L}/delta).
/// Returned in log10 because the raw value overflows any float for real constants.
double structure_budget_log10(const ModelConstants &constants, uint32_t n, uint32_t r, double p0, double c_spam,
                              double delta);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks (a) every derived-graph edge lies in a hyperedge with a nonzero tensor,
/// (b) every maximal hyperedge reaches |theta| >= alpha, (c) all |theta| <= beta.
ValidationReport validate_conditions(const GibbsNoiseModel &model, double alpha, double beta);

}  // namespace pauli_mrf

#endif
