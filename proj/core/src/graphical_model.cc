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

#include "pauli_mrf/graphical_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>

#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

uint32_t Hypergraph::max_edge_size() const {
    uint32_t r = 0;
    for (const auto &h : hyperedges) {
        r = std::max(r, static_cast<uint32_t>(h.size()));
    }
    return r;
}

bool Hypergraph::is_maximal(size_t k) const {
    uint64_t mask = hyperedges[k].mask();
    for (size_t j = 0; j < hyperedges.size(); j++) {
        if (j == k || hyperedges[j].size() <= hyperedges[k].size()) {
            continue;
        }
        if ((hyperedges[j].mask() & mask) == mask) {
            return false;
        }
    }
    return true;
}

void Hypergraph::validate(uint32_t r_limit) const {
    std::set<uint64_t> seen;
    for (const auto &h : hyperedges) {
        if (h.empty()) {
            throw DimensionError("Empty hyperedge.");
        }
        if (h.size() > r_limit) {
            throw DimensionError("Hyperedge " + h.str() + " is larger than r=" + std::to_string(r_limit) + ".");
        }
        h.validate(num_qubits);
        if (!seen.insert(h.mask()).second) {
            throw DimensionError("Duplicate hyperedge " + h.str() + ".");
        }
    }
}

void DerivedGraph::add_edge(uint32_t a, uint32_t b) {
    if (a >= num_qubits || b >= num_qubits) {
        throw DimensionError("Edge endpoint out of range.");
    }
    if (a == b) {
        return;
    }
    adjacency[a] |= uint64_t{1} << b;
    adjacency[b] |= uint64_t{1} << a;
}

bool DerivedGraph::has_edge(uint32_t a, uint32_t b) const {
    return (adjacency[a] >> b) & 1;
}

Region DerivedGraph::neighbors(uint32_t u) const {
    return Region::from_mask(adjacency[u]);
}

uint32_t DerivedGraph::degree(uint32_t u) const {
    return static_cast<uint32_t>(std::popcount(adjacency[u]));
}

uint32_t DerivedGraph::max_degree() const {
    uint32_t d = 0;
    for (uint32_t u = 0; u < num_qubits; u++) {
        d = std::max(d, degree(u));
    }
    return d;
}

std::vector<std::pair<uint32_t, uint32_t>> DerivedGraph::edges() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t a = 0; a < num_qubits; a++) {
        for (uint32_t b = a + 1; b < num_qubits; b++) {
            if (has_edge(a, b)) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::vector<Region> DerivedGraph::cliques(uint32_t max_size) const {
    std::vector<uint64_t> found;
    // Extend each clique only by vertices above its largest member.
    auto extend = [&](auto &&self, uint64_t clique, uint64_t candidates, uint32_t size) -> void {
        found.push_back(clique);
        if (size == max_size) {
            return;
        }
        while (candidates) {
            uint32_t v = static_cast<uint32_t>(std::countr_zero(candidates));
            candidates &= candidates - 1;
            self(self, clique | (uint64_t{1} << v), candidates & adjacency[v], size + 1);
        }
    };
    for (uint32_t u = 0; u < num_qubits && max_size > 0; u++) {
        uint64_t above = u + 1 >= 64 ? 0 : ~((uint64_t{1} << (u + 1)) - 1);
        extend(extend, uint64_t{1} << u, adjacency[u] & above, 1);
    }
    std::vector<Region> out;
    out.reserve(found.size());
    for (uint64_t m : found) {
        out.push_back(Region::from_mask(m));
    }
    std::sort(out.begin(), out.end(), [](const Region &a, const Region &b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a.qubits() < b.qubits();
    });
    return out;
}

bool DerivedGraph::separates(const Region &b, const Region &a, const Region &c) const {
    uint64_t blocked = b.mask();
    uint64_t target = c.mask() & ~blocked;
    uint64_t visited = a.mask() & ~blocked;
    uint64_t frontier = visited;
    while (frontier) {
        if (frontier & target) {
            return false;
        }
        uint64_t next = 0;
        while (frontier) {
            uint32_t v = static_cast<uint32_t>(std::countr_zero(frontier));
            frontier &= frontier - 1;
            next |= adjacency[v];
        }
        next &= ~blocked & ~visited;
        visited |= next;
        frontier = next;
    }
    return true;
}

DerivedGraph derived_graph(const Hypergraph &h) {
    DerivedGraph g(h.num_qubits);
    for (const auto &e : h.hyperedges) {
        for (size_t i = 0; i < e.size(); i++) {
            for (size_t j = i + 1; j < e.size(); j++) {
                g.add_edge(e[i], e[j]);
            }
        }
    }
    return g;
}

PotentialTable::PotentialTable(Region h, std::vector<double> table) : hyperedge(std::move(h)), values(std::move(table)) {
    if (values.size() != table_size(hyperedge.size())) {
        throw DimensionError("Potential on " + hyperedge.str() + " needs " +
                             std::to_string(table_size(hyperedge.size())) + " entries, got " +
                             std::to_string(values.size()) + ".");
    }
}

PotentialTable PotentialTable::zeros(Region h) {
    size_t size = table_size(h.size());
    return PotentialTable(std::move(h), std::vector<double>(size, 0.0));
}

double PotentialTable::at(const PauliString &local) const {
    if (local.num_qubits != hyperedge.size()) {
        throw DimensionError("Potential on " + hyperedge.str() + " evaluated on " + local.str() + ".");
    }
    return values[local.index()];
}

double PotentialTable::max_abs() const {
    double m = 0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double PotentialTable::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

PotentialTable zero_sum_projection(const PotentialTable &table) {
    PotentialTable out = table;
    double mean = table.sum() / static_cast<double>(table.values.size());
    for (double &v : out.values) {
        v -= mean;
    }
    return out;
}

PotentialTable canonical_projection(const PotentialTable &table) {
    uint32_t m = static_cast<uint32_t>(table.hyperedge.size());
    uint64_t full = (uint64_t{1} << m) - 1;
    std::vector<double> coefficients = table.values;
    symplectic_transform(coefficients, m);
    for (uint64_t idx = 0; idx < coefficients.size(); idx++) {
        uint64_t support = (idx & full) | (idx >> m);
        if (support != full) {
            coefficients[idx] = 0;
        }
    }
    inverse_symplectic_transform(coefficients, m);
    return PotentialTable(table.hyperedge, std::move(coefficients));
}

double canonical_gauge_defect(const PotentialTable &table) {
    PotentialTable projected = canonical_projection(table);
    double defect = 0;
    for (size_t k = 0; k < table.values.size(); k++) {
        defect = std::max(defect, std::abs(table.values[k] - projected.values[k]));
    }
    return defect;
}

struct GibbsNoiseModel::Cache {
    std::once_flag once;
    std::shared_ptr<const std::vector<double>> table;
    double log_partition = 0;
};

GibbsNoiseModel::GibbsNoiseModel(uint32_t n, std::vector<PotentialTable> potentials, ModelMetadata metadata)
    : num_qubits_(n), potentials_(std::move(potentials)), metadata_(metadata), incident_(n),
      cache_(std::make_shared<Cache>()) {
    if (n > kMaxQubits) {
        throw DimensionError("At most " + std::to_string(kMaxQubits) + " qubits are supported.");
    }
    hypergraph().validate();
    for (uint32_t k = 0; k < potentials_.size(); k++) {
        for (uint32_t q : potentials_[k].hyperedge) {
            incident_[q].push_back(k);
        }
    }
}

Hypergraph GibbsNoiseModel::hypergraph() const {
    Hypergraph h{num_qubits_, {}};
    for (const auto &p : potentials_) {
        h.hyperedges.push_back(p.hyperedge);
    }
    return h;
}

double GibbsNoiseModel::log_density_unnormalized(const PauliString &p) const {
    if (p.num_qubits != num_qubits_) {
        throw DimensionError("Model on " + std::to_string(num_qubits_) + " qubits evaluated on " + p.str() + ".");
    }
    double total = 0;
    for (const auto &pot : potentials_) {
        total += pot.values[restricted_index(p, pot.hyperedge)];
    }
    return total;
}

std::shared_ptr<const std::vector<double>> GibbsNoiseModel::dense_table() const {
    size_t size = table_size(num_qubits_);
    if (!cache_) {
        throw std::logic_error("Default-constructed model has no distribution.");
    }
    std::call_once(cache_->once, [&] {
        std::vector<double> logw(size, 0.0);
        uint32_t n = num_qubits_;
        for (const auto &pot : potentials_) {
            const Region &h = pot.hyperedge;
            size_t m = h.size();
            for (uint64_t idx = 0; idx < size; idx++) {
                uint64_t local = 0;
                for (size_t k = 0; k < m; k++) {
                    local |= ((idx >> h[k]) & 1) << k;
                    local |= ((idx >> (h[k] + n)) & 1) << (k + m);
                }
                logw[idx] += pot.values[local];
            }
        }
        double top = *std::max_element(logw.begin(), logw.end());
        double total = 0;
        for (double &v : logw) {
            v = std::exp(v - top);
            total += v;
        }
        for (double &v : logw) {
            v /= total;
        }
        cache_->log_partition = top + std::log(total);
        cache_->table = std::make_shared<const std::vector<double>>(std::move(logw));
    });
    return cache_->table;
}

double GibbsNoiseModel::log_partition() const {
    dense_table();
    return cache_->log_partition;
}

double GibbsNoiseModel::probability(const PauliString &p) const {
    return std::exp(log_density_unnormalized(p) - log_partition());
}

bool GibbsNoiseModel::operator==(const GibbsNoiseModel &other) const {
    return num_qubits_ == other.num_qubits_ && potentials_ == other.potentials_ && metadata_ == other.metadata_;
}

double partition(const GibbsNoiseModel &model) {
    return model.log_partition();
}

std::vector<double> exact_marginal(const GibbsNoiseModel &model, const Region &region) {
    region.validate(model.num_qubits());
    auto table = model.dense_table();
    return marginalize(*table, Region::full(model.num_qubits()), region);
}

ErrorSampler ErrorSampler::from_table(uint32_t n, std::shared_ptr<const std::vector<double>> probs) {
    if (probs->size() != table_size(n)) {
        throw DimensionError("Probability table does not cover 4^n strings.");
    }
    std::vector<double> cdf(probs->size());
    std::partial_sum(probs->begin(), probs->end(), cdf.begin());
    ErrorSampler s;
    s.num_qubits_ = n;
    s.cdf_ = std::make_shared<const std::vector<double>>(std::move(cdf));
    return s;
}

ErrorSampler ErrorSampler::mcmc(const GibbsNoiseModel &model, McmcOptions options) {
    ErrorSampler s;
    s.num_qubits_ = model.num_qubits();
    s.model_ = std::make_shared<const GibbsNoiseModel>(model);
    if (options.burn_in_sweeps == 0) {
        options.burn_in_sweeps = 100 * model.num_qubits();
    }
    s.options_ = options;
    return s;
}

ErrorSampler ErrorSampler::for_model(const GibbsNoiseModel &model, std::optional<McmcOptions> mcmc_options) {
    if (model.num_qubits() <= kEnumerationCap) {
        return from_table(model.num_qubits(), model.dense_table());
    }
    if (!mcmc_options) {
        throw UnsupportedSizeError("Model on " + std::to_string(model.num_qubits()) +
                                   " qubits exceeds the enumeration cap; configure MCMC sampling.");
    }
    return mcmc(model, *mcmc_options);
}

uint64_t ErrorSampler::draw_index(Rng &rng) const {
    const auto &cdf = *cdf_;
    double u = uniform01(rng) * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        --it;
    }
    return static_cast<uint64_t>(it - cdf.begin());
}

void ErrorSampler::sweep(std::vector<uint8_t> &config, Rng &rng) const {
    const auto &pots = model_->potentials();
    const auto &incident = model_->incident_potentials();
    auto local_value = [&](const PotentialTable &pot) {
        size_t m = pot.hyperedge.size();
        uint64_t idx = 0;
        for (size_t k = 0; k < m; k++) {
            uint8_t code = config[pot.hyperedge[k]];
            idx |= uint64_t{code & 1u} << k;
            idx |= uint64_t{(code >> 1) & 1u} << (k + m);
        }
        return pot.values[idx];
    };
    for (uint32_t site = 0; site < num_qubits_; site++) {
        uint8_t current = config[site];
        uint8_t proposal = static_cast<uint8_t>(uniform_below(rng, 4));
        if (proposal == current) {
            continue;
        }
        double before = 0, after = 0;
        for (uint32_t k : incident[site]) {
            before += local_value(pots[k]);
        }
        config[site] = proposal;
        for (uint32_t k : incident[site]) {
            after += local_value(pots[k]);
        }
        double delta = after - before;
        if (delta < 0 && uniform01(rng) >= std::exp(delta)) {
            config[site] = current;
        }
    }
}

PauliString ErrorSampler::sample(Rng &rng) const {
    return sample_product(1, rng);
}

PauliString ErrorSampler::sample_product(uint32_t k, Rng &rng) const {
    PauliString total = PauliString::identity(num_qubits_);
    if (cdf_) {
        for (uint32_t j = 0; j < k; j++) {
            total *= PauliString::from_index(num_qubits_, draw_index(rng));
        }
        return total;
    }
    if (!model_) {
        throw std::logic_error("Unconfigured error sampler.");
    }
    std::vector<uint8_t> config(num_qubits_);
    for (auto &c : config) {
        c = static_cast<uint8_t>(uniform_below(rng, 4));
    }
    for (uint32_t s = 0; s < options_.burn_in_sweeps; s++) {
        sweep(config, rng);
    }
    for (uint32_t j = 0; j < k; j++) {
        if (j > 0) {
            for (uint32_t s = 0; s < options_.thinning_sweeps; s++) {
                sweep(config, rng);
            }
        }
        uint64_t x = 0, z = 0;
        for (uint32_t q = 0; q < num_qubits_; q++) {
            x |= uint64_t{config[q] & 1u} << q;
            z |= uint64_t{(config[q] >> 1) & 1u} << q;
        }
        total *= PauliString(num_qubits_, x, z);
    }
    return total;
}

PauliString sample_error(const GibbsNoiseModel &model, Rng &rng, std::optional<McmcOptions> mcmc) {
    return ErrorSampler::for_model(model, mcmc).sample(rng);
}

namespace {

double binomial(uint32_t n, uint32_t k) {
    if (k > n) {
        return 0;
    }
    double out = 1;
    for (uint32_t j = 1; j <= k; j++) {
        out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return out;
}

}  // namespace

ModelConstants compute_constants(const GibbsNoiseModel &model, double alpha, double beta, double delta_struct,
                                 ConstantsOverrides overrides) {
    (void)beta;
    (void)delta_struct;
    ModelConstants c;
    for (uint32_t u = 0; u < model.num_qubits(); u++) {
        double sum = 0;
        for (uint32_t k : model.incident_potentials()[u]) {
            sum += model.potentials()[k].max_abs();
        }
        c.gamma = std::max(c.gamma, sum);
    }
    c.eta = 0.25 * std::exp(-2 * c.gamma);

    Hypergraph h = model.hypergraph();
    double r = std::max<uint32_t>(1, h.max_edge_size());
    uint32_t degree = derived_graph(h).max_degree();
    double base = 4 * c.eta;
    constexpr double kAlphabetLogSize = 2;
    double numerator = 2 * alpha * alpha * std::pow(base, r + kAlphabetLogSize - 1);
    double denominator = std::pow(r, 2 * r) * std::pow(4.0, r + 1) *
                         std::max(1.0, binomial(degree, static_cast<uint32_t>(r) - 1)) * c.gamma *
                         std::exp(2 * c.gamma);
    c.tau_formula = denominator > 0 ? numerator / denominator : std::numeric_limits<double>::infinity();
    c.tau = std::min(c.tau_formula, 1.0);
    if (!(c.tau > 0)) {
        // alpha = 0 collapses the formula; fall back to the smallest positive score.
        c.tau = std::numeric_limits<double>::min();
    }
    if (overrides.tau) {
        if (!(*overrides.tau > 0)) {
            throw ConfigError("tau override must be positive.");
        }
        c.tau = *overrides.tau;
        c.tau_overridden = true;
    }
    double L = std::ceil(8.0 / (c.tau * c.tau) * std::log(4.0));
    c.L = L >= 1.8e19 ? std::numeric_limits<uint64_t>::max() : std::max<uint64_t>(1, static_cast<uint64_t>(L));
    if (overrides.L) {
        if (*overrides.L < 1) {
            throw ConfigError("L override must be at least 1.");
        }
        c.L = *overrides.L;
        c.L_overridden = true;
    }
    return c;
}

double structure_budget_log10(const ModelConstants &constants, uint32_t n, uint32_t r, double p0, double c_spam,
                              double delta) {
    double L = static_cast<double>(constants.L);
    double log10_4 = std::log10(4.0);
    double value = std::log10(std::log(1.0 / (1.0 - p0)));
    value += (3 * r + 5 * L) * log10_4;
    value -= 2 * (std::log10(c_spam) + std::log10(constants.tau) + L * std::log10(constants.eta));
    value += std::log10((r + L) * std::log(static_cast<double>(n)) + std::log(1.0 / delta));
    return value;
}

ValidationReport validate_conditions(const GibbsNoiseModel &model, double alpha, double beta) {
    constexpr double kTol = 1e-12;
    ValidationReport report;
    Hypergraph h = model.hypergraph();
    DerivedGraph g = derived_graph(h);
    const auto &pots = model.potentials();
    for (auto [a, b] : g.edges()) {
        bool covered = false;
        for (const auto &pot : pots) {
            if (pot.hyperedge.contains(a) && pot.hyperedge.contains(b) && pot.max_abs() > kTol) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            report.violations.push_back("(a) edge (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") is not covered by a hyperedge with a nonzero tensor");
        }
    }
    for (size_t k = 0; k < pots.size(); k++) {
        if (h.is_maximal(k) && pots[k].max_abs() < alpha - kTol) {
            report.violations.push_back("(b) maximal hyperedge " + pots[k].hyperedge.str() + " has max |theta| " +
                                        std::to_string(pots[k].max_abs()) + " < alpha");
        }
        if (pots[k].max_abs() > beta + kTol) {
            report.violations.push_back("(c) hyperedge " + pots[k].hyperedge.str() + " has max |theta| " +
                                        std::to_string(pots[k].max_abs()) + " > beta");
        }
    }
    return report;
}

}  // namespace pauli_mrf
