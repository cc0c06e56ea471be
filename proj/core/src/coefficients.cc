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

#include "pauli_mrf/coefficients.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

namespace {

bool overlaps(const Region &a, const Region &b) {
    return (a.mask() & b.mask()) != 0;
}

PotentialTable sorted_table(const PotentialTable &t) {
    Region s = t.hyperedge.sorted();
    if (s == t.hyperedge) {
        return t;
    }
    return PotentialTable(s, marginalize(t.values, t.hyperedge, s));
}

}  // namespace

RegionAssignment enclosure(const Region &h, const std::vector<Region> &hyperedges) {
    uint64_t mask = h.mask();
    for (const Region &g : hyperedges) {
        if (overlaps(g, h)) {
            mask |= g.mask();
        }
    }
    Region r = Region::from_mask(mask);
    if (r.size() > kEnumerationCap) {
        throw UnsupportedSizeError("Enclosure of " + h.str() + " has " + std::to_string(r.size()) +
                                   " qubits, above the enumeration cap.");
    }
    return {h, r};
}

PotentialTable estimate_theta(const Region &h, const MarginalTable &table, GaugeConvention gauge) {
    const Region &region = table.region;
    for (uint32_t q : h) {
        if (!region.contains(q)) {
            throw DimensionError("Marginal over " + region.str() + " does not contain hyperedge " + h.str() + ".");
        }
    }
    uint32_t m = static_cast<uint32_t>(region.size());
    std::vector<double> logs(table.probs.size());
    for (size_t i = 0; i < logs.size(); i++) {
        if (!(table.probs[i] > 0)) {
            throw EstimationError("Marginal over " + region.str() + " has a non-positive entry.");
        }
        logs[i] = std::log(table.probs[i]);
    }
    // Character coefficients of log mu_R.
    inverse_symplectic_transform(logs, m);

    uint32_t w = static_cast<uint32_t>(h.size());
    uint64_t full = (uint64_t{1} << w) - 1;
    std::vector<double> coeffs(table_size(w), 0);
    for (uint64_t p = 0; p < coeffs.size(); p++) {
        uint64_t support = (p | (p >> w)) & full;
        // The identity character only carries the normalization.
        if (support == 0 || (gauge == GaugeConvention::kCanonical && support != full)) {
            continue;
        }
        coeffs[p] = logs[lift_index(p, h, region)];
    }
    symplectic_transform(coeffs, w);
    return PotentialTable(h, std::move(coeffs));
}

LearnedModel learn_all_coefficients(const std::vector<Region> &candidates, const MarginalProvider &provider,
                                    const CoefficientOptions &options) {
    LearnedModel out;
    out.num_qubits = provider.num_qubits();
    for (const Region &h : candidates) {
        try {
            RegionAssignment ra = enclosure(h, candidates);
            PotentialTable pot = estimate_theta(h, *provider.marginal(ra.enclosure), options.gauge);
            if (pot.max_abs() < options.spurious_threshold) {
                out.spurious.push_back(h);
            }
            out.regions.push_back(std::move(ra));
            out.potentials.push_back(std::move(pot));
        } catch (const UnsupportedSizeError &ex) {
            out.errors.push_back(h.str() + ": " + ex.what());
        }
    }
    out.reconstructed = GibbsNoiseModel(out.num_qubits, out.potentials);
    return out;
}

double max_coefficient_error(const GibbsNoiseModel &truth, const GibbsNoiseModel &learned) {
    std::map<Region, std::pair<std::vector<double>, std::vector<double>>> pairs;
    for (const auto &p : truth.potentials()) {
        PotentialTable s = sorted_table(p);
        pairs[s.hyperedge].first = s.values;
    }
    for (const auto &p : learned.potentials()) {
        PotentialTable s = sorted_table(p);
        pairs[s.hyperedge].second = s.values;
    }
    double worst = 0;
    for (auto &[h, ab] : pairs) {
        auto &[a, b] = ab;
        a.resize(table_size(h.size()), 0);
        b.resize(table_size(h.size()), 0);
        for (size_t i = 0; i < a.size(); i++) {
            worst = std::max(worst, std::abs(a[i] - b[i]));
        }
    }
    return worst;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DimensionError("Distributions have different sizes.");
    }
    double sum = 0;
    for (size_t i = 0; i < p.size(); i++) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

ChannelDistance diamond_distance(const GibbsNoiseModel &truth, const GibbsNoiseModel &learned,
                                 const std::vector<Region> &proxy_regions, uint64_t proxy_samples, uint64_t seed) {
    if (truth.num_qubits() != learned.num_qubits()) {
        throw DimensionError("Models disagree on qubit count.");
    }
    uint32_t n = truth.num_qubits();
    if (n <= kEnumerationCap) {
        return {2 * tv_distance(*truth.dense_table(), *learned.dense_table()), false};
    }
    ErrorSampler a = ErrorSampler::mcmc(truth, {});
    ErrorSampler b = ErrorSampler::mcmc(learned, {});
    double worst = 0;
    for (size_t k = 0; k < proxy_regions.size(); k++) {
        const Region &r = proxy_regions[k];
        std::vector<double> ha(table_size(r.size()), 0);
        std::vector<double> hb(ha.size(), 0);
        Rng ra = derive_stream(seed, {static_cast<uint64_t>(StreamTag::kMcmc), k, 0});
        Rng rb = derive_stream(seed, {static_cast<uint64_t>(StreamTag::kMcmc), k, 1});
        for (uint64_t s = 0; s < proxy_samples; s++) {
            ha[restricted_index(a.sample(ra), r)] += 1.0 / static_cast<double>(proxy_samples);
            hb[restricted_index(b.sample(rb), r)] += 1.0 / static_cast<double>(proxy_samples);
        }
        worst = std::max(worst, tv_distance(ha, hb));
    }
    return {2 * worst, true};
}

Json learned_model_to_json(const LearnedModel &model, const Json &provenance) {
    Json out = model_to_json(model.reconstructed);
    Json spurious = Json::array();
    for (const auto &h : model.spurious) {
        spurious.push_back(h.qubits());
    }
    Json enclosures = Json::array();
    for (const auto &ra : model.regions) {
        enclosures.push_back({{"hyperedge", ra.hyperedge.qubits()}, {"enclosure", ra.enclosure.qubits()}});
    }
    Json prov = provenance;
    prov["spurious_candidates"] = std::move(spurious);
    prov["enclosures"] = std::move(enclosures);
    prov["errors"] = model.errors;
    out["provenance"] = std::move(prov);
    return out;
}

}  // namespace pauli_mrf
