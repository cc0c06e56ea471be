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

#include "pauli_mrf/structure.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

namespace {

// Marginal over (u, I..., S...) in that order, with its index split into the
// three parts.
struct OrderedMarginal {
    uint32_t i_size = 0;
    uint32_t s_size = 0;
    std::vector<double> probs;

    uint64_t r_of(uint64_t idx) const { return split(idx, 0, 1); }
    uint64_t g_of(uint64_t idx) const { return split(idx, 1, i_size); }
    uint64_t s_of(uint64_t idx) const { return split(idx, 1 + i_size, s_size); }

   private:
    uint64_t split(uint64_t idx, uint32_t offset, uint32_t len) const {
        uint32_t m = 1 + i_size + s_size;
        uint64_t low = (uint64_t{1} << len) - 1;
        uint64_t x = (idx >> offset) & low;
        uint64_t z = (idx >> (m + offset)) & low;
        return x | (z << len);
    }
};

OrderedMarginal ordered(const MarginalTable &table, uint32_t u, const Region &i, const Region &s) {
    std::vector<uint32_t> order{u};
    order.insert(order.end(), i.begin(), i.end());
    order.insert(order.end(), s.begin(), s.end());
    Region onto(order);
    for (uint32_t q : onto) {
        if (!table.region.contains(q)) {
            throw DimensionError("Marginal over " + table.region.str() + " does not cover qubit " +
                                 std::to_string(q) + ".");
        }
    }
    OrderedMarginal out;
    out.i_size = static_cast<uint32_t>(i.size());
    out.s_size = static_cast<uint32_t>(s.size());
    out.probs = marginalize(table.probs, table.region, onto);
    return out;
}

void check_disjoint(uint32_t u, const Region &i, const Region &s) {
    if (i.contains(u) || s.contains(u)) {
        throw DimensionError("u must lie outside I and S.");
    }
    for (uint32_t q : i) {
        if (s.contains(q)) {
            throw DimensionError("I and S overlap.");
        }
    }
}

// Calls f(subset) for every subset of `pool` with size in [lo, hi], in
// lexicographic order of the sorted subsets.
template <typename F>
void for_each_subset(const std::vector<uint32_t> &pool, size_t lo, size_t hi, F &&f) {
    std::vector<uint32_t> pick;
    auto rec = [&](auto &&self, size_t next) -> void {
        if (pick.size() >= lo) {
            f(pick);
        }
        if (pick.size() == hi) {
            return;
        }
        for (size_t j = next; j < pool.size(); j++) {
            pick.push_back(pool[j]);
            self(self, j + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

std::vector<uint32_t> complement(uint32_t n, const std::vector<uint32_t> &used) {
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < n; q++) {
        if (std::find(used.begin(), used.end(), q) == used.end()) {
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

ConditionalProbs conditional_probs(const MarginalTable &table, uint32_t u, const Region &i, const Region &s_region,
                                   const PauliString &s) {
    check_disjoint(u, i, s_region);
    if (s.num_qubits != s_region.size()) {
        throw DimensionError("Conditioning assignment does not match S.");
    }
    OrderedMarginal om = ordered(table, u, i, s_region);
    uint64_t target = s.index();
    size_t gs = table_size(i.size());
    ConditionalProbs out;
    out.i_size = static_cast<uint32_t>(i.size());
    out.joint.assign(4 * gs, 0);
    out.product.assign(4 * gs, 0);
    std::vector<double> pu(4, 0);
    std::vector<double> pi(gs, 0);
    for (uint64_t idx = 0; idx < om.probs.size(); idx++) {
        if (om.s_of(idx) != target) {
            continue;
        }
        double v = om.probs[idx];
        out.weight += v;
        out.joint[om.r_of(idx) * gs + om.g_of(idx)] += v;
        pu[om.r_of(idx)] += v;
        pi[om.g_of(idx)] += v;
    }
    if (!(out.weight > 0)) {
        throw EstimationError("Conditioning assignment " + s.str() + " has zero probability.");
    }
    for (uint64_t r = 0; r < 4; r++) {
        for (uint64_t g = 0; g < gs; g++) {
            out.joint[r * gs + g] /= out.weight;
            out.product[r * gs + g] = pu[r] * pi[g] / (out.weight * out.weight);
        }
    }
    return out;
}

double nu_from_table(const MarginalTable &table, uint32_t u, const Region &i, const Region &s) {
    check_disjoint(u, i, s);
    OrderedMarginal om = ordered(table, u, i, s);
    size_t gs = table_size(i.size());
    size_t ss = table_size(s.size());
    std::vector<double> weight(ss, 0);
    std::vector<double> joint(ss * 4 * gs, 0);
    std::vector<double> pu(ss * 4, 0);
    std::vector<double> pi(ss * gs, 0);
    for (uint64_t idx = 0; idx < om.probs.size(); idx++) {
        double v = om.probs[idx];
        uint64_t r = om.r_of(idx);
        uint64_t g = om.g_of(idx);
        uint64_t sv = om.s_of(idx);
        weight[sv] += v;
        joint[(sv * 4 + r) * gs + g] += v;
        pu[sv * 4 + r] += v;
        pi[sv * gs + g] += v;
    }
    double nu = 0;
    for (uint64_t sv = 0; sv < ss; sv++) {
        double w = weight[sv];
        if (!(w > 0)) {
            continue;
        }
        double sum = 0;
        for (uint64_t r = 0; r < 4; r++) {
            for (uint64_t g = 0; g < gs; g++) {
                double j = joint[(sv * 4 + r) * gs + g] / w;
                double p = pu[sv * 4 + r] * pi[sv * gs + g] / (w * w);
                sum += std::abs(j - p);
            }
        }
        nu += w * sum / static_cast<double>(4 * gs);
    }
    return nu;
}

double nu_hat(uint32_t u, const Region &i, const Region &s, const MarginalProvider &provider) {
    check_disjoint(u, i, s);
    std::vector<uint32_t> all{u};
    all.insert(all.end(), i.begin(), i.end());
    all.insert(all.end(), s.begin(), s.end());
    return nu_from_table(*provider.marginal(Region(all)), u, i, s);
}

NuFunction nu_function(const MarginalProvider &provider) {
    return [provider](uint32_t u, const Region &i, const Region &s) { return nu_hat(u, i, s, provider); };
}

Region neighborhood_learning(uint32_t u, uint32_t n, const NuFunction &nu, const NeighborhoodOptions &options) {
    if (options.L < 1) {
        throw ConfigError("L must be at least 1.");
    }
    if (!(options.tau > 0)) {
        throw ConfigError("tau must be positive.");
    }
    if (options.r < 2) {
        return Region{};
    }
    std::vector<uint32_t> s;
    while (s.size() <= options.L) {
        std::vector<uint32_t> used = s;
        used.push_back(u);
        Region s_region = Region(s).sorted();
        double best = options.tau;
        std::vector<uint32_t> best_i;
        for_each_subset(complement(n, used), 1, options.r - 1, [&](const std::vector<uint32_t> &cand) {
            double v = nu(u, Region(cand), s_region);
            // Strict improvement keeps the lexicographically first maximizer.
            if (v > best) {
                best = v;
                best_i = cand;
            }
        });
        if (best_i.empty()) {
            break;
        }
        s.insert(s.end(), best_i.begin(), best_i.end());
    }

    std::sort(s.begin(), s.end());
    std::vector<uint32_t> kept;
    for (uint32_t i : s) {
        std::vector<uint32_t> rest;
        for (uint32_t j : s) {
            if (j != i) {
                rest.push_back(j);
            }
        }
        if (!(nu(u, Region{i}, Region(rest)) < options.tau)) {
            kept.push_back(i);
        }
    }
    return Region(kept);
}

LearnedStructure learn_graph(uint32_t n, const NuFunction &nu, const StructureOptions &options) {
    LearnedStructure out;
    out.num_qubits = n;
    out.tau = options.neighborhood.tau;
    out.L = options.neighborhood.L;
    out.r = options.neighborhood.r;
    out.neighborhoods.resize(n);

    uint32_t threads = std::max<uint32_t>(1, std::min(options.threads, n));
    std::atomic<uint32_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](uint32_t t) {
        try {
            for (uint32_t u = next++; u < n; u = next++) {
                out.neighborhoods[u] = neighborhood_learning(u, n, nu, options.neighborhood);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (uint32_t t = 0; t < threads; t++) {
            pool.emplace_back(worker, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    out.graph = DerivedGraph(n);
    for (uint32_t u = 0; u < n; u++) {
        for (uint32_t v : out.neighborhoods[u]) {
            bool mutual = out.neighborhoods[v].contains(u);
            if (!mutual) {
                out.warnings.push_back("asymmetric neighborhoods: " + std::to_string(v) + " in N(" +
                                       std::to_string(u) + ") but " + std::to_string(u) + " not in N(" +
                                       std::to_string(v) + ")");
            }
            if (mutual || options.symmetrization == Symmetrization::kOr) {
                out.graph.add_edge(u, v);
            }
        }
    }
    out.hyperedge_candidates = out.graph.cliques(options.neighborhood.r);
    return out;
}

LearnedStructure learn_graph(const MarginalProvider &provider, const StructureOptions &options) {
    LearnedStructure out = learn_graph(provider.num_qubits(), nu_function(provider), options);
    out.provider = provider_mode_name(provider.mode());
    return out;
}

EventAReport event_A_check(uint32_t n, const NuFunction &estimated, const NuFunction &exact, uint32_t r, uint32_t ell,
                           double epsilon, uint64_t sample_triples, uint64_t seed) {
    EventAReport report;
    auto check = [&](uint32_t u, const Region &i, const Region &s) {
        double a = exact(u, i, s);
        double b = estimated(u, i, s);
        double d = std::abs(a - b);
        report.triples_checked++;
        report.max_deviation = std::max(report.max_deviation, d);
        if (d > epsilon) {
            report.violations.push_back({u, i, s, a, b});
        }
    };
    if (r < 2) {
        return report;
    }
    if (sample_triples == 0) {
        for (uint32_t u = 0; u < n; u++) {
            for_each_subset(complement(n, {u}), 1, r - 1, [&](const std::vector<uint32_t> &i) {
                std::vector<uint32_t> used = i;
                used.push_back(u);
                for_each_subset(complement(n, used), 0, ell,
                                [&](const std::vector<uint32_t> &s) { check(u, Region(i), Region(s)); });
            });
        }
        return report;
    }
    Rng rng = derive_stream(seed, StreamTag::kTest);
    for (uint64_t t = 0; t < sample_triples; t++) {
        std::vector<uint32_t> perm(n);
        for (uint32_t q = 0; q < n; q++) {
            perm[q] = q;
        }
        for (uint32_t q = n; q > 1; q--) {
            std::swap(perm[q - 1], perm[uniform_below(rng, q)]);
        }
        uint32_t isize = 1 + uniform_below(rng, std::min(r - 1, n - 1));
        uint32_t ssize = uniform_below(rng, std::min(ell, n - 1 - isize) + 1);
        std::vector<uint32_t> i(perm.begin() + 1, perm.begin() + 1 + isize);
        std::vector<uint32_t> s(perm.begin() + 1 + isize, perm.begin() + 1 + isize + ssize);
        std::sort(i.begin(), i.end());
        std::sort(s.begin(), s.end());
        check(perm[0], Region(i), Region(s));
    }
    return report;
}

Json structure_to_json(const LearnedStructure &s) {
    Json out;
    out["format"] = "pauli-mrf-structure";
    out["version"] = 1;
    out["n"] = s.num_qubits;
    out["r"] = s.r;
    out["tau"] = s.tau;
    out["L"] = s.L;
    out["provider"] = s.provider;
    Json hoods = Json::array();
    for (const auto &h : s.neighborhoods) {
        hoods.push_back(h.qubits());
    }
    out["neighborhoods"] = std::move(hoods);
    Json edges = Json::array();
    for (auto [a, b] : s.graph.edges()) {
        edges.push_back({a, b});
    }
    out["edges"] = std::move(edges);
    Json cands = Json::array();
    for (const auto &c : s.hyperedge_candidates) {
        cands.push_back(c.qubits());
    }
    out["hyperedge_candidates"] = std::move(cands);
    out["warnings"] = s.warnings;
    return out;
}

LearnedStructure structure_from_json(const Json &json) {
    try {
        LearnedStructure s;
        s.num_qubits = json.at("n").get<uint32_t>();
        s.r = json.at("r").get<uint32_t>();
        s.tau = json.at("tau").get<double>();
        s.L = json.at("L").get<uint64_t>();
        s.provider = json.value("provider", "");
        for (const auto &h : json.at("neighborhoods")) {
            s.neighborhoods.emplace_back(h.get<std::vector<uint32_t>>());
        }
        s.graph = DerivedGraph(s.num_qubits);
        for (const auto &e : json.at("edges")) {
            s.graph.add_edge(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
        }
        for (const auto &c : json.at("hyperedge_candidates")) {
            s.hyperedge_candidates.emplace_back(c.get<std::vector<uint32_t>>());
        }
        s.warnings = json.value("warnings", std::vector<std::string>{});
        return s;
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("Malformed structure file: ") + ex.what());
    }
}

}  // namespace pauli_mrf
