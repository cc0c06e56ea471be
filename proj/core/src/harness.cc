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

#include "pauli_mrf/harness.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pauli_mrf/channel.h"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

namespace fs = std::filesystem;

namespace {

void check_keys(const Json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        throw ConfigError("'" + where + "' must be an object.");
    }
    for (const auto &[key, value] : obj.items()) {
        bool known = false;
        for (const char *a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError("Unknown key '" + key + "' in '" + where + "'.");
        }
    }
}

template <typename T>
void read_into(const Json &obj, const char *key, T &out) {
    if (obj.contains(key) && !obj[key].is_null()) {
        out = obj[key].get<T>();
    }
}

template <typename T>
void read_into(const Json &obj, const char *key, std::optional<T> &out) {
    if (obj.contains(key) && !obj[key].is_null()) {
        out = obj[key].get<T>();
    }
}

template <typename T>
Json optional_json(const std::optional<T> &v) {
    return v ? Json(*v) : Json(nullptr);
}

std::vector<SiteChannel> channels_from_json(const Json &j) {
    std::vector<SiteChannel> out;
    for (const auto &site : j) {
        auto v = site.get<std::vector<double>>();
        if (v.size() != 4) {
            throw ConfigError("SPAM factors need four probabilities (I, X, Z, Y).");
        }
        out.push_back({v[0], v[1], v[2], v[3]});
    }
    return out;
}

Json channels_to_json(const std::vector<SiteChannel> &c) {
    Json out = Json::array();
    for (const auto &s : c) {
        out.push_back({s[0], s[1], s[2], s[3]});
    }
    return out;
}

bool file_exists(const std::string &path) {
    return fs::exists(fs::path(path));
}

// Distinct Paulis supported inside any of `regions`.
uint64_t paulis_covered(const std::set<Region> &regions) {
    std::set<uint64_t> supports;
    for (const Region &r : regions) {
        uint64_t mask = r.mask();
        uint64_t s = 0;
        do {
            supports.insert(s);
            s = (s - mask) & mask;
        } while (s != 0);
    }
    uint64_t total = 0;
    for (uint64_t s : supports) {
        total += static_cast<uint64_t>(std::llround(std::pow(3.0, std::popcount(s))));
    }
    return total;
}

// Wraps a provider and records which regions a stage asks for.
struct RecordingProvider {
    std::shared_ptr<std::set<Region>> regions = std::make_shared<std::set<Region>>();
    std::shared_ptr<std::mutex> mutex = std::make_shared<std::mutex>();
    MarginalProvider provider;

    explicit RecordingProvider(const MarginalProvider &inner) {
        auto log = regions;
        auto m = mutex;
        provider = MarginalProvider::custom(inner.num_qubits(), [inner, log, m](const Region &sorted) {
            {
                std::lock_guard<std::mutex> lock(*m);
                log->insert(sorted);
            }
            return *inner.marginal(sorted);
        });
    }

    Json summary() const {
        Json out;
        out["regions_queried"] = regions->size();
        out["paulis_visited"] = paulis_covered(*regions);
        size_t largest = 0;
        for (const auto &r : *regions) {
            largest = std::max(largest, r.size());
        }
        out["largest_region"] = largest;
        return out;
    }
};

// Largest hyperedge size: the model's, or the generator's r when larger.
uint32_t hypergraph_r(const GibbsNoiseModel &model, const ExperimentConfig &cfg) {
    uint32_t r = model.hypergraph().max_edge_size();
    return cfg.model.file ? r : std::max(r, cfg.model.params.r);
}

LearnedModel learned_from_json(const Json &json) {
    LearnedModel out;
    out.reconstructed = model_from_json(json);
    out.num_qubits = out.reconstructed.num_qubits();
    out.potentials = out.reconstructed.potentials();
    if (json.contains("provenance")) {
        const Json &p = json["provenance"];
        for (const auto &h : p.value("spurious_candidates", Json::array())) {
            out.spurious.emplace_back(h.get<std::vector<uint32_t>>());
        }
        for (const auto &e : p.value("enclosures", Json::array())) {
            out.regions.push_back({Region(e.at("hyperedge").get<std::vector<uint32_t>>()),
                                   Region(e.at("enclosure").get<std::vector<uint32_t>>())});
        }
        out.errors = p.value("errors", std::vector<std::string>{});
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

}  // namespace

ExperimentConfig config_from_json(const Json &json) {
    ExperimentConfig c;
    try {
        check_keys(json, "config", {"master_seed", "output_dir", "threads", "provider", "model", "spam", "schedule",
                                    "constants", "structure", "coefficients"});
        if (!json.contains("master_seed")) {
            throw ConfigError("Config must set 'master_seed'; runs never draw implicit entropy.");
        }
        read_into(json, "master_seed", c.master_seed);
        read_into(json, "output_dir", c.output_dir);
        read_into(json, "threads", c.threads);
        if (json.contains("provider")) {
            std::string p = json["provider"].get<std::string>();
            if (p == "exact") {
                c.provider = ProviderMode::kExact;
            } else if (p == "protocol") {
                c.provider = ProviderMode::kProtocol;
            } else {
                throw ConfigError("provider must be 'exact' or 'protocol', not '" + p + "'.");
            }
        }
        if (json.contains("model")) {
            const Json &m = json["model"];
            check_keys(m, "model", {"file", "topology", "n", "r", "max_degree", "alpha", "beta", "seed", "hyperedges"});
            read_into(m, "file", c.model.file);
            if (m.contains("topology")) {
                c.model.params.topology = topology_from_name(m["topology"].get<std::string>());
            }
            read_into(m, "n", c.model.params.num_qubits);
            read_into(m, "r", c.model.params.r);
            read_into(m, "max_degree", c.model.params.max_degree);
            read_into(m, "alpha", c.model.params.alpha);
            read_into(m, "beta", c.model.params.beta);
            read_into(m, "seed", c.model.seed);
            if (m.contains("hyperedges")) {
                for (const auto &h : m["hyperedges"]) {
                    c.model.params.hyperedges.emplace_back(h.get<std::vector<uint32_t>>());
                }
            }
        }
        if (json.contains("spam")) {
            const Json &s = json["spam"];
            check_keys(s, "spam", {"q_prep", "q_meas", "prep", "meas"});
            read_into(s, "q_prep", c.spam.q_prep);
            read_into(s, "q_meas", c.spam.q_meas);
            if (s.contains("prep") && !s["prep"].is_null()) {
                c.spam.prep = channels_from_json(s["prep"]);
            }
            if (s.contains("meas") && !s["meas"].is_null()) {
                c.spam.meas = channels_from_json(s["meas"]);
            }
        }
        if (json.contains("schedule")) {
            const Json &s = json["schedule"];
            check_keys(s, "schedule", {"k", "shots_per_k", "k_cap", "max_total_shots"});
            read_into(s, "k", c.schedule.ks);
            read_into(s, "shots_per_k", c.schedule.shots_per_k);
            read_into(s, "k_cap", c.schedule.k_cap);
            read_into(s, "max_total_shots", c.schedule.max_total_shots);
        }
        if (json.contains("constants")) {
            const Json &k = json["constants"];
            check_keys(k, "constants", {"tau", "L", "rho_min_scale", "w_cap", "groups", "delta", "delta_struct",
                                        "desk_scale", "floor_sigmas"});
            read_into(k, "tau", c.constants.tau);
            read_into(k, "L", c.constants.L);
            read_into(k, "rho_min_scale", c.constants.rho_min_scale);
            read_into(k, "w_cap", c.constants.w_cap);
            read_into(k, "groups", c.constants.groups);
            read_into(k, "delta", c.constants.delta);
            read_into(k, "delta_struct", c.constants.delta_struct);
            read_into(k, "desk_scale", c.constants.desk_scale);
            read_into(k, "floor_sigmas", c.constants.floor_sigmas);
        }
        if (json.contains("structure")) {
            const Json &s = json["structure"];
            check_keys(s, "structure", {"symmetrization", "known"});
            if (s.contains("symmetrization")) {
                std::string v = s["symmetrization"].get<std::string>();
                if (v == "and") {
                    c.symmetrization = Symmetrization::kAnd;
                } else if (v == "or") {
                    c.symmetrization = Symmetrization::kOr;
                } else {
                    throw ConfigError("symmetrization must be 'and' or 'or'.");
                }
            }
            read_into(s, "known", c.known_structure);
        }
        if (json.contains("coefficients")) {
            const Json &s = json["coefficients"];
            check_keys(s, "coefficients", {"gauge", "spurious_threshold"});
            if (s.contains("gauge")) {
                std::string v = s["gauge"].get<std::string>();
                if (v == "canonical") {
                    c.gauge = GaugeConvention::kCanonical;
                } else if (v == "unrestricted") {
                    c.gauge = GaugeConvention::kUnrestricted;
                } else {
                    throw ConfigError("gauge must be 'canonical' or 'unrestricted'.");
                }
            }
            read_into(s, "spurious_threshold", c.spurious_threshold);
        }
    } catch (const nlohmann::json::exception &ex) {
        throw ConfigError(std::string("Malformed config: ") + ex.what());
    }

    if (c.schedule.shots_per_k && *c.schedule.shots_per_k == 0) {
        throw ConfigError("schedule.shots_per_k must be at least 1.");
    }
    for (uint32_t k : c.schedule.ks) {
        if (k == 0) {
            throw ConfigError("Repetition counts must be at least 1.");
        }
    }
    if (c.constants.tau && !(*c.constants.tau > 0)) {
        throw ConfigError("constants.tau must be positive.");
    }
    if (c.constants.L && *c.constants.L == 0) {
        throw ConfigError("constants.L must be at least 1.");
    }
    if (!(c.constants.rho_min_scale >= 0 && c.constants.rho_min_scale < 1)) {
        throw ConfigError("constants.rho_min_scale must lie in [0, 1).");
    }
    if (!(c.constants.desk_scale > 0)) {
        throw ConfigError("constants.desk_scale must be positive.");
    }
    if (c.model.params.alpha > c.model.params.beta) {
        throw ConfigError("model.alpha must not exceed model.beta.");
    }
    if (c.output_dir.empty()) {
        throw ConfigError("output_dir must not be empty.");
    }
    return c;
}

Json config_to_json(const ExperimentConfig &c) {
    Json j;
    j["master_seed"] = c.master_seed;
    j["output_dir"] = c.output_dir;
    j["threads"] = c.threads;
    j["provider"] = provider_mode_name(c.provider);
    Json hyperedges = Json::array();
    for (const auto &h : c.model.params.hyperedges) {
        hyperedges.push_back(h.qubits());
    }
    j["model"] = {{"file", optional_json(c.model.file)},
                  {"topology", topology_name(c.model.params.topology)},
                  {"n", c.model.params.num_qubits},
                  {"r", c.model.params.r},
                  {"max_degree", c.model.params.max_degree},
                  {"alpha", c.model.params.alpha},
                  {"beta", c.model.params.beta},
                  {"seed", optional_json(c.model.seed)},
                  {"hyperedges", hyperedges}};
    j["spam"] = {{"q_prep", c.spam.q_prep},
                 {"q_meas", c.spam.q_meas},
                 {"prep", c.spam.prep ? channels_to_json(*c.spam.prep) : Json(nullptr)},
                 {"meas", c.spam.meas ? channels_to_json(*c.spam.meas) : Json(nullptr)}};
    j["schedule"] = {{"k", c.schedule.ks},
                     {"shots_per_k", optional_json(c.schedule.shots_per_k)},
                     {"k_cap", c.schedule.k_cap},
                     {"max_total_shots", c.schedule.max_total_shots}};
    j["constants"] = {{"tau", optional_json(c.constants.tau)},
                      {"L", optional_json(c.constants.L)},
                      {"rho_min_scale", c.constants.rho_min_scale},
                      {"w_cap", c.constants.w_cap},
                      {"groups", c.constants.groups},
                      {"delta", c.constants.delta},
                      {"delta_struct", c.constants.delta_struct},
                      {"desk_scale", c.constants.desk_scale},
                      {"floor_sigmas", c.constants.floor_sigmas}};
    j["structure"] = {{"symmetrization", c.symmetrization == Symmetrization::kAnd ? "and" : "or"},
                      {"known", c.known_structure}};
    j["coefficients"] = {{"gauge", c.gauge == GaugeConvention::kCanonical ? "canonical" : "unrestricted"},
                         {"spurious_threshold", optional_json(c.spurious_threshold)}};
    return j;
}

ExperimentConfig load_config(const std::string &path) {
    Json j;
    try {
        j = read_json_file(path);
    } catch (const ParseError &ex) {
        throw ConfigError(ex.what());
    }
    return config_from_json(j);
}

Json default_config_json() {
    return config_to_json(ExperimentConfig{});
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
}

std::string Experiment::path(const char *name) const {
    return (fs::path(config_.output_dir) / name).string();
}

template <typename F>
auto Experiment::timed(const std::string &stage, F &&f) {
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
        timings_[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_timings();
    };
    if constexpr (std::is_void_v<decltype(f())>) {
        f();
        finish();
    } else {
        auto out = f();
        finish();
        return out;
    }
}

void Experiment::write_timings() const {
    Json j(timings_);
    write_json_file(j, path(ArtifactNames::kTimings));
}

const GibbsNoiseModel &Experiment::model() {
    if (model_) {
        return *model_;
    }
    fs::create_directories(config_.output_dir);
    std::string file = path(ArtifactNames::kModel);
    if (file_exists(file)) {
        model_ = load_model(file);
        return *model_;
    }
    timed("gen-model", [&] {
        GibbsNoiseModel m;
        if (config_.model.file) {
            m = load_model(*config_.model.file);
        } else {
            GenerationParams p = config_.model.params;
            p.seed = config_.model.seed.value_or(config_.master_seed);
            m = generate_model(p);
        }
        const auto &meta = m.metadata();
        if (meta.alpha && meta.beta) {
            ValidationReport v = validate_conditions(m, *meta.alpha, *meta.beta);
            if (!v.ok()) {
                throw ConfigError("Model violates its promised conditions: " + v.violations.front());
            }
        }
        save_model(m, file);
        model_ = std::move(m);
    });
    return *model_;
}

ModelConstants Experiment::constants() {
    const GibbsNoiseModel &m = model();
    double alpha = m.metadata().alpha.value_or(config_.model.params.alpha);
    double beta = m.metadata().beta.value_or(config_.model.params.beta);
    return compute_constants(m, alpha, beta, config_.constants.delta_struct,
                             ConstantsOverrides{config_.constants.tau, config_.constants.L});
}

std::vector<ScheduleEntry> Experiment::schedule() {
    const GibbsNoiseModel &m = model();
    uint32_t n = m.num_qubits();
    double p0 = 0;
    std::vector<uint32_t> ks = config_.schedule.ks;
    if (n <= kEnumerationCap) {
        p0 = (*m.dense_table())[0];
    }
    if (ks.empty()) {
        double alpha_min = 0;
        if (n <= kEnumerationCap) {
            std::vector<double> eig = *m.dense_table();
            symplectic_transform(eig, n);
            alpha_min = 1;
            for (size_t q = 1; q < eig.size(); q++) {
                alpha_min = std::min(alpha_min, std::abs(eig[q]));
            }
        }
        ks = default_k_grid(p0, alpha_min, config_.schedule.k_cap);
    }
    uint64_t per_k = 0;
    if (config_.schedule.shots_per_k) {
        per_k = *config_.schedule.shots_per_k;
    } else {
        ModelConstants c = constants();
        double c_spam = 1;
        if (config_.spam.prep || config_.spam.meas || config_.spam.q_prep > 0 || config_.spam.q_meas > 0) {
            double q = std::max(config_.spam.q_prep, config_.spam.q_meas);
            c_spam = std::pow(1 - q, 2.0 * n);
        }
        double log10_total = structure_budget_log10(c, n, hypergraph_r(m, config_),
                                                    std::max(p0, 1e-300), c_spam, config_.constants.delta) -
                             std::log10(config_.constants.desk_scale);
        double cap = static_cast<double>(config_.schedule.max_total_shots);
        double total = log10_total >= std::log10(cap) ? cap : std::pow(10.0, log10_total);
        per_k = std::max<uint64_t>(1, static_cast<uint64_t>(total / static_cast<double>(ks.size())));
    }
    std::vector<ScheduleEntry> out;
    for (uint32_t k : ks) {
        out.push_back({k, per_k});
    }
    return out;
}

const ShotBank &Experiment::shots() {
    if (bank_) {
        return *bank_;
    }
    const GibbsNoiseModel &m = model();
    std::string file = path(ArtifactNames::kShots);
    if (file_exists(file)) {
        bank_ = load_shot_bank(file);
        return *bank_;
    }
    timed("simulate", [&] {
        uint32_t n = m.num_qubits();
        SpamModel spam = SpamModel::depolarizing(n, config_.spam.q_prep, config_.spam.q_meas);
        if (config_.spam.prep) {
            spam.prep = *config_.spam.prep;
        }
        if (config_.spam.meas) {
            spam.meas = *config_.spam.meas;
        }
        try {
            spam.validate();
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &ex) {
            throw ConfigError(ex.what());
        }
        if (spam.num_qubits() != n) {
            throw ConfigError("SPAM factors must cover every qubit.");
        }
        McmcOptions mcmc;
        PauliChannel channel = PauliChannel::from_model(m, mcmc);
        bank_ = batch_simulate(channel, spam, schedule(), config_.master_seed, config_.threads);
        save_shot_bank(*bank_, file);
    });
    return *bank_;
}

MarginalProvider &Experiment::provider() {
    if (provider_) {
        return *provider_;
    }
    if (config_.provider == ProviderMode::kExact) {
        provider_ = MarginalProvider::exact(model());
        return *provider_;
    }
    shots();
    bank_ptr_ = std::make_shared<const ShotBank>(*bank_);
    EstimatorOptions opts;
    opts.groups = config_.constants.groups;
    opts.delta = config_.constants.delta;
    opts.fit.floor_sigmas = config_.constants.floor_sigmas;
    opts.max_weight = config_.constants.w_cap;
    auto estimator = std::make_shared<AlphaEstimator>(bank_ptr_, opts);
    provider_ = MarginalProvider::protocol(estimator, config_.constants.rho_min_scale);
    return *provider_;
}

void Experiment::persist_alphas() {
    auto estimator = provider().estimator();
    if (!estimator) {
        return;
    }
    // Estimates are per-Pauli deterministic, so merging with an earlier
    // snapshot gives the same file as an uninterrupted run.
    AlphaTable table = estimator->snapshot();
    std::string file = path(ArtifactNames::kAlphas);
    if (file_exists(file)) {
        std::ifstream in(file);
        for (auto &[p, est] : read_alpha_table(in)) {
            table.try_emplace(p, std::move(est));
        }
    }
    std::ostringstream out;
    write_alpha_table(table, out);
    write_text_file(out.str(), file);
}

AlphaTable Experiment::estimate(uint32_t w) {
    if (config_.provider != ProviderMode::kProtocol) {
        throw ConfigError("The estimate stage needs provider 'protocol'.");
    }
    const GibbsNoiseModel &m = model();
    if (w == 0) {
        w = m.hypergraph().max_edge_size();
    }
    return timed("estimate", [&] {
        AlphaTable t = batch_estimate(paulis_up_to_weight(m.num_qubits(), w), *provider().estimator());
        persist_alphas();
        return t;
    });
}

const LearnedStructure &Experiment::structure() {
    if (structure_) {
        return *structure_;
    }
    const GibbsNoiseModel &m = model();
    std::string file = path(ArtifactNames::kStructure);
    if (file_exists(file)) {
        structure_ = structure_from_json(read_json_file(file));
        return *structure_;
    }
    ModelConstants c = constants();
    uint32_t r = hypergraph_r(m, config_);
    timed("learn-structure", [&] {
        LearnedStructure s;
        Json lazy;
        if (config_.known_structure) {
            s.num_qubits = m.num_qubits();
            s.graph = derived_graph(m.hypergraph());
            for (const auto &h : m.hypergraph().hyperedges) {
                s.hyperedge_candidates.push_back(h.sorted());
            }
            for (uint32_t u = 0; u < s.num_qubits; u++) {
                s.neighborhoods.push_back(s.graph.neighbors(u));
            }
            s.tau = c.tau;
            s.L = c.L;
            s.r = r;
            s.provider = "known";
        } else {
            RecordingProvider rec(provider());
            StructureOptions opts;
            opts.neighborhood = {r, c.L, c.tau};
            opts.symmetrization = config_.symmetrization;
            opts.threads = config_.threads;
            s = learn_graph(rec.provider, opts);
            s.provider = provider_mode_name(config_.provider);
            lazy = rec.summary();
        }
        Json j = structure_to_json(s);
        j["tau_formula"] = c.tau_formula;
        j["tau_overridden"] = c.tau_overridden;
        j["L_overridden"] = c.L_overridden;
        if (!lazy.is_null()) {
            j["lazy_estimation"] = lazy;
        }
        write_json_file(j, file);
        persist_alphas();
        structure_ = std::move(s);
    });
    return *structure_;
}

const LearnedModel &Experiment::coefficients() {
    if (learned_) {
        return *learned_;
    }
    const GibbsNoiseModel &m = model();
    std::string file = path(ArtifactNames::kLearned);
    if (file_exists(file)) {
        learned_ = learned_from_json(read_json_file(file));
        return *learned_;
    }
    const LearnedStructure &s = structure();
    timed("learn-coeffs", [&] {
        RecordingProvider rec(provider());
        CoefficientOptions opts;
        opts.gauge = config_.gauge;
        double alpha = m.metadata().alpha.value_or(config_.model.params.alpha);
        opts.spurious_threshold = config_.spurious_threshold.value_or(alpha / 2);
        LearnedModel lm = learn_all_coefficients(s.hyperedge_candidates, rec.provider, opts);
        Json prov;
        prov["provider"] = provider_mode_name(config_.provider);
        prov["structure_source"] = s.provider;
        prov["shots"] = config_.provider == ProviderMode::kProtocol ? shots().size() : 0;
        prov["tau"] = s.tau;
        prov["L"] = s.L;
        prov["gauge"] = config_.gauge == GaugeConvention::kCanonical ? "canonical" : "unrestricted";
        prov["spurious_threshold"] = opts.spurious_threshold;
        prov["lazy_estimation"] = rec.summary();
        write_json_file(learned_model_to_json(lm, prov), file);
        persist_alphas();
        learned_ = std::move(lm);
    });
    return *learned_;
}

Json Experiment::report() {
    Json r;
    r["format"] = "pauli-mrf-report";
    r["version"] = 1;
    // Where and how fast a run executes does not change its results.
    Json cfg = config_to_json(config_);
    cfg.erase("output_dir");
    cfg.erase("threads");
    r["config"] = cfg;
    std::ostringstream text;
    text << "pauli-mrf run report\n";
    text << "master_seed: " << config_.master_seed << "\n";
    // A damaged artifact spoils its own section, not the whole report.
    auto section = [&](const char *name, auto &&body) {
        try {
            body();
        } catch (const std::exception &ex) {
            r[name] = Json{{"error", ex.what()}};
            text << name << ": unreadable (" << ex.what() << ")\n";
        }
    };

    if (!file_exists(path(ArtifactNames::kModel))) {
        r["model"] = nullptr;
        text << "model: unavailable\n";
    } else {
        const GibbsNoiseModel &m = model();
        uint32_t n = m.num_qubits();
        Json jm;
        jm["n"] = n;
        jm["r"] = m.hypergraph().max_edge_size();
        jm["hyperedges"] = m.potentials().size();
        if (n <= kEnumerationCap) {
            jm["p0"] = (*m.dense_table())[0];
        }
        r["model"] = jm;
        text << "model: n=" << n << " hyperedges=" << m.potentials().size() << "\n";

        ModelConstants c = constants();
        r["constants"] = {{"gamma", c.gamma},         {"eta", c.eta},
                          {"tau", c.tau},             {"L", c.L},
                          {"tau_formula", c.tau_formula}, {"tau_overridden", c.tau_overridden},
                          {"L_overridden", c.L_overridden}};
        text << "constants: gamma=" << fmt(c.gamma) << " eta=" << fmt(c.eta) << " tau=" << fmt(c.tau)
             << (c.tau_overridden ? " (override)" : "") << " L=" << c.L << (c.L_overridden ? " (override)" : "")
             << " tau_formula=" << fmt(c.tau_formula) << "\n";

        section("shots", [&] {
            Json js;
            if (file_exists(path(ArtifactNames::kShots))) {
                ShotBank header = load_shot_bank(path(ArtifactNames::kShots), true);
                Json sched = Json::array();
                for (const auto &e : header.schedule()) {
                    sched.push_back({{"k", e.k}, {"count", e.count}});
                }
                js["schedule"] = sched;
                js["total"] = header.planned_size();
                text << "shots: " << header.planned_size() << "\n";
            } else {
                js["total"] = 0;
                text << "shots: none (" << provider_mode_name(config_.provider) << " provider)\n";
            }
            r["shots"] = js;
        });

        section("estimation", [&] {
            if (file_exists(path(ArtifactNames::kAlphas))) {
                std::ifstream in(path(ArtifactNames::kAlphas));
                AlphaTable alphas = read_alpha_table(in);
                Json je;
                size_t flagged = 0;
                for (const auto &[p, e] : alphas) {
                    flagged += e.flagged();
                }
                je["paulis"] = alphas.size();
                je["flagged"] = flagged;
                if (n <= kEnumerationCap) {
                    std::vector<double> eig = *m.dense_table();
                    symplectic_transform(eig, n);
                    std::map<uint32_t, double> by_weight;
                    double worst = 0;
                    std::ostringstream csv;
                    csv << "pauli,weight,alpha,alpha_hat,std_error,c_hat,flags\n";
                    for (const auto &[p, e] : alphas) {
                        double err = std::abs(e.alpha_hat - eig[p.index()]);
                        worst = std::max(worst, err);
                        by_weight[p.weight()] = std::max(by_weight[p.weight()], err);
                        std::string flags;
                        for (const auto &f : e.flags) {
                            flags += (flags.empty() ? "" : ";") + f;
                        }
                        csv << p.str() << ',' << p.weight() << ',' << format_double(eig[p.index()]) << ','
                            << format_double(e.alpha_hat) << ',' << format_double(e.std_error) << ','
                            << format_double(e.c_hat) << ',' << flags << '\n';
                    }
                    write_text_file(csv.str(), path(ArtifactNames::kAlphaCsv));
                    je["max_abs_error"] = worst;
                    Json bw = Json::object();
                    for (auto [w, e] : by_weight) {
                        bw[std::to_string(w)] = e;
                    }
                    je["max_abs_error_by_weight"] = bw;
                    text << "eigenvalues: " << alphas.size() << " estimated, " << flagged
                         << " flagged, max |alpha_hat - alpha| = " << fmt(worst) << "\n";
                } else {
                    text << "eigenvalues: " << alphas.size() << " estimated, " << flagged << " flagged\n";
                }
                r["estimation"] = je;
            }
        });

        section("structure", [&] {
            DerivedGraph truth = derived_graph(m.hypergraph());
            if (file_exists(path(ArtifactNames::kStructure))) {
                const LearnedStructure &s = structure();
                Json jst;
                jst["recovered"] = s.graph == truth;
                Json missing = Json::array();
                Json extra = Json::array();
                for (auto [a, b] : truth.edges()) {
                    if (!s.graph.has_edge(a, b)) {
                        missing.push_back({a, b});
                    }
                }
                for (auto [a, b] : s.graph.edges()) {
                    if (!truth.has_edge(a, b)) {
                        extra.push_back({a, b});
                    }
                }
                jst["missing_edges"] = missing;
                jst["extra_edges"] = extra;
                jst["warnings"] = s.warnings.size();
                jst["source"] = s.provider;
                jst["candidates"] = s.hyperedge_candidates.size();
                r["structure"] = jst;
                text << "structure: " << (s.graph == truth ? "recovered" : "NOT recovered") << " ("
                     << missing.size() << " missing, " << extra.size() << " extra edges, " << s.warnings.size()
                     << " warnings)\n";
            }
        });

        section("coefficients", [&] {
            if (file_exists(path(ArtifactNames::kLearned))) {
                const LearnedModel &lm = coefficients();
                Json jc;
                jc["max_theta_error"] = max_coefficient_error(m, lm.reconstructed);
                jc["spurious_candidates"] = lm.spurious.size();
                jc["errors"] = lm.errors;
                r["coefficients"] = jc;
                text << "coefficients: max |theta_hat - theta| = " << fmt(jc["max_theta_error"].get<double>()) << ", "
                     << lm.spurious.size() << " flagged spurious\n";

                std::vector<Region> proxy_regions;
                for (const auto &ra : lm.regions) {
                    proxy_regions.push_back(ra.enclosure);
                }
                ChannelDistance d = diamond_distance(m, lm.reconstructed, proxy_regions, 2000, config_.master_seed);
                Json jd;
                jd["diamond"] = d.value;
                jd["tv"] = d.value / 2;
                jd["proxy"] = d.proxy;
                r["distances"] = jd;
                text << "distances: diamond = " << fmt(d.value) << ", TV = " << fmt(d.value / 2)
                     << (d.proxy ? " (local-marginal proxy)" : "") << "\n";
            }
        });
    }
    // Stages not run by this process are judged by their artifacts, so a
    // report rebuilt later matches the one the pipeline wrote.
    Json stages = Json::object();
    for (auto [stage, artifact] : {std::pair{"gen-model", ArtifactNames::kModel},
                                   {"simulate", ArtifactNames::kShots},
                                   {"learn-structure", ArtifactNames::kStructure},
                                   {"learn-coeffs", ArtifactNames::kLearned}}) {
        if (stage_status_.contains(stage)) {
            stages[stage] = stage_status_[stage];
        } else if (std::string(stage) == "simulate" && config_.provider == ProviderMode::kExact) {
            stages[stage] = "skipped (exact provider)";
        } else {
            stages[stage] = file_exists(path(artifact)) ? "ok" : "not run";
        }
        text << "stage " << stage << ": " << stages[stage].get<std::string>() << "\n";
    }
    r["stages"] = stages;
    write_json_file(r, path(ArtifactNames::kReport));
    write_text_file(text.str(), path(ArtifactNames::kReportText));
    return r;
}

Json Experiment::pipeline() {
    fs::create_directories(config_.output_dir);
    std::vector<std::pair<std::string, std::function<void()>>> stages{
        {"gen-model", [&] { model(); }},
        {"simulate",
         [&] {
             if (config_.provider == ProviderMode::kProtocol) {
                 shots();
             }
         }},
        {"learn-structure", [&] { structure(); }},
        {"learn-coeffs", [&] { coefficients(); }},
    };
    bool failed = false;
    for (auto &[name, run] : stages) {
        if (failed) {
            stage_status_[name] = "skipped";
            continue;
        }
        if (name == "simulate" && config_.provider == ProviderMode::kExact) {
            stage_status_[name] = "skipped (exact provider)";
            continue;
        }
        try {
            run();
            stage_status_[name] = "ok";
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &ex) {
            stage_status_[name] = std::string("failed: ") + ex.what();
            failed = true;
        }
    }
    return report();
}

}  // namespace pauli_mrf
