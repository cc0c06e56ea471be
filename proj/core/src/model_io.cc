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

#include "pauli_mrf/model_io.h"

#include <fstream>
#include <sstream>

#include "pauli_mrf/errors.h"

namespace pauli_mrf {

Json potential_to_json(const PotentialTable &table) {
    Json out = Json::object();
    uint32_t m = static_cast<uint32_t>(table.hyperedge.size());
    for (uint64_t idx = 0; idx < table.values.size(); idx++) {
        out[PauliString::from_index(m, idx).str()] = table.values[idx];
    }
    return out;
}

PotentialTable potential_from_json(const Region &hyperedge, const Json &json) {
    if (!json.is_object()) {
        throw ParseError("Potential for " + hyperedge.str() + " must be an object keyed by Pauli text.");
    }
    PotentialTable table = PotentialTable::zeros(hyperedge);
    for (const auto &[key, value] : json.items()) {
        PauliString local = PauliString::from_text(key);
        if (local.num_qubits != hyperedge.size()) {
            throw ParseError("Potential key '" + key + "' does not match hyperedge " + hyperedge.str() + ".");
        }
        table.values[local.index()] = value.get<double>();
    }
    return table;
}

Json model_to_json(const GibbsNoiseModel &model) {
    Json out;
    out["format"] = "pauli-mrf-model";
    out["version"] = 1;
    out["n"] = model.num_qubits();
    out["r"] = model.hypergraph().max_edge_size();
    const auto &meta = model.metadata();
    if (meta.alpha) {
        out["alpha"] = *meta.alpha;
    }
    if (meta.beta) {
        out["beta"] = *meta.beta;
    }
    if (meta.seed) {
        out["seed"] = *meta.seed;
    }
    Json edges = Json::array();
    for (const auto &pot : model.potentials()) {
        Json e;
        e["qubits"] = pot.hyperedge.qubits();
        e["potential"] = potential_to_json(pot);
        edges.push_back(std::move(e));
    }
    out["hyperedges"] = std::move(edges);
    return out;
}

GibbsNoiseModel model_from_json(const Json &json) {
    try {
        uint32_t n = json.at("n").get<uint32_t>();
        ModelMetadata meta;
        if (json.contains("alpha")) {
            meta.alpha = json["alpha"].get<double>();
        }
        if (json.contains("beta")) {
            meta.beta = json["beta"].get<double>();
        }
        if (json.contains("seed")) {
            meta.seed = json["seed"].get<uint64_t>();
        }
        std::vector<PotentialTable> potentials;
        for (const auto &e : json.at("hyperedges")) {
            Region h(e.at("qubits").get<std::vector<uint32_t>>());
            if (e.contains("potential")) {
                potentials.push_back(potential_from_json(h, e["potential"]));
            } else {
                potentials.push_back(PotentialTable::zeros(h));
            }
        }
        GibbsNoiseModel model(n, std::move(potentials), meta);
        if (json.contains("r")) {
            uint32_t r = json["r"].get<uint32_t>();
            model.hypergraph().validate(r);
        }
        return model;
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("Malformed model: ") + ex.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("Cannot open '" + path + "'.");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError("'" + path + "': " + ex.what());
    }
}

void write_text_file(const std::string &text, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("Cannot write '" + path + "'.");
    }
    out << text;
}

void write_json_file(const Json &json, const std::string &path) {
    write_text_file(json.dump(2) + "\n", path);
}

void save_model(const GibbsNoiseModel &model, const std::string &path) {
    write_json_file(model_to_json(model), path);
}

GibbsNoiseModel load_model(const std::string &path) {
    return model_from_json(read_json_file(path));
}

}  // namespace pauli_mrf
