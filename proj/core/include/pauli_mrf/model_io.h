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

#ifndef PAULI_MRF_MODEL_IO_H
#define PAULI_MRF_MODEL_IO_H

#include <string>

#include <nlohmann/json.hpp>

#include "pauli_mrf/graphical_model.h"

namespace pauli_mrf {

using Json = nlohmann::ordered_json;

/// Model file layout:
///
///     {"format": "pauli-mrf-model", "version": 1, "n": 3, "r": 2,
///      "alpha": 0.4, "beta": 0.4, "seed": 7,
///      "hyperedges": [{"qubits": [0, 1], "potential": {"II": 0.0, "XI": ..., ...}}]}
///
/// Potentials list every entry keyed by the Pauli text over the hyperedge, in
/// table order. Doubles are written in shortest round-trip form, so
/// load(save(m)) == m bit for bit.
Json model_to_json(const GibbsNoiseModel &model);
GibbsNoiseModel model_from_json(const Json &json);

Json potential_to_json(const PotentialTable &table);
PotentialTable potential_from_json(const Region &hyperedge, const Json &json);

void save_model(const GibbsNoiseModel &model, const std::string &path);
GibbsNoiseModel load_model(const std::string &path);

/// Reads a whole JSON document; throws ParseError with the path on failure.
Json read_json_file(const std::string &path);
/// Writes `json` with two-space indentation and a trailing newline.
void write_json_file(const Json &json, const std::string &path);
void write_text_file(const std::string &text, const std::string &path);

}  // namespace pauli_mrf

#endif
