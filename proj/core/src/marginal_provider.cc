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

#include "pauli_mrf/marginal_provider.h"

#include <cmath>

#include "pauli_mrf/errors.h"

namespace pauli_mrf {

std::string provider_mode_name(ProviderMode mode) {
    switch (mode) {
        case ProviderMode::kExact:
            return "exact";
        case ProviderMode::kProtocol:
            return "protocol";
        case ProviderMode::kCustom:
            return "custom";
    }
    return "unknown";
}

MarginalProvider MarginalProvider::exact(GibbsNoiseModel model) {
    MarginalProvider p;
    p.num_qubits_ = model.num_qubits();
    p.mode_ = ProviderMode::kExact;
    p.source_ = [model = std::move(model)](const Region &sorted) {
        return MarginalTable{sorted, exact_marginal(model, sorted), 0};
    };
    return p;
}

MarginalProvider MarginalProvider::protocol(std::shared_ptr<AlphaEstimator> estimator, double floor_scale) {
    MarginalProvider p;
    p.num_qubits_ = estimator->num_qubits();
    p.mode_ = ProviderMode::kProtocol;
    p.estimator_ = estimator;
    p.source_ = [estimator, floor_scale, n = p.num_qubits_](const Region &sorted) {
        estimator->ensure_region(sorted);
        auto raw = raw_marginal_from_alphas(sorted, n, [&](const PauliString &q) {
            return estimator->estimate(q).alpha_hat;
        });
        double floor = floor_scale * std::pow(4.0, -static_cast<double>(sorted.size()));
        return project_marginal(sorted, std::move(raw), floor);
    };
    return p;
}

MarginalProvider MarginalProvider::custom(uint32_t n, Source source) {
    MarginalProvider p;
    p.num_qubits_ = n;
    p.mode_ = ProviderMode::kCustom;
    p.source_ = std::move(source);
    return p;
}

std::shared_ptr<const MarginalTable> MarginalProvider::marginal(const Region &region) const {
    region.validate(num_qubits_);
    Region sorted = region.sorted();
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->tables.find(sorted);
        if (it != cache_->tables.end()) {
            return it->second;
        }
    }
    auto table = std::make_shared<const MarginalTable>(source_(sorted));
    if (table->region != sorted || table->probs.size() != table_size(sorted.size())) {
        throw DimensionError("Marginal source returned a table for the wrong region.");
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->tables.try_emplace(sorted, std::move(table)).first->second;
}

size_t MarginalProvider::regions_computed() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->tables.size();
}

}  // namespace pauli_mrf
