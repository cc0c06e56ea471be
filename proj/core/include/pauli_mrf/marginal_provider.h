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

#ifndef PAULI_MRF_MARGINAL_PROVIDER_H
#define PAULI_MRF_MARGINAL_PROVIDER_H

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "pauli_mrf/estimator.h"
#include "pauli_mrf/graphical_model.h"

namespace pauli_mrf {

enum class ProviderMode { kExact, kProtocol, kCustom };

std::string provider_mode_name(ProviderMode mode);

/// Source of local marginals mu_A for the learners.
///
/// Exact mode marginalizes a known model; protocol mode inverts eigenvalues
/// estimated from a shot bank. Tables are memoized by region and returned
/// over the sorted region. Copies share the cache. Concurrent queries are
/// safe: a table computed twice is computed identically, and the first
/// insert wins.
class MarginalProvider {
   public:
    using Source = std::function<MarginalTable(const Region &sorted)>;

    static MarginalProvider exact(GibbsNoiseModel model);
    /// rho_min for a region A is floor_scale * 4^{-|A|}.
    static MarginalProvider protocol(std::shared_ptr<AlphaEstimator> estimator, double floor_scale = 1e-6);
    static MarginalProvider custom(uint32_t n, Source source);

    uint32_t num_qubits() const { return num_qubits_; }
    ProviderMode mode() const { return mode_; }

    std::shared_ptr<const MarginalTable> marginal(const Region &region) const;
    /// Distinct regions computed so far.
    size_t regions_computed() const;
    /// The estimator behind a protocol provider, else null.
    std::shared_ptr<AlphaEstimator> estimator() const { return estimator_; }

   private:
    struct Cache {
        std::mutex mutex;
        std::map<Region, std::shared_ptr<const MarginalTable>> tables;
    };

    uint32_t num_qubits_ = 0;
    ProviderMode mode_ = ProviderMode::kCustom;
    Source source_;
    std::shared_ptr<AlphaEstimator> estimator_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace pauli_mrf

#endif
