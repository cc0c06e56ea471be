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

#ifndef PAULI_MRF_COEFFICIENTS_H
#define PAULI_MRF_COEFFICIENTS_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauli_mrf/graphical_model.h"
#include "pauli_mrf/marginal_provider.h"
#include "pauli_mrf/model_io.h"

namespace pauli_mrf {

struct RegionAssignment {
    Region hyperedge;
    /// R_h: h together with every hyperedge meeting it.
    Region enclosure;
};

/// One layer of hyperedge closure, sorted. Throws UnsupportedSizeError above
/// the enumeration cap.
RegionAssignment enclosure(const Region &h, const std::vector<Region> &hyperedges);

enum class GaugeConvention {
    /// Only characters chi_P with P non-identity on every site of h.
    kCanonical,
    /// Every non-identity character on h, as in the unrestricted projection.
    kUnrestricted,
};

/// theta_hat^h(Q) = sum_P c_P chi_P(Q), c_P = 4^{-|R|} sum_W chi_P(W_h) log mu_R(W),
/// over P on h selected by `gauge`. `table` must cover a superset of h and
/// be strictly positive.
PotentialTable estimate_theta(const Region &h, const MarginalTable &table,
                              GaugeConvention gauge = GaugeConvention::kCanonical);

struct CoefficientOptions {
    GaugeConvention gauge = GaugeConvention::kCanonical;
    /// Hyperedges with max |theta_hat| below this are flagged as plausibly spurious.
    double spurious_threshold = 0.2;
};

struct LearnedModel {
    uint32_t num_qubits = 0;
    std::vector<RegionAssignment> regions;
    std::vector<PotentialTable> potentials;
    std::vector<Region> spurious;
    /// Per-hyperedge failures (e.g. an enclosure above the cap); those
    /// hyperedges are left out of `reconstructed`.
    std::vector<std::string> errors;
    GibbsNoiseModel reconstructed;
};

/// Estimates theta_hat^h for every candidate from the provider's marginal on
/// R_h and assembles mu_hat.
LearnedModel learn_all_coefficients(const std::vector<Region> &candidates, const MarginalProvider &provider,
                                    const CoefficientOptions &options = {});

/// max_h max_Q |theta_hat^h(Q) - theta^h(Q)|, treating hyperedges missing on
/// either side as zero tensors.
double max_coefficient_error(const GibbsNoiseModel &truth, const GibbsNoiseModel &learned);

/// 1/2 sum |p - q|.
double tv_distance(std::span<const double> p, std::span<const double> q);

struct ChannelDistance {
    double value = 0;
    /// True when `value` is a local-marginal proxy rather than the diamond norm.
    bool proxy = false;
};

/// Diamond distance between Pauli channels with error laws mu and mu_hat,
/// which is exactly 2 TV(mu, mu_hat). Above the enumeration cap it returns
/// 2 max_R TV(mu_R, mu_hat_R) over `proxy_regions`, estimated from MCMC
/// samples, flagged as a proxy.
ChannelDistance diamond_distance(const GibbsNoiseModel &truth, const GibbsNoiseModel &learned,
                                 const std::vector<Region> &proxy_regions = {}, uint64_t proxy_samples = 20000,
                                 uint64_t seed = 0);

/// Learned-model file: the model schema plus a "provenance" object.
Json learned_model_to_json(const LearnedModel &model, const Json &provenance);

}  // namespace pauli_mrf

#endif
