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

#ifndef PAULI_MRF_ESTIMATOR_H
#define PAULI_MRF_ESTIMATOR_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pauli_mrf/pauli_string.h"
#include "pauli_mrf/shot_bank.h"

namespace pauli_mrf {

/// omega_P(C, x) = 3^{w(P)} <x|C^dag P C|x> <0|C^dag P C|0>.
///
/// Per site the factor is (-1)^{x_i} when C_i rotates P_i onto the Z axis and
/// zero otherwise.
double omega_value(const PauliString &p, const ShotView &shot);

/// Omega = omega_P(C, x) chi_P(Q_in) chi_P(Q_out).
double omega_sample(const PauliString &p, const ShotView &shot);

/// Median of `groups` contiguous block means. Block j covers
/// [floor(j N / groups), floor((j+1) N / groups)).
double median_of_means(std::span<const double> samples, uint32_t groups);

/// ceil(8 ln(1/delta)).
uint32_t default_mom_groups(double delta);

struct DecayPoint {
    uint32_t k = 1;
    uint64_t shots = 0;
    /// Median-of-means estimate y_k.
    double value = 0;
    /// Plain sample mean and second moment of Omega_k.
    double mean = 0;
    double second_moment = 0;
    /// sqrt(Var(Omega_k) / shots).
    double std_error = 0;

    double variance() const { return second_moment - mean * mean; }
};

struct DecayPoints {
    PauliString pauli;
    uint32_t m_groups = 1;
    /// Sorted by k.
    std::vector<DecayPoint> points;
};

/// y_k for every group of `bank`, by direct evaluation of omega_sample.
DecayPoints estimate_decay_points(const PauliString &p, const ShotBank &bank, uint32_t groups);

struct FitOptions {
    /// Points with |y_k| < floor_sigmas * 3^{w/2} sqrt(m_groups / N_k) are dropped.
    double floor_sigmas = 3;
};

struct AlphaEstimate {
    PauliString pauli;
    double alpha_hat = 0;
    std::map<uint32_t, double> per_k_means;
    double std_error = 0;
    uint32_t m_groups = 1;
    /// Fitted intercept C_P; 1 when it could not be resolved.
    double c_hat = 1;
    /// Empty for a regular fit; otherwise any of "indeterminate_decay",
    /// "insufficient_data", "spam_unresolved", "clamped".
    std::vector<std::string> flags;

    bool flagged() const { return !flags.empty(); }
};

/// Fits y_k = C alpha^k by weighted least squares of log|y_k| on k.
///
/// Weights are y_k^2 / sigma_k^2, the inverse small-noise variance of
/// log|y_k|; they reduce to y_k^2 when the points carry no error estimate.
/// The sign of alpha is the majority sign of y_{k'} / y_k over consecutive
/// usable points with odd k' - k (positive on ties). Throws
/// IndeterminateDecayError or InsufficientDataError.
AlphaEstimate fit_alpha(const DecayPoints &points, FitOptions options = {});

/// Like fit_alpha, but a failed fit becomes a flagged estimate: the smallest-k
/// point is read as alpha^k with C = 1.
AlphaEstimate fit_alpha_or_fallback(const DecayPoints &points, FitOptions options = {});

using AlphaTable = std::map<PauliString, AlphaEstimate>;

struct EstimatorOptions {
    /// 0 selects default_mom_groups(delta).
    uint32_t groups = 0;
    double delta = 0.05;
    FitOptions fit;
    /// Largest Pauli weight the estimator may visit; 0 means no limit.
    uint32_t max_weight = 0;
};

/// Lazily estimates eigenvalues from one shot bank.
///
/// Shots are reduced once to (diagonalized letters, sign bits). Estimating a
/// Pauli then needs one histogram per support set: every Pauli sharing that
/// support is filled in by the same pass. Results are cached; a Pauli's
/// estimate depends only on the bank and the options, never on query order.
/// Safe for concurrent use.
class AlphaEstimator {
   public:
    AlphaEstimator(std::shared_ptr<const ShotBank> bank, EstimatorOptions options = {});

    const ShotBank &bank() const { return *bank_; }
    uint32_t num_qubits() const { return bank_->num_qubits(); }
    uint32_t groups() const { return groups_; }

    /// alpha_hat, fitted with fallback. The identity is exactly 1.
    AlphaEstimate estimate(const PauliString &p);
    /// Decay points for P, from the accumulated histograms.
    DecayPoints decay_points(const PauliString &p);
    /// Estimates every Pauli supported on `region`.
    void ensure_region(const Region &region);

    AlphaTable snapshot() const;
    /// Number of support sets and Paulis processed so far.
    size_t supports_visited() const;
    size_t paulis_estimated() const;

   private:
    struct SupportStats;
    const SupportStats &stats_for(uint64_t support);
    void accumulate(const std::vector<uint64_t> &supports);

    std::shared_ptr<const ShotBank> bank_;
    EstimatorOptions options_;
    uint32_t groups_ = 1;
    // Per-shot reductions.
    std::vector<uint64_t> dx_, dz_, sign_bits_;
    // [group] = (first record, count).
    std::vector<std::pair<size_t, size_t>> ranges_;

    mutable std::mutex mutex_;
    std::unordered_map<uint64_t, std::shared_ptr<const SupportStats>> supports_;
    AlphaTable alphas_;
};

/// One entry per input Pauli, all from the same bank. Failed fits are
/// flagged rather than thrown; the identity is forced to 1.
AlphaTable batch_estimate(const std::vector<PauliString> &paulis, AlphaEstimator &estimator);

/// Every Pauli with weight <= w_max over n qubits, identity included.
std::vector<PauliString> paulis_up_to_weight(uint32_t n, uint32_t w_max);

/// Probability table over the Paulis of a region, in table order.
struct MarginalTable {
    Region region;
    std::vector<double> probs;
    double floor = 0;

    double at(const PauliString &local) const { return probs[local.index()]; }
};

/// Default rho_min = 1e-6 * 4^{-|A|}.
double default_marginal_floor(size_t region_size);

/// mu_A(P) = 4^{-|A|} sum_{Q on A} (-1)^{P.Q} alpha_Q, before any projection.
/// `alpha_of` is called with n-qubit Paulis supported on `region`.
template <typename AlphaFn>
std::vector<double> raw_marginal_from_alphas(const Region &region, uint32_t n, AlphaFn &&alpha_of);

/// Clips entries below `floor` up to it, then rescales the mass above the
/// floor so the table sums to 1. Every entry stays >= floor.
MarginalTable project_marginal(Region region, std::vector<double> raw, double floor);

/// raw_marginal_from_alphas followed by project_marginal. Throws
/// EstimationError when `table` lacks an eigenvalue on the region.
MarginalTable marginal_from_alphas(const Region &region, uint32_t n, const AlphaTable &table, double floor);

/// Text AlphaTable file: header, then "PAULI alpha stderr c_hat flags" per line.
void write_alpha_table(const AlphaTable &table, std::ostream &out);
AlphaTable read_alpha_table(std::istream &in);

/// Text MarginalTable file: region, floor, then "PAULI probability" per line.
void write_marginal_table(const MarginalTable &table, std::ostream &out);
MarginalTable read_marginal_table(std::istream &in);

}  // namespace pauli_mrf

#include "pauli_mrf/estimator_inl.h"

#endif
