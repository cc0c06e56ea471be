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

#ifndef PAULI_MRF_SHOT_BANK_H
#define PAULI_MRF_SHOT_BANK_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pauli_mrf/pauli_string.h"
#include "pauli_mrf/spam.h"

namespace pauli_mrf {

/// One run of the randomized circuit.
struct ShotRecord {
    /// Per-qubit index into clifford_group().
    std::vector<uint8_t> clifford_ids;
    PauliString q_in;
    PauliString q_out;
    uint32_t k = 1;
    /// Bit i holds the outcome of qubit i.
    uint64_t outcome = 0;

    bool operator==(const ShotRecord &) const = default;
};

/// Non-owning view of a record stored in a ShotBank.
struct ShotView {
    std::span<const uint8_t> clifford_ids;
    PauliString q_in;
    PauliString q_out;
    uint32_t k = 1;
    uint64_t outcome = 0;

    ShotView() = default;
    ShotView(const ShotRecord &r) : clifford_ids(r.clifford_ids), q_in(r.q_in), q_out(r.q_out), k(r.k), outcome(r.outcome) {
    }
    ShotView(std::span<const uint8_t> ids, PauliString in, PauliString out, uint32_t kk, uint64_t x)
        : clifford_ids(ids), q_in(in), q_out(out), k(kk), outcome(x) {
    }
};

struct ScheduleEntry {
    uint32_t k = 1;
    uint64_t count = 1;
    bool operator==(const ScheduleEntry &) const = default;
};

/// Default repetition grid 1, 2, 4, ... up to
/// k_max = max(2, ceil(2 ln(1/(1-p0)) / (1 - alpha_min))), capped at `k_cap`.
std::vector<uint32_t> default_k_grid(double p0, double alpha_min, uint32_t k_cap = 16);

/// Shots grouped by repetition count, stored column-wise.
///
/// Records appear in schedule order: all shots of the first group, then the
/// second, and so on. Median-of-means blocks are contiguous runs of this order.
class ShotBank {
   public:
    ShotBank() = default;
    ShotBank(uint32_t n, uint64_t seed, SpamModel spam, std::vector<ScheduleEntry> schedule);

    uint32_t num_qubits() const { return num_qubits_; }
    uint64_t seed() const { return seed_; }
    const std::string &clifford_ordering() const { return clifford_ordering_; }
    const SpamModel &spam() const { return spam_; }
    const std::vector<ScheduleEntry> &schedule() const { return schedule_; }
    size_t size() const { return ks_.size(); }
    bool empty() const { return ks_.empty(); }
    /// Total shots declared by the schedule.
    uint64_t planned_size() const;

    /// [begin, end) record range of the group with repetition count k; throws if absent.
    std::pair<size_t, size_t> group_range(uint32_t k) const;
    bool has_group(uint32_t k) const;

    ShotView view(size_t i) const;
    ShotRecord record(size_t i) const;

    void reserve(size_t count);
    void resize(size_t count);
    void set(size_t i, const ShotRecord &r);
    /// In-place writers for producers that avoid building a ShotRecord.
    std::span<uint8_t> clifford_ids(size_t i) { return std::span<uint8_t>(cliffords_).subspan(i * num_qubits_, num_qubits_); }
    void set_fields(size_t i, const PauliString &q_in, const PauliString &q_out, uint32_t k, uint64_t outcome);
    void append(const ShotRecord &r);

    /// Throws ParseError when records disagree with the schedule.
    void validate() const;

    bool operator==(const ShotBank &other) const = default;

    /// Raw columns for tight estimator loops.
    std::span<const uint8_t> cliffords() const { return cliffords_; }
    std::span<const uint64_t> outcomes() const { return outcomes_; }

   private:
    uint32_t num_qubits_ = 0;
    uint64_t seed_ = 0;
    std::string clifford_ordering_;
    SpamModel spam_;
    std::vector<ScheduleEntry> schedule_;

    std::vector<uint8_t> cliffords_;
    std::vector<uint64_t> qin_x_, qin_z_, qout_x_, qout_z_;
    std::vector<uint32_t> ks_;
    std::vector<uint64_t> outcomes_;
};

/// Text shot-bank file:
///
///     # pauli-mrf shot bank
///     version 1
///     n 2
///     seed 42
///     clifford_ordering sh-bfs-v1
///     spam_prep 0.925,0.025,0.025,0.025;0.925,0.025,0.025,0.025
///     spam_meas ...
///     schedule 1:1000 2:1000
///     records 2000
///     3,17 XZ IY 1 01
///     ...
///
/// Records: comma-separated Clifford ids, Q_in, Q_out, k, outcome bits (qubit
/// 0 leftmost). SPAM factors are I,X,Z,Y probabilities per qubit in shortest
/// round-trip decimal, so reading a written bank reproduces it exactly.
void write_shot_bank(const ShotBank &bank, std::ostream &out);
/// With `header_only` the records are skipped and the bank comes back empty.
ShotBank read_shot_bank(std::istream &in, bool header_only = false);
void save_shot_bank(const ShotBank &bank, const std::string &path);
ShotBank load_shot_bank(const std::string &path, bool header_only = false);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace pauli_mrf

#endif
