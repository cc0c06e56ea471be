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

#include "pauli_mrf/channel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <thread>

#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"
#include "pauli_mrf/fourier.h"

namespace pauli_mrf {

namespace {

uint64_t qubit_mask(uint32_t n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

uint8_t draw_site_letter(const SiteChannel &c, Rng &rng) {
    double u = uniform01(rng);
    double acc = 0;
    for (uint8_t a = 0; a < 3; a++) {
        acc += c[a];
        if (u < acc) {
            return a;
        }
    }
    return 3;
}

// Applies one product of single-site Pauli channels to the frame (x, z).
void apply_site_channels(const std::vector<SiteChannel> &channels, uint64_t &x, uint64_t &z, Rng &rng) {
    for (uint32_t i = 0; i < channels.size(); i++) {
        if (channels[i][0] == 1) {
            continue;
        }
        uint8_t a = draw_site_letter(channels[i], rng);
        x ^= uint64_t{a & 1u} << i;
        z ^= uint64_t{(a >> 1) & 1u} << i;
    }
}

}  // namespace

PauliChannel PauliChannel::from_model(const GibbsNoiseModel &model, std::optional<McmcOptions> mcmc) {
    PauliChannel out;
    out.sampler_ = ErrorSampler::for_model(model, mcmc);
    if (model.num_qubits() <= kEnumerationCap) {
        out.table_ = model.dense_table();
    }
    return out;
}

PauliChannel PauliChannel::from_table(uint32_t n, std::vector<double> probs) {
    if (probs.size() != table_size(n)) {
        throw DimensionError("Channel table does not cover 4^n strings.");
    }
    double total = 0;
    for (double p : probs) {
        if (!(p >= 0)) {
            throw ConfigError("Channel probabilities must be non-negative.");
        }
        total += p;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw ConfigError("Channel probabilities must sum to 1.");
    }
    for (double &p : probs) {
        p /= total;
    }
    PauliChannel out;
    out.table_ = std::make_shared<const std::vector<double>>(std::move(probs));
    out.sampler_ = ErrorSampler::from_table(n, out.table_);
    return out;
}

const std::vector<double> &PauliChannel::table() const {
    if (!table_) {
        throw UnsupportedSizeError("Channel on " + std::to_string(num_qubits()) +
                                   " qubits has no exact table (MCMC sampling only).");
    }
    return *table_;
}

double PauliChannel::p0() const {
    return table()[0];
}

std::vector<double> PauliChannel::eigenvalues() const {
    std::vector<double> out = table();
    symplectic_transform(out, num_qubits());
    return out;
}

double eigenvalue(const PauliChannel &channel, const PauliString &q) {
    const auto &t = channel.table();
    uint32_t n = channel.num_qubits();
    if (q.num_qubits != n) {
        throw DimensionError("Pauli string and channel disagree on qubit count.");
    }
    uint64_t qi = q.index();
    double out = 0;
    for (uint64_t p = 0; p < t.size(); p++) {
        out += symplectic_product_index(p, qi, n) ? -t[p] : t[p];
    }
    return out;
}

std::vector<double> compose_channel_table(const std::vector<double> &probs, uint32_t n, uint32_t k) {
    if (probs.size() != table_size(n)) {
        throw DimensionError("Channel table does not cover 4^n strings.");
    }
    std::vector<double> out = probs;
    symplectic_transform(out, n);
    for (double &v : out) {
        v = std::pow(v, static_cast<double>(k));
    }
    inverse_symplectic_transform(out, n);
    return out;
}

namespace {

struct ShotFields {
    PauliString q_in;
    PauliString q_out;
    uint64_t outcome = 0;
};

// One shot, writing the Clifford labels into `ids`.
ShotFields simulate_into(const PauliChannel &channel, const SpamModel &spam, uint32_t k, Rng &rng,
                         std::span<uint8_t> ids) {
    uint32_t n = channel.num_qubits();
    const auto &group = clifford_group();
    for (uint32_t i = 0; i < n; i++) {
        ids[i] = static_cast<uint8_t>(uniform_below(rng, kNumCliffords));
    }
    uint64_t mask = qubit_mask(n);
    ShotFields f;
    f.q_in = PauliString{n, rng() & mask, rng() & mask};
    f.q_out = PauliString{n, rng() & mask, rng() & mask};

    // Accumulated Pauli frame; phases never affect Z-basis statistics.
    uint64_t x = 0;
    uint64_t z = 0;
    apply_site_channels(spam.prep, x, z, rng);
    PauliString body = channel.sampler().sample_product(k, rng);
    x ^= f.q_in.xs ^ body.xs ^ f.q_out.xs;
    z ^= f.q_in.zs ^ body.zs ^ f.q_out.zs;
    apply_site_channels(spam.meas, x, z, rng);

    for (uint32_t i = 0; i < n; i++) {
        uint8_t e = static_cast<uint8_t>(((x >> i) & 1) | (((z >> i) & 1) << 1));
        double p1 = group[ids[i]].prob_one[e];
        bool one = p1 >= 1 || (p1 > 0 && uniform01(rng) < p1);
        f.outcome |= uint64_t{one} << i;
    }
    return f;
}

void check_spam(const PauliChannel &channel, const SpamModel &spam, uint32_t k) {
    if (spam.num_qubits() != channel.num_qubits()) {
        throw DimensionError("SPAM model and channel disagree on qubit count.");
    }
    if (k == 0) {
        throw ConfigError("Repetition count k must be at least 1.");
    }
}

}  // namespace

ShotRecord simulate_shot(const PauliChannel &channel, const SpamModel &spam, uint32_t k, Rng &rng) {
    check_spam(channel, spam, k);
    ShotRecord r;
    r.k = k;
    r.clifford_ids.resize(channel.num_qubits());
    ShotFields f = simulate_into(channel, spam, k, rng, r.clifford_ids);
    r.q_in = f.q_in;
    r.q_out = f.q_out;
    r.outcome = f.outcome;
    return r;
}

ShotBank batch_simulate(const PauliChannel &channel, const SpamModel &spam, const std::vector<ScheduleEntry> &schedule,
                        uint64_t master_seed, uint32_t threads) {
    ShotBank bank(channel.num_qubits(), master_seed, spam, schedule);
    bank.resize(bank.planned_size());

    struct Chunk {
        uint32_t k;
        uint64_t index;
        size_t first;
        size_t count;
    };
    std::vector<Chunk> chunks;
    size_t offset = 0;
    for (const auto &e : schedule) {
        check_spam(channel, spam, e.k);
        for (uint64_t c = 0; c * kShotChunk < e.count; c++) {
            size_t count = static_cast<size_t>(std::min<uint64_t>(kShotChunk, e.count - c * kShotChunk));
            chunks.push_back({e.k, c, offset + c * kShotChunk, count});
        }
        offset += e.count;
    }
    auto run = [&](const Chunk &c) {
        Rng rng = derive_stream(master_seed, {static_cast<uint64_t>(StreamTag::kShots), c.k, c.index});
        for (size_t i = c.first; i < c.first + c.count; i++) {
            ShotFields f = simulate_into(channel, spam, c.k, rng, bank.clifford_ids(i));
            bank.set_fields(i, f.q_in, f.q_out, c.k, f.outcome);
        }
    };

    threads = std::max<uint32_t>(1, std::min<uint32_t>(threads, static_cast<uint32_t>(chunks.size())));
    if (threads <= 1) {
        for (const auto &c : chunks) {
            run(c);
        }
        return bank;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < threads; t++) {
        pool.emplace_back([&, t] {
            try {
                for (size_t j = next++; j < chunks.size(); j = next++) {
                    run(chunks[j]);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return bank;
}

}  // namespace pauli_mrf
