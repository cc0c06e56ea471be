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

#include "pauli_mrf/estimator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"

namespace pauli_mrf {

namespace {

void check_dims(const PauliString &p, const ShotView &shot) {
    if (p.num_qubits != shot.clifford_ids.size()) {
        throw DimensionError("Pauli string and shot disagree on qubit count.");
    }
}

// Letters rotated onto Z by each shot's Cliffords, as a pair of masks.
std::pair<uint64_t, uint64_t> diagonal_masks(std::span<const uint8_t> ids) {
    const auto &group = clifford_group();
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t i = 0; i < ids.size(); i++) {
        uint8_t d = group[ids[i]].diagonalized;
        x |= uint64_t{d & 1u} << i;
        z |= uint64_t{(d >> 1) & 1u} << i;
    }
    return {x, z};
}

// Gathers the bits of `v` selected by `mask` into the low bits, in qubit order.
uint64_t compress(uint64_t v, uint64_t mask) {
    uint64_t out = 0;
    uint32_t k = 0;
    while (mask) {
        uint32_t i = static_cast<uint32_t>(std::countr_zero(mask));
        out |= ((v >> i) & 1) << k++;
        mask &= mask - 1;
    }
    return out;
}

double pow3(uint32_t w) {
    double out = 1;
    for (uint32_t i = 0; i < w; i++) {
        out *= 3;
    }
    return out;
}

size_t block_start(size_t j, size_t count, size_t groups) {
    return static_cast<size_t>((static_cast<unsigned __int128>(j) * count) / groups);
}

}  // namespace

double omega_value(const PauliString &p, const ShotView &shot) {
    check_dims(p, shot);
    const auto &group = clifford_group();
    double out = 1;
    for (uint32_t i = 0; i < p.num_qubits; i++) {
        uint8_t code = p.site_code(i);
        if (code == 0) {
            continue;
        }
        if (group[shot.clifford_ids[i]].diagonalized != code) {
            return 0;
        }
        out *= ((shot.outcome >> i) & 1) ? -3.0 : 3.0;
    }
    return out;
}

double omega_sample(const PauliString &p, const ShotView &shot) {
    double w = omega_value(p, shot);
    if (w == 0) {
        return 0;
    }
    return (symplectic_product(p, shot.q_in) ^ symplectic_product(p, shot.q_out)) ? -w : w;
}

double median_of_means(std::span<const double> samples, uint32_t groups) {
    if (samples.empty()) {
        throw EstimationError("median_of_means needs at least one sample.");
    }
    if (groups == 0) {
        throw ConfigError("median_of_means needs at least one group.");
    }
    size_t m = std::min<size_t>(groups, samples.size());
    std::vector<double> means(m);
    for (size_t j = 0; j < m; j++) {
        size_t b = block_start(j, samples.size(), m);
        size_t e = block_start(j + 1, samples.size(), m);
        double sum = 0;
        for (size_t i = b; i < e; i++) {
            sum += samples[i];
        }
        means[j] = sum / static_cast<double>(e - b);
    }
    std::sort(means.begin(), means.end());
    return (m % 2) ? means[m / 2] : 0.5 * (means[m / 2 - 1] + means[m / 2]);
}

uint32_t default_mom_groups(double delta) {
    if (!(delta > 0 && delta < 1)) {
        throw ConfigError("Median-of-means failure probability must lie in (0, 1).");
    }
    return static_cast<uint32_t>(std::max(1.0, std::ceil(8 * std::log(1 / delta))));
}

DecayPoints estimate_decay_points(const PauliString &p, const ShotBank &bank, uint32_t groups) {
    if (p.num_qubits != bank.num_qubits()) {
        throw DimensionError("Pauli string and shot bank disagree on qubit count.");
    }
    DecayPoints out;
    out.pauli = p;
    out.m_groups = groups;
    std::vector<double> samples;
    for (const auto &entry : bank.schedule()) {
        auto [b, e] = bank.group_range(entry.k);
        if (b == e) {
            throw EstimationError("Shot bank group k = " + std::to_string(entry.k) + " is empty.");
        }
        samples.clear();
        double sum = 0;
        double sum_sq = 0;
        for (size_t i = b; i < e; i++) {
            double v = omega_sample(p, bank.view(i));
            samples.push_back(v);
            sum += v;
            sum_sq += v * v;
        }
        DecayPoint pt;
        pt.k = entry.k;
        pt.shots = e - b;
        pt.value = median_of_means(samples, groups);
        pt.mean = sum / static_cast<double>(pt.shots);
        pt.second_moment = sum_sq / static_cast<double>(pt.shots);
        pt.std_error = std::sqrt(std::max(0.0, pt.variance()) / static_cast<double>(pt.shots));
        out.points.push_back(pt);
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto &a, const auto &b) { return a.k < b.k; });
    return out;
}

AlphaEstimate fit_alpha(const DecayPoints &dp, FitOptions options) {
    AlphaEstimate est;
    est.pauli = dp.pauli;
    est.m_groups = dp.m_groups;
    for (const auto &pt : dp.points) {
        est.per_k_means[pt.k] = pt.value;
    }
    double scale = std::sqrt(pow3(dp.pauli.weight()));
    std::vector<const DecayPoint *> usable;
    for (const auto &pt : dp.points) {
        if (pt.shots == 0) {
            continue;
        }
        double floor = options.floor_sigmas * scale *
                       std::sqrt(static_cast<double>(dp.m_groups) / static_cast<double>(pt.shots));
        if (pt.value != 0 && std::abs(pt.value) >= floor) {
            usable.push_back(&pt);
        }
    }
    if (usable.empty()) {
        throw IndeterminateDecayError("Every decay point of " + dp.pauli.str() + " is below the noise floor.");
    }
    if (usable.size() < 2) {
        throw InsufficientDataError("Only one decay point of " + dp.pauli.str() + " clears the noise floor.");
    }

    int votes = 0;
    for (size_t j = 0; j + 1 < usable.size(); j++) {
        if ((usable[j + 1]->k - usable[j]->k) % 2 == 1) {
            votes += (usable[j + 1]->value / usable[j]->value < 0) ? -1 : 1;
        }
    }
    double sign = votes < 0 ? -1 : 1;

    bool have_errors = std::all_of(usable.begin(), usable.end(), [](const DecayPoint *p) { return p->std_error > 0; });
    double sw = 0, sx = 0, sy = 0;
    std::vector<double> weights;
    for (const DecayPoint *p : usable) {
        double w = p->value * p->value;
        if (have_errors) {
            w /= p->std_error * p->std_error;
        }
        weights.push_back(w);
        sw += w;
        sx += w * p->k;
        sy += w * std::log(std::abs(p->value));
    }
    double xbar = sx / sw;
    double ybar = sy / sw;
    double sxx = 0, sxy = 0;
    for (size_t j = 0; j < usable.size(); j++) {
        double dx = usable[j]->k - xbar;
        sxx += weights[j] * dx * dx;
        sxy += weights[j] * dx * (std::log(std::abs(usable[j]->value)) - ybar);
    }
    double slope = sxy / sxx;
    double intercept = ybar - slope * xbar;
    double magnitude = std::exp(slope);

    est.alpha_hat = sign * magnitude;
    if (std::abs(est.alpha_hat) > 1) {
        est.alpha_hat = sign;
        est.flags.push_back("clamped");
    }
    // y_k = C alpha^k fixes the sign of C from any usable point.
    const DecayPoint *first = usable.front();
    double c_sign = (first->value < 0 ? -1 : 1) * ((sign < 0 && first->k % 2 == 1) ? -1 : 1);
    est.c_hat = c_sign * std::exp(intercept);
    est.std_error = have_errors ? magnitude * std::sqrt(1 / sxx) : 0;
    return est;
}

AlphaEstimate fit_alpha_or_fallback(const DecayPoints &dp, FitOptions options) {
    std::string reason;
    try {
        return fit_alpha(dp, options);
    } catch (const IndeterminateDecayError &) {
        reason = "indeterminate_decay";
    } catch (const InsufficientDataError &) {
        reason = "insufficient_data";
    }
    AlphaEstimate est;
    est.pauli = dp.pauli;
    est.m_groups = dp.m_groups;
    for (const auto &pt : dp.points) {
        est.per_k_means[pt.k] = pt.value;
    }
    est.flags = {reason, "spam_unresolved"};
    auto it = std::find_if(dp.points.begin(), dp.points.end(), [](const DecayPoint &p) { return p.shots > 0; });
    if (it == dp.points.end()) {
        est.flags.front() = "indeterminate_decay";
        return est;
    }
    double v = it->value;
    double k = it->k;
    double magnitude = std::pow(std::abs(v), 1 / k);
    // An even k hides the sign of alpha; assume positive.
    est.alpha_hat = (v < 0 && it->k % 2 == 1) ? -magnitude : magnitude;
    if (std::abs(est.alpha_hat) > 1) {
        est.alpha_hat = est.alpha_hat < 0 ? -1 : 1;
        est.flags.push_back("clamped");
    }
    est.std_error = (it->k == 1 || v == 0) ? it->std_error : magnitude / (k * std::abs(v)) * it->std_error;
    return est;
}

// Histogram of (diagonalized letters, sign) over one support set, per group
// and median-of-means block.
struct AlphaEstimator::SupportStats {
    uint64_t support = 0;
    uint32_t weight = 0;
    struct Group {
        uint32_t k = 1;
        uint64_t shots = 0;
        uint32_t blocks = 1;
        // [block * 4^w + local index]: sum of signs.
        std::vector<int64_t> sign_sums;
        // [local index]: shots with a nonzero Omega.
        std::vector<int64_t> hits;
    };
    std::vector<Group> groups;
};

AlphaEstimator::AlphaEstimator(std::shared_ptr<const ShotBank> bank, EstimatorOptions options)
    : bank_(std::move(bank)), options_(options) {
    groups_ = options_.groups ? options_.groups : default_mom_groups(options_.delta);
    const ShotBank &b = *bank_;
    size_t count = b.size();
    dx_.resize(count);
    dz_.resize(count);
    sign_bits_.resize(count);
    for (size_t i = 0; i < count; i++) {
        ShotView v = b.view(i);
        auto [x, z] = diagonal_masks(v.clifford_ids);
        dx_[i] = x;
        dz_[i] = z;
        // Site i of P = D contributes (-1)^{x_i} and, through the two
        // characters, (-1)^{(D . (Q_in Q_out))_i}.
        uint64_t rx = v.q_in.xs ^ v.q_out.xs;
        uint64_t rz = v.q_in.zs ^ v.q_out.zs;
        sign_bits_[i] = v.outcome ^ (x & rz) ^ (z & rx);
    }
    for (const auto &e : b.schedule()) {
        auto [first, last] = b.group_range(e.k);
        if (first == last) {
            throw EstimationError("Shot bank group k = " + std::to_string(e.k) + " is empty.");
        }
        ranges_.emplace_back(first, last - first);
    }
}

void AlphaEstimator::accumulate(const std::vector<uint64_t> &supports) {
    std::vector<std::shared_ptr<SupportStats>> fresh;
    for (uint64_t s : supports) {
        auto st = std::make_shared<SupportStats>();
        st->support = s;
        st->weight = static_cast<uint32_t>(std::popcount(s));
        size_t cells = size_t{1} << (2 * st->weight);
        for (size_t g = 0; g < ranges_.size(); g++) {
            SupportStats::Group grp;
            grp.k = bank_->schedule()[g].k;
            grp.shots = ranges_[g].second;
            grp.blocks = static_cast<uint32_t>(std::min<uint64_t>(groups_, grp.shots));
            grp.sign_sums.assign(grp.blocks * cells, 0);
            grp.hits.assign(cells, 0);
            st->groups.push_back(std::move(grp));
        }
        fresh.push_back(std::move(st));
    }
    for (size_t g = 0; g < ranges_.size(); g++) {
        auto [first, count] = ranges_[g];
        uint32_t blocks = fresh.empty() ? 1 : fresh.front()->groups[g].blocks;
        for (uint32_t b = 0; b < blocks; b++) {
            size_t lo = first + block_start(b, count, blocks);
            size_t hi = first + block_start(b + 1, count, blocks);
            for (auto &st : fresh) {
                uint64_t s = st->support;
                uint32_t w = st->weight;
                auto &grp = st->groups[g];
                int64_t *sums = grp.sign_sums.data() + (size_t{b} << (2 * w));
                int64_t *hits = grp.hits.data();
                for (size_t i = lo; i < hi; i++) {
                    uint64_t idx = compress(dx_[i], s) | (compress(dz_[i], s) << w);
                    sums[idx] += (std::popcount(sign_bits_[i] & s) & 1) ? -1 : 1;
                    hits[idx]++;
                }
            }
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    for (auto &st : fresh) {
        supports_.try_emplace(st->support, std::move(st));
    }
}

const AlphaEstimator::SupportStats &AlphaEstimator::stats_for(uint64_t support) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = supports_.find(support);
        if (it != supports_.end()) {
            return *it->second;
        }
    }
    accumulate({support});
    std::lock_guard<std::mutex> lock(mutex_);
    return *supports_.at(support);
}

DecayPoints AlphaEstimator::decay_points(const PauliString &p) {
    if (p.num_qubits != num_qubits()) {
        throw DimensionError("Pauli string and shot bank disagree on qubit count.");
    }
    if (options_.max_weight && p.weight() > options_.max_weight) {
        throw EstimationError("Pauli " + p.str() + " exceeds the configured weight cap of " +
                              std::to_string(options_.max_weight) + ".");
    }
    uint64_t s = p.support_mask();
    const SupportStats &st = stats_for(s);
    uint32_t w = st.weight;
    uint64_t idx = compress(p.xs, s) | (compress(p.zs, s) << w);
    double scale = pow3(w);
    DecayPoints out;
    out.pauli = p;
    out.m_groups = groups_;
    for (const auto &grp : st.groups) {
        DecayPoint pt;
        pt.k = grp.k;
        pt.shots = grp.shots;
        std::vector<double> means(grp.blocks);
        int64_t total = 0;
        for (uint32_t b = 0; b < grp.blocks; b++) {
            int64_t sum = grp.sign_sums[(size_t{b} << (2 * w)) + idx];
            total += sum;
            double len = static_cast<double>(block_start(b + 1, grp.shots, grp.blocks) -
                                             block_start(b, grp.shots, grp.blocks));
            means[b] = scale * static_cast<double>(sum) / len;
        }
        std::sort(means.begin(), means.end());
        size_t m = means.size();
        pt.value = (m % 2) ? means[m / 2] : 0.5 * (means[m / 2 - 1] + means[m / 2]);
        double shots = static_cast<double>(grp.shots);
        pt.mean = scale * static_cast<double>(total) / shots;
        pt.second_moment = scale * scale * static_cast<double>(grp.hits[idx]) / shots;
        pt.std_error = std::sqrt(std::max(0.0, pt.variance()) / shots);
        out.points.push_back(pt);
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto &a, const auto &b) { return a.k < b.k; });
    return out;
}

AlphaEstimate AlphaEstimator::estimate(const PauliString &p) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = alphas_.find(p);
        if (it != alphas_.end()) {
            return it->second;
        }
    }
    AlphaEstimate est = fit_alpha_or_fallback(decay_points(p), options_.fit);
    if (p.is_identity()) {
        est.alpha_hat = 1;
        est.flags.clear();
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return alphas_.try_emplace(p, std::move(est)).first->second;
}

void AlphaEstimator::ensure_region(const Region &region) {
    if (options_.max_weight && region.size() > options_.max_weight) {
        throw EstimationError("Region " + region.str() + " exceeds the configured weight cap of " +
                              std::to_string(options_.max_weight) + ".");
    }
    uint64_t mask = region.mask();
    std::vector<uint64_t> missing;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        // Every subset of the region, including the empty one.
        uint64_t s = 0;
        do {
            if (!supports_.count(s)) {
                missing.push_back(s);
            }
            s = (s - mask) & mask;
        } while (s != 0);
    }
    if (!missing.empty()) {
        accumulate(missing);
    }
    for (const PauliString &local : enumerate_paulis(Region::full(static_cast<uint32_t>(region.size())))) {
        estimate(embed(local, region, num_qubits()));
    }
}

AlphaTable AlphaEstimator::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return alphas_;
}

size_t AlphaEstimator::supports_visited() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return supports_.size();
}

size_t AlphaEstimator::paulis_estimated() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return alphas_.size();
}

AlphaTable batch_estimate(const std::vector<PauliString> &paulis, AlphaEstimator &estimator) {
    AlphaTable out;
    for (const auto &p : paulis) {
        out[p] = estimator.estimate(p);
    }
    return out;
}

std::vector<PauliString> paulis_up_to_weight(uint32_t n, uint32_t w_max) {
    std::vector<PauliString> out;
    if (n > kMaxQubits) {
        throw DimensionError("At most 64 qubits are supported.");
    }
    // Supports by weight, each in lexicographic order of its qubits.
    std::vector<uint64_t> supports;
    std::vector<uint32_t> pick;
    auto visit = [&](auto &&self, uint32_t next, uint32_t remaining) -> void {
        if (remaining == 0) {
            uint64_t mask = 0;
            for (uint32_t q : pick) {
                mask |= uint64_t{1} << q;
            }
            supports.push_back(mask);
            return;
        }
        for (uint32_t q = next; q + remaining <= n; q++) {
            pick.push_back(q);
            self(self, q + 1, remaining - 1);
            pick.pop_back();
        }
    };
    for (uint32_t w = 0; w <= std::min(w_max, n); w++) {
        visit(visit, 0, w);
    }
    for (uint64_t s : supports) {
        Region region = Region::from_mask(s);
        uint32_t w = static_cast<uint32_t>(region.size());
        uint64_t letters = 1;
        for (uint32_t j = 0; j < w; j++) {
            letters *= 3;
        }
        for (uint64_t code = 0; code < letters; code++) {
            PauliString p(n, 0, 0);
            uint64_t c = code;
            for (uint32_t j = 0; j < w; j++) {
                uint8_t site = static_cast<uint8_t>(c % 3 + 1);
                c /= 3;
                p.xs |= uint64_t{site & 1u} << region[j];
                p.zs |= uint64_t{(site >> 1) & 1u} << region[j];
            }
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double default_marginal_floor(size_t region_size) {
    return 1e-6 * std::pow(4.0, -static_cast<double>(region_size));
}

MarginalTable project_marginal(Region region, std::vector<double> raw, double floor) {
    if (raw.size() != table_size(region.size())) {
        throw DimensionError("Marginal table does not cover the region.");
    }
    if (!(floor >= 0) || floor * static_cast<double>(raw.size()) >= 1) {
        throw ConfigError("Marginal floor must satisfy 0 <= floor < 4^{-|A|}.");
    }
    // Clip at the floor, then rescale only the mass above it, so the floor
    // survives renormalization and untouched tables stay untouched.
    double excess = 0;
    for (double &v : raw) {
        v = std::max(v, floor);
        excess += v - floor;
    }
    double budget = 1 - floor * static_cast<double>(raw.size());
    for (double &v : raw) {
        v = excess > 0 ? floor + (v - floor) * (budget / excess) : 1 / static_cast<double>(raw.size());
    }
    return MarginalTable{std::move(region), std::move(raw), floor};
}

MarginalTable marginal_from_alphas(const Region &region, uint32_t n, const AlphaTable &table, double floor) {
    auto raw = raw_marginal_from_alphas(region, n, [&](const PauliString &q) {
        if (q.is_identity()) {
            return 1.0;
        }
        auto it = table.find(q);
        if (it == table.end()) {
            throw EstimationError("No eigenvalue estimate for " + q.str() + ".");
        }
        return it->second.alpha_hat;
    });
    return project_marginal(region, std::move(raw), floor);
}

namespace {

constexpr std::string_view kAlphaMagic = "# pauli-mrf alpha table";
constexpr std::string_view kMarginalMagic = "# pauli-mrf marginal table";

std::string join_flags(const std::vector<std::string> &flags) {
    if (flags.empty()) {
        return "-";
    }
    std::string out;
    for (size_t i = 0; i < flags.size(); i++) {
        out += (i ? "," : "") + flags[i];
    }
    return out;
}

std::string next_line(std::istream &in, std::string_view what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("File ended before " + std::string(what) + ".");
    }
    return line;
}

}  // namespace

void write_alpha_table(const AlphaTable &table, std::ostream &out) {
    out << kAlphaMagic << "\n";
    out << "version 1\n";
    out << "entries " << table.size() << "\n";
    for (const auto &[p, est] : table) {
        out << p.str() << ' ' << format_double(est.alpha_hat) << ' ' << format_double(est.std_error) << ' '
            << format_double(est.c_hat) << ' ' << join_flags(est.flags) << ' ' << est.m_groups;
        for (const auto &[k, v] : est.per_k_means) {
            out << ' ' << k << ':' << format_double(v);
        }
        out << '\n';
    }
}

AlphaTable read_alpha_table(std::istream &in) {
    if (next_line(in, "header") != kAlphaMagic) {
        throw ParseError("Not an alpha table.");
    }
    if (next_line(in, "version") != "version 1") {
        throw ParseError("Unsupported alpha table version.");
    }
    std::string line = next_line(in, "entry count");
    if (line.rfind("entries ", 0) != 0) {
        throw ParseError("Expected 'entries', found '" + line + "'.");
    }
    size_t count = std::stoull(line.substr(8));
    AlphaTable table;
    for (size_t i = 0; i < count; i++) {
        std::istringstream fields(next_line(in, "all entries"));
        std::string text, alpha, err, c, flags;
        uint32_t m = 1;
        if (!(fields >> text >> alpha >> err >> c >> flags >> m)) {
            throw ParseError("Alpha table entry " + std::to_string(i) + " is incomplete.");
        }
        AlphaEstimate est;
        est.pauli = PauliString::from_text(text);
        est.alpha_hat = parse_double(alpha);
        est.std_error = parse_double(err);
        est.c_hat = parse_double(c);
        est.m_groups = m;
        if (flags != "-") {
            std::stringstream fs(flags);
            std::string f;
            while (std::getline(fs, f, ',')) {
                est.flags.push_back(f);
            }
        }
        std::string kv;
        while (fields >> kv) {
            size_t colon = kv.find(':');
            if (colon == std::string::npos) {
                throw ParseError("Bad decay point '" + kv + "'.");
            }
            est.per_k_means[static_cast<uint32_t>(std::stoul(kv.substr(0, colon)))] = parse_double(kv.substr(colon + 1));
        }
        table[est.pauli] = std::move(est);
    }
    return table;
}

void write_marginal_table(const MarginalTable &table, std::ostream &out) {
    out << kMarginalMagic << "\n";
    out << "region";
    for (uint32_t q : table.region) {
        out << ' ' << q;
    }
    out << "\nfloor " << format_double(table.floor) << "\n";
    uint32_t m = static_cast<uint32_t>(table.region.size());
    for (uint64_t i = 0; i < table.probs.size(); i++) {
        out << PauliString::from_index(m, i).str() << ' ' << format_double(table.probs[i]) << '\n';
    }
}

MarginalTable read_marginal_table(std::istream &in) {
    if (next_line(in, "header") != kMarginalMagic) {
        throw ParseError("Not a marginal table.");
    }
    std::istringstream region_line(next_line(in, "region"));
    std::string key;
    region_line >> key;
    if (key != "region") {
        throw ParseError("Expected 'region'.");
    }
    std::vector<uint32_t> qubits;
    uint32_t q;
    while (region_line >> q) {
        qubits.push_back(q);
    }
    MarginalTable table;
    table.region = Region(qubits);
    std::string floor_line = next_line(in, "floor");
    if (floor_line.rfind("floor ", 0) != 0) {
        throw ParseError("Expected 'floor'.");
    }
    table.floor = parse_double(floor_line.substr(6));
    table.probs.assign(table_size(qubits.size()), 0);
    for (size_t i = 0; i < table.probs.size(); i++) {
        std::istringstream fields(next_line(in, "all entries"));
        std::string text, value;
        if (!(fields >> text >> value)) {
            throw ParseError("Marginal entry " + std::to_string(i) + " is incomplete.");
        }
        PauliString p = PauliString::from_text(text);
        if (p.num_qubits != qubits.size()) {
            throw ParseError("Marginal entry '" + text + "' does not match the region.");
        }
        table.probs[p.index()] = parse_double(value);
    }
    return table;
}

}  // namespace pauli_mrf
