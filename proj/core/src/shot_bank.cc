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

#include "pauli_mrf/shot_bank.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "pauli_mrf/clifford.h"
#include "pauli_mrf/errors.h"

namespace pauli_mrf {

std::vector<uint32_t> default_k_grid(double p0, double alpha_min, uint32_t k_cap) {
    double k_max = 2;
    if (p0 < 1 && alpha_min < 1) {
        k_max = std::max(2.0, std::ceil(2 * std::log(1 / (1 - p0)) / (1 - alpha_min)));
    }
    k_max = std::min<double>(k_max, std::max<uint32_t>(k_cap, 2));
    std::vector<uint32_t> grid;
    for (uint32_t k = 1; k <= k_max; k *= 2) {
        grid.push_back(k);
    }
    return grid;
}

ShotBank::ShotBank(uint32_t n, uint64_t seed, SpamModel spam, std::vector<ScheduleEntry> schedule)
    : num_qubits_(n),
      seed_(seed),
      clifford_ordering_(kCliffordOrderingVersion),
      spam_(std::move(spam)),
      schedule_(std::move(schedule)) {
    if (n == 0 || n > kMaxQubits) {
        throw DimensionError("Shot bank qubit count must be in 1..64.");
    }
    if (spam_.num_qubits() != n) {
        throw DimensionError("SPAM model and shot bank disagree on qubit count.");
    }
    std::set<uint32_t> seen;
    for (const auto &e : schedule_) {
        if (e.k == 0) {
            throw ConfigError("Repetition counts must be at least 1.");
        }
        if (!seen.insert(e.k).second) {
            throw ConfigError("Repetition count " + std::to_string(e.k) + " appears twice in the schedule.");
        }
    }
}

uint64_t ShotBank::planned_size() const {
    uint64_t total = 0;
    for (const auto &e : schedule_) {
        total += e.count;
    }
    return total;
}

bool ShotBank::has_group(uint32_t k) const {
    return std::any_of(schedule_.begin(), schedule_.end(), [&](const ScheduleEntry &e) { return e.k == k; });
}

std::pair<size_t, size_t> ShotBank::group_range(uint32_t k) const {
    size_t offset = 0;
    for (const auto &e : schedule_) {
        if (e.k == k) {
            return {offset, std::min<size_t>(offset + e.count, size())};
        }
        offset += e.count;
    }
    throw ConfigError("Shot bank has no group with k = " + std::to_string(k) + ".");
}

ShotView ShotBank::view(size_t i) const {
    return ShotView(std::span<const uint8_t>(cliffords_).subspan(i * num_qubits_, num_qubits_),
                    PauliString(num_qubits_, qin_x_[i], qin_z_[i]), PauliString(num_qubits_, qout_x_[i], qout_z_[i]),
                    ks_[i], outcomes_[i]);
}

ShotRecord ShotBank::record(size_t i) const {
    ShotView v = view(i);
    return ShotRecord{std::vector<uint8_t>(v.clifford_ids.begin(), v.clifford_ids.end()), v.q_in, v.q_out, v.k,
                      v.outcome};
}

void ShotBank::reserve(size_t count) {
    cliffords_.reserve(count * num_qubits_);
    for (auto *col : {&qin_x_, &qin_z_, &qout_x_, &qout_z_, &outcomes_}) {
        col->reserve(count);
    }
    ks_.reserve(count);
}

void ShotBank::resize(size_t count) {
    cliffords_.resize(count * num_qubits_);
    for (auto *col : {&qin_x_, &qin_z_, &qout_x_, &qout_z_, &outcomes_}) {
        col->resize(count);
    }
    ks_.resize(count);
}

void ShotBank::set(size_t i, const ShotRecord &r) {
    if (r.clifford_ids.size() != num_qubits_) {
        throw DimensionError("Shot record has the wrong number of Clifford ids.");
    }
    std::copy(r.clifford_ids.begin(), r.clifford_ids.end(), cliffords_.begin() + i * num_qubits_);
    qin_x_[i] = r.q_in.xs;
    qin_z_[i] = r.q_in.zs;
    qout_x_[i] = r.q_out.xs;
    qout_z_[i] = r.q_out.zs;
    ks_[i] = r.k;
    outcomes_[i] = r.outcome;
}

void ShotBank::set_fields(size_t i, const PauliString &q_in, const PauliString &q_out, uint32_t k, uint64_t outcome) {
    qin_x_[i] = q_in.xs;
    qin_z_[i] = q_in.zs;
    qout_x_[i] = q_out.xs;
    qout_z_[i] = q_out.zs;
    ks_[i] = k;
    outcomes_[i] = outcome;
}

void ShotBank::append(const ShotRecord &r) {
    size_t i = size();
    resize(i + 1);
    set(i, r);
}

void ShotBank::validate() const {
    if (size() != planned_size()) {
        throw ParseError("Shot bank holds " + std::to_string(size()) + " records but its schedule declares " +
                         std::to_string(planned_size()) + ".");
    }
    size_t i = 0;
    for (const auto &e : schedule_) {
        for (uint64_t j = 0; j < e.count; j++, i++) {
            if (ks_[i] != e.k) {
                throw ParseError("Record " + std::to_string(i) + " has k = " + std::to_string(ks_[i]) +
                                 " but the schedule places it in group k = " + std::to_string(e.k) + ".");
            }
        }
    }
    for (uint8_t c : cliffords_) {
        if (c >= kNumCliffords) {
            throw ParseError("Clifford id " + std::to_string(c) + " is out of range.");
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ParseError("Not a number: '" + std::string(text) + "'.");
    }
    return v;
}

namespace {

constexpr std::string_view kMagic = "# pauli-mrf shot bank";

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <typename T>
T parse_uint(std::string_view text) {
    T v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ParseError("Not an unsigned integer: '" + std::string(text) + "'.");
    }
    return v;
}

std::string format_channels(const std::vector<SiteChannel> &channels) {
    std::string out;
    for (size_t i = 0; i < channels.size(); i++) {
        if (i) {
            out += ';';
        }
        for (size_t a = 0; a < 4; a++) {
            if (a) {
                out += ',';
            }
            out += format_double(channels[i][a]);
        }
    }
    return out;
}

std::vector<SiteChannel> parse_channels(const std::string &text, uint32_t n) {
    std::vector<SiteChannel> out;
    for (const auto &site : split(text, ';')) {
        auto parts = split(site, ',');
        if (parts.size() != 4) {
            throw ParseError("SPAM factor '" + site + "' needs four probabilities.");
        }
        SiteChannel c;
        for (size_t a = 0; a < 4; a++) {
            c[a] = parse_double(parts[a]);
        }
        out.push_back(c);
    }
    if (out.size() != n) {
        throw ParseError("SPAM line covers " + std::to_string(out.size()) + " qubits, expected " + std::to_string(n) +
                         ".");
    }
    return out;
}

// Reads "key value" and checks the key.
std::string expect_line(std::istream &in, std::string_view key) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("Shot bank ended before '" + std::string(key) + "'.");
    }
    if (line.rfind(key, 0) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
        throw ParseError("Expected '" + std::string(key) + "', found '" + line + "'.");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
}

}  // namespace

void write_shot_bank(const ShotBank &bank, std::ostream &out) {
    uint32_t n = bank.num_qubits();
    out << kMagic << "\n";
    out << "version 1\n";
    out << "n " << n << "\n";
    out << "seed " << bank.seed() << "\n";
    out << "clifford_ordering " << bank.clifford_ordering() << "\n";
    out << "spam_prep " << format_channels(bank.spam().prep) << "\n";
    out << "spam_meas " << format_channels(bank.spam().meas) << "\n";
    out << "schedule";
    for (const auto &e : bank.schedule()) {
        out << " " << e.k << ":" << e.count;
    }
    out << "\n";
    out << "records " << bank.size() << "\n";
    std::string line;
    for (size_t i = 0; i < bank.size(); i++) {
        ShotView v = bank.view(i);
        line.clear();
        for (uint32_t q = 0; q < n; q++) {
            if (q) {
                line += ',';
            }
            line += std::to_string(v.clifford_ids[q]);
        }
        line += ' ';
        line += v.q_in.str();
        line += ' ';
        line += v.q_out.str();
        line += ' ';
        line += std::to_string(v.k);
        line += ' ';
        for (uint32_t q = 0; q < n; q++) {
            line += ((v.outcome >> q) & 1) ? '1' : '0';
        }
        line += '\n';
        out << line;
    }
}

ShotBank read_shot_bank(std::istream &in, bool header_only) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic) {
        throw ParseError("Not a shot bank (missing header line).");
    }
    if (expect_line(in, "version") != "1") {
        throw ParseError("Unsupported shot bank version.");
    }
    uint32_t n = parse_uint<uint32_t>(expect_line(in, "n"));
    uint64_t seed = parse_uint<uint64_t>(expect_line(in, "seed"));
    std::string ordering = expect_line(in, "clifford_ordering");
    if (ordering != kCliffordOrderingVersion) {
        throw ParseError("Shot bank uses Clifford ordering '" + ordering + "', this build uses '" +
                         std::string(kCliffordOrderingVersion) + "'.");
    }
    SpamModel spam;
    spam.prep = parse_channels(expect_line(in, "spam_prep"), n);
    spam.meas = parse_channels(expect_line(in, "spam_meas"), n);
    std::vector<ScheduleEntry> schedule;
    for (const auto &item : split(expect_line(in, "schedule"), ' ')) {
        if (item.empty()) {
            continue;
        }
        auto kv = split(item, ':');
        if (kv.size() != 2) {
            throw ParseError("Bad schedule entry '" + item + "'.");
        }
        schedule.push_back({parse_uint<uint32_t>(kv[0]), parse_uint<uint64_t>(kv[1])});
    }
    uint64_t count = parse_uint<uint64_t>(expect_line(in, "records"));

    ShotBank bank(n, seed, std::move(spam), std::move(schedule));
    if (header_only) {
        return bank;
    }
    bank.resize(count);
    ShotRecord r;
    for (uint64_t i = 0; i < count; i++) {
        if (!std::getline(in, line)) {
            throw ParseError("Shot bank ended after " + std::to_string(i) + " of " + std::to_string(count) +
                             " records.");
        }
        auto fields = split(line, ' ');
        if (fields.size() != 5) {
            throw ParseError("Record " + std::to_string(i) + " needs five fields.");
        }
        auto ids = split(fields[0], ',');
        if (ids.size() != n || fields[1].size() != n || fields[2].size() != n || fields[4].size() != n) {
            throw ParseError("Record " + std::to_string(i) + " does not cover " + std::to_string(n) + " qubits.");
        }
        r.clifford_ids.resize(n);
        for (uint32_t q = 0; q < n; q++) {
            r.clifford_ids[q] = parse_uint<uint8_t>(ids[q]);
        }
        r.q_in = PauliString::from_text(fields[1]);
        r.q_out = PauliString::from_text(fields[2]);
        r.k = parse_uint<uint32_t>(fields[3]);
        r.outcome = 0;
        for (uint32_t q = 0; q < n; q++) {
            char c = fields[4][q];
            if (c != '0' && c != '1') {
                throw ParseError("Record " + std::to_string(i) + " has a non-binary outcome.");
            }
            r.outcome |= uint64_t{c == '1'} << q;
        }
        bank.set(i, r);
    }
    bank.validate();
    return bank;
}

void save_shot_bank(const ShotBank &bank, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("Cannot write '" + path + "'.");
    }
    write_shot_bank(bank, out);
}

ShotBank load_shot_bank(const std::string &path, bool header_only) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("Cannot open '" + path + "'.");
    }
    return read_shot_bank(in, header_only);
}

}  // namespace pauli_mrf
