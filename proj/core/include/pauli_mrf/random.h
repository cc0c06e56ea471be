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

#ifndef PAULI_MRF_RANDOM_H
#define PAULI_MRF_RANDOM_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pauli_mrf {

using Rng = std::mt19937_64;

/// Named sub-streams of a master seed. No two stages share one.
enum class StreamTag : uint64_t {
    kModel = 1,
    kShots = 2,
    kMcmc = 3,
    kTest = 99,
};

/// Stateless 64-bit mixer (splitmix64 finalizer) used to derive stream seeds.
constexpr uint64_t mix64(uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

/// Seed for the stream addressed by (master, path...). Pure function of its
/// inputs, so the stream of e.g. shot j in group k does not depend on which
/// thread produces it or in what order.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(master);
    for (uint64_t p : path) {
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline Rng derive_stream(uint64_t master, std::initializer_list<uint64_t> path) {
    return Rng(derive_seed(master, path));
}

inline Rng derive_stream(uint64_t master, StreamTag tag) {
    return derive_stream(master, {static_cast<uint64_t>(tag)});
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). Platform independent, unlike
/// std::uniform_int_distribution.
inline uint32_t uniform_below(Rng &rng, uint32_t bound) {
    uint64_t threshold = (uint64_t{0} - bound) % bound;
    while (true) {
        uint64_t r = rng();
        unsigned __int128 product = static_cast<unsigned __int128>(r) * bound;
        if (static_cast<uint64_t>(product) >= threshold) {
            return static_cast<uint32_t>(product >> 64);
        }
    }
}

}  // namespace pauli_mrf

#endif
