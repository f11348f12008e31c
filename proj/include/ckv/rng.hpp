/*
   Copyright 2026 The ckv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>

#include "ckv/errors.hpp"

namespace ckv {

/* Deterministic 64-bit generator (splitmix64).  The exact update and
   output functions are part of the reproducibility contract: the same
   seed yields the same stream on every platform, forever. */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /* Uniform draw from [0, bound) by rejection; bound >= 1. */
    std::uint64_t below(std::uint64_t bound) {
        check_input(bound >= 1, "below: bound must be positive");
        std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

/* One splitmix64 step evaluated at a fixed state: a bijective mixing
   function used to derive independent substream seeds. */
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/* Seed of the independent substream identified by (seed, salt).
   Search drivers salt with (degree << 32) | sample_index so that every
   sample is reproducible in isolation regardless of thread count. */
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt));
}

inline std::uint64_t sample_salt(std::uint32_t degree, std::uint32_t index) {
    return (static_cast<std::uint64_t>(degree) << 32) | index;
}

} // namespace ckv
