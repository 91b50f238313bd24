// Copyright 2026 The rmlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rmlab {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive well-separated child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Child seed for a (master, stream...) path. Sample k of iteration t gets
/// child_seed(master, {t, k}) so results do not depend on evaluation order.
inline std::uint64_t child_seed(std::uint64_t master,
                                std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix_seed(master);
    for (auto p : path) {
        s = mix_seed(s ^ mix_seed(p + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

} // namespace rmlab
