// Copyright 2026 The qxeb Authors
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

#pragma once

#include <cstdint>
#include <utility>

namespace qxeb {

/// splitmix64 step. Bit-exact on every platform; the only randomness
/// primitive used for circuit generation and sampling.
constexpr std::pair<std::uint64_t, std::uint64_t> prng_next(std::uint64_t state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return {z, state};
}

/// Stream wrapper around prng_next.
class Rng {
  public:
    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next_u64() {
        auto [v, s] = prng_next(state_);
        state_ = s;
        return v;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection-free modulo is fine here:
    /// bounds in this codebase are tiny (2, 3, 2^n), bias is < 2^-60.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    /// Derives an independent stream for a work unit (shot, resample, path).
    Rng fork(std::uint64_t index) const {
        auto [v, s] = prng_next(state_ ^ (0x632BE59BD9B4E019ULL * (index + 1)));
        (void)s;
        return Rng(v);
    }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

}  // namespace qxeb
