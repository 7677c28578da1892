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

#include "qxeb/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qxeb/rng.hpp"
#include "qxeb/statevec.hpp"

namespace qxeb {

std::vector<std::uint64_t> depolarizing_sample(const std::vector<double>& ideal_probs, double f,
                                               std::size_t n_s, std::uint64_t rng_seed) {
    if (f < 0 || f > 1) throw std::invalid_argument("depolarizing_sample: F must be in [0, 1]");
    double total = 0;
    for (double p : ideal_probs) total += p;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("depolarizing_sample: distribution is not normalized");
    std::vector<double> cdf(ideal_probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < ideal_probs.size(); ++i) {
        acc += ideal_probs[i];
        cdf[i] = acc;
    }
    Rng rng(rng_seed);
    std::vector<std::uint64_t> out;
    out.reserve(n_s);
    const std::uint64_t d = ideal_probs.size();
    for (std::size_t k = 0; k < n_s; ++k) {
        if (rng.next_double() < f) {
            double u = rng.next_double() * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
        } else {
            out.push_back(rng.next_below(d));
        }
    }
    return out;
}

std::vector<ErrorPosition> error_positions(const Circuit& c) {
    std::vector<ErrorPosition> out;
    for (int cyc = 0; cyc <= c.num_cycles(); ++cyc) {
        const auto& singles = cyc == c.num_cycles() ? c.half_cycle : c.cycles[cyc].singles;
        for (const auto& s : singles) out.push_back({cyc, s.qubit});
    }
    return out;
}

namespace {

void check_position(const Circuit& c, int cycle, int qubit) {
    if (cycle < 0 || cycle > c.num_cycles())
        throw std::invalid_argument("error position: cycle out of range");
    const auto& singles = cycle == c.num_cycles() ? c.half_cycle : c.cycles[cycle].singles;
    for (const auto& s : singles)
        if (s.qubit == qubit) return;
    throw std::invalid_argument("error position: no single-qubit gate at that slot");
}

}  // namespace

Circuit inject_pauli(const Circuit& c, int cycle, int qubit, char axis) {
    if (axis != 'X' && axis != 'Y' && axis != 'Z')
        throw std::invalid_argument("inject_pauli: axis must be X, Y or Z");
    check_position(c, cycle, qubit);
    Circuit out = c;
    out.insertions.push_back({cycle, qubit, axis, 0.0});
    return out;
}

Circuit inject_rz(const Circuit& c, int cycle, int qubit, double angle) {
    check_position(c, cycle, qubit);
    Circuit out = c;
    out.insertions.push_back({cycle, qubit, 'R', angle});
    return out;
}

std::vector<std::uint64_t> apply_measurement_error(const std::vector<std::uint64_t>& bitstrings,
                                                   int n, double e_m0, double e_m1,
                                                   std::uint64_t rng_seed) {
    if (e_m0 < 0 || e_m0 > 1 || e_m1 < 0 || e_m1 > 1)
        throw std::invalid_argument("apply_measurement_error: rates must be in [0, 1]");
    Rng base(rng_seed);
    std::vector<std::uint64_t> out;
    out.reserve(bitstrings.size());
    for (std::size_t shot = 0; shot < bitstrings.size(); ++shot) {
        Rng rng = base.fork(shot);
        std::uint64_t q = bitstrings[shot];
        std::uint64_t flipped = q;
        for (int b = 0; b < n; ++b) {
            bool one = (q >> b) & 1ULL;
            double rate = one ? e_m1 : e_m0;
            if (rng.next_double() < rate) flipped ^= (1ULL << b);
        }
        out.push_back(flipped);
    }
    return out;
}

double measurement_success_probability(std::uint64_t bitstring, int n, double e_m0, double e_m1) {
    int ones = 0;
    for (int b = 0; b < n; ++b) ones += (bitstring >> b) & 1ULL;
    return std::pow(1.0 - e_m0, n - ones) * std::pow(1.0 - e_m1, ones);
}

}  // namespace qxeb
