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
#include <vector>

#include "qxeb/circuit.hpp"

namespace qxeb {

/// Draws from r(x) = F * ideal(x) + (1-F)/2^n: with probability F an ideal
/// draw, otherwise a uniform bitstring. Deterministic per seed.
std::vector<std::uint64_t> depolarizing_sample(const std::vector<double>& ideal_probs, double f,
                                               std::size_t n_s, std::uint64_t rng_seed);

/// Error-insertion slot: immediately after the single-qubit gate on `qubit`
/// in `cycle`; cycle == m addresses the trailing half cycle.
struct ErrorPosition {
    int cycle = 0;
    int qubit = 0;
};

/// All insertion slots of a circuit, in time order.
std::vector<ErrorPosition> error_positions(const Circuit& c);

/// Inserts a Pauli gate after the addressed single-qubit gate. The inserted
/// gate is carried as an extra explicit single-qubit layer.
Circuit inject_pauli(const Circuit& c, int cycle, int qubit, char axis);

/// Inserts Rz(angle) after the addressed single-qubit gate.
Circuit inject_rz(const Circuit& c, int cycle, int qubit, double angle);

/// Classical readout channel: each bit flips independently, 0->1 with e_m0
/// and 1->0 with e_m1. The per-shot stream is derived from (seed, shot).
std::vector<std::uint64_t> apply_measurement_error(const std::vector<std::uint64_t>& bitstrings,
                                                   int n, double e_m0, double e_m1,
                                                   std::uint64_t rng_seed);

/// Probability that an n-bit result with |q'| ones reads out unchanged:
/// (1-e_m0)^(n-|q'|) (1-e_m1)^|q'|.
double measurement_success_probability(std::uint64_t bitstring, int n, double e_m0, double e_m1);

}  // namespace qxeb
