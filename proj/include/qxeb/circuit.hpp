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
#include <optional>
#include <string>
#include <vector>

#include "qxeb/gates.hpp"
#include "qxeb/layout.hpp"

namespace qxeb {

enum class Variant : std::uint8_t { Full, Elided, Patch };

struct CircuitSpec {
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    std::string sequence = "ABCDCDAB";
    Variant variant = Variant::Full;
    int elided_k = 0;  // meaningful for Variant::Elided
    std::string layout_id;
};

struct SingleGate {
    int qubit = 0;
    Axis axis = Axis::XHalf;
};

/// Two-qubit placement; a < b, matrix basis |q_b q_a> (qubit b = high bit).
struct PairGate {
    int a = 0;
    int b = 0;
    FsimParams params;
};

struct Cycle {
    std::vector<SingleGate> singles;
    std::vector<PairGate> pairs;
};

/// Extra single-qubit gate spliced in directly after the randomized
/// single-qubit gate on (cycle, qubit); cycle == m addresses the trailing
/// half cycle. kind is 'X', 'Y', 'Z' or 'R' (Rz by `angle`).
struct Insertion {
    int cycle = 0;
    int qubit = 0;
    char kind = 'Z';
    double angle = 0.0;
};

struct Circuit {
    CircuitSpec spec;
    std::vector<Cycle> cycles;
    std::vector<SingleGate> half_cycle;
    std::vector<Insertion> insertions;

    int n() const { return spec.n; }
    int num_cycles() const { return static_cast<int>(cycles.size()); }
    int count_two_qubit_gates() const;
    int count_single_qubit_gates() const;
};

/// The single-qubit operations of a cycle in application order: the
/// randomized layer first, then any insertions addressed to this cycle.
/// cycle == num_cycles() returns the trailing half cycle.
std::vector<std::pair<int, Unitary2>> cycle_single_ops(const Circuit& c, int cycle);

/// Per-pair two-qubit parameters; defaults to the ideal fsim(pi/2, pi/6).
class PairParamTable {
  public:
    PairParamTable() = default;
    explicit PairParamTable(FsimParams uniform) : uniform_(uniform) {}
    void set(int a, int b, FsimParams p);
    FsimParams get(int a, int b) const;

    static PairParamTable from_json(const std::string& text);

  private:
    FsimParams uniform_ = sycamore_params();
    std::vector<std::pair<std::pair<int, int>, FsimParams>> entries_;
};

/// Deterministic circuit generation.
///
/// Single-qubit gates consume one PRNG value per (cycle, layout qubit) in
/// cycle-major order over the full layout, so circuits sharing a seed apply
/// identical gates on shared qubits and cycles regardless of n and m. Cycle 0
/// draws uniformly from the three axes; later cycles (and the trailing half
/// cycle) draw uniformly from the two axes that differ from the previous
/// choice on that qubit.
Circuit generate_circuit(const CircuitSpec& spec, const QubitLayout& layout,
                         const PairParamTable& params = PairParamTable());

/// Removes the k earliest cross-partition two-qubit gates (ties broken by
/// ascending minimum qubit index within a cycle).
Circuit elide_gates(const Circuit& circuit, const std::vector<int>& partition_a, int k);

/// Removes every cross-partition two-qubit gate.
Circuit make_patch(const Circuit& circuit, const std::vector<int>& partition_a);

/// Number of two-qubit gates with exactly one endpoint in partition A.
int count_cross_gates(const Circuit& circuit, const std::vector<int>& partition_a);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace qxeb
