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

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "qxeb/circuit.hpp"
#include "qxeb/layout.hpp"

namespace qxeb {

using BigInt = boost::multiprecision::cpp_int;

/// One cross-partition two-qubit gate, in time order.
struct CrossGate {
    int cycle = 0;
    int pair_index = 0;  // index into circuit.cycles[cycle].pairs
    int a = 0, b = 0;    // qubit indices, a < b
    int schmidt_rank = 4;
    int wedge = -1;      // wedge id, or -1
};

struct Cut {
    std::vector<char> side;           // per-qubit: 1 = partition A
    std::vector<CrossGate> cross;     // time-ordered
    std::vector<std::pair<int, int>> wedges;  // indices into cross, (earlier, later)

    std::vector<int> partition_a() const;
    std::vector<int> partition_b() const;
    int n1() const;
    int n2() const;
};

/// Builds the cut bookkeeping for a circuit:
///  - cross gates listed in time order (cycle-major, gate order within a cycle),
///  - wedges: greedy left-to-right pairing of cross gates that share exactly one
///    qubit with no intervening two-qubit gate on any of the three involved
///    qubits (the pair then fuses into a three-qubit unitary of Schmidt rank 4),
///  - Schmidt ranks: 4 generically; 2 for boundary-layer gates with
///    theta = pi/2 exactly that are not wedge members and have no earlier
///    (resp. later) two-qubit gate on either qubit, where the swap part of the
///    gate can be absorbed into the circuit boundary leaving a controlled phase.
///
/// Throws std::invalid_argument if a partition is empty or disconnected on the
/// layout's coupler graph.
Cut plan_cut(const Circuit& circuit, const QubitLayout& layout,
             const std::vector<int>& partition_a);

/// plan_cut with the layout's default partition.
Cut plan_default_cut(const Circuit& circuit, const QubitLayout& layout);

/// Wedge list of plan_cut as (earlier gate, later gate) cross-list indices.
std::vector<std::pair<int, int>> find_wedges(const Circuit& circuit, const QubitLayout& layout,
                                             const std::vector<int>& partition_a);

/// Simulation-path count: product of cross-gate Schmidt ranks; with
/// fuse_wedges each wedge contributes a factor 4 in place of its members'
/// rank product.
BigInt count_paths(const Circuit& circuit, const Cut& cut, bool fuse_wedges);

std::string pathspace_report_json(const Circuit& circuit, const Cut& cut);

}  // namespace qxeb
