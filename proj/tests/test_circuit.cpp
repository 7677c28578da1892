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

#include <doctest.h>

#include <map>
#include <set>

#include "qxeb/circuit.hpp"
#include "qxeb/layout.hpp"

using namespace qxeb;

namespace {

const QubitLayout& syc() {
    static QubitLayout l = sycamore53_layout();
    return l;
}

}  // namespace

TEST_CASE("supremacy circuit gate counts at n=53 m=20") {
    CircuitSpec spec{53, 20, 0, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, syc());
    CHECK(c.count_single_qubit_gates() == 1113);
    CHECK(c.count_two_qubit_gates() == 430);
    CHECK(count_cross_gates(c, syc().default_partition_a) == 35);
}

TEST_CASE("anti-repetition and per-cycle structure") {
    CircuitSpec spec{20, 14, 99, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, rect_layout(4, 5));
    REQUIRE(c.num_cycles() == 14);
    REQUIRE(c.half_cycle.size() == 20);
    std::vector<Axis> prev(20);
    for (int cyc = 0; cyc <= 14; ++cyc) {
        const auto& singles = cyc == 14 ? c.half_cycle : c.cycles[cyc].singles;
        REQUIRE(singles.size() == 20);  // every qubit, every cycle
        std::set<int> seen;
        for (const auto& s : singles) {
            CHECK(seen.insert(s.qubit).second);
            if (cyc > 0) CHECK(s.axis != prev[s.qubit]);
            prev[s.qubit] = s.axis;
        }
    }
    // A qubit appears in at most one two-qubit gate per cycle.
    for (const auto& cyc : c.cycles) {
        std::set<int> used;
        for (const auto& p : cyc.pairs) {
            CHECK(used.insert(p.a).second);
            CHECK(used.insert(p.b).second);
        }
    }
}

TEST_CASE("seed stability across n and m") {
    // Same seed: identical single-qubit gates on shared qubits and cycles.
    CircuitSpec small{12, 14, 7, "ABCDCDAB", Variant::Full, 0, ""};
    CircuitSpec large{14, 16, 7, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit cs = generate_circuit(small, syc());
    Circuit cl = generate_circuit(large, syc());
    for (int cyc = 0; cyc < 14; ++cyc)
        for (int q = 0; q < 12; ++q)
            CHECK(cs.cycles[cyc].singles[q].axis == cl.cycles[cyc].singles[q].axis);
}

TEST_CASE("determinism: byte-identical serialization") {
    CircuitSpec spec{16, 12, 3141, "EFGH", Variant::Full, 0, ""};
    Circuit a = generate_circuit(spec, rect_layout(2, 8));
    Circuit b = generate_circuit(spec, rect_layout(2, 8));
    CHECK(circuit_to_json(a) == circuit_to_json(b));
}

TEST_CASE("pattern coverage: ABCDCDAB uses every coupler twice per 8 cycles") {
    CircuitSpec spec{53, 8, 5, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, syc());
    std::map<std::pair<int, int>, int> uses;
    for (const auto& cyc : c.cycles)
        for (const auto& p : cyc.pairs) ++uses[{p.a, p.b}];
    CHECK(uses.size() == 86);
    for (const auto& [k, v] : uses) CHECK(v == 2);
}

TEST_CASE("elision removes the earliest cross gates") {
    CircuitSpec spec{53, 20, 0, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, syc());
    const auto& part = syc().default_partition_a;

    Circuit unchanged = elide_gates(c, part, 0);
    CHECK(unchanged.count_two_qubit_gates() == 430);

    Circuit elided = elide_gates(c, part, 22);
    CHECK(count_cross_gates(elided, part) == 13);
    CHECK(elided.count_two_qubit_gates() == 408);

    // Removed gates are the earliest in time.
    std::vector<char> side(53, 0);
    for (int q : part) side[q] = 1;
    std::set<std::pair<int, int>> kept;
    for (int cyc = 0; cyc < elided.num_cycles(); ++cyc)
        for (const auto& p : elided.cycles[cyc].pairs) kept.insert({cyc, p.a});
    int removed_seen = 0, last_removed = -1, first_kept = 100;
    for (int cyc = 0; cyc < c.num_cycles(); ++cyc)
        for (const auto& p : c.cycles[cyc].pairs) {
            if (side[p.a] == side[p.b]) continue;
            if (!kept.count({cyc, p.a})) {
                ++removed_seen;
                last_removed = std::max(last_removed, cyc);
            } else {
                first_kept = std::min(first_kept, cyc);
            }
        }
    CHECK(removed_seen == 22);
    CHECK(last_removed <= first_kept);

    CHECK_THROWS(elide_gates(c, part, 36));
}

TEST_CASE("patch removes every cross gate and is idempotent") {
    CircuitSpec spec{53, 20, 0, "ABCDCDAB", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, syc());
    const auto& part = syc().default_partition_a;
    Circuit patch = make_patch(c, part);
    CHECK(count_cross_gates(patch, part) == 0);
    CHECK(patch.count_two_qubit_gates() == 395);
    CHECK(circuit_to_json(make_patch(patch, part)) == circuit_to_json(patch));
    // Full elision = patch.
    Circuit all_elided = elide_gates(c, part, 35);
    CHECK(all_elided.count_two_qubit_gates() == patch.count_two_qubit_gates());
}

TEST_CASE("circuit JSON round trip") {
    CircuitSpec spec{12, 10, 42, "EFGH", Variant::Full, 0, ""};
    Circuit c = generate_circuit(spec, rect_layout(3, 4));
    c.insertions.push_back({3, 5, 'Z', 0.0});
    c.insertions.push_back({10, 1, 'R', 0.25});
    Circuit back = circuit_from_json(circuit_to_json(c));
    CHECK(circuit_to_json(back) == circuit_to_json(c));
}

TEST_CASE("per-pair parameter table") {
    PairParamTable t;
    t.set(3, 1, {1.5, 0.5, 0.1, 0.0, 0.0});
    CHECK(t.get(1, 3).theta == doctest::Approx(1.5));
    CHECK(t.get(0, 1).theta == doctest::Approx(M_PI / 2));

    auto t2 = PairParamTable::from_json(
        R"({"default": {"theta": 1.0, "phi": 0.2},
            "pairs": [{"a": 0, "b": 1, "theta": 1.6, "phi": 0.6, "dp": 0.01}]})");
    CHECK(t2.get(0, 1).theta == doctest::Approx(1.6));
    CHECK(t2.get(2, 3).theta == doctest::Approx(1.0));
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS(generate_circuit({100, 10, 0, "ABCDCDAB", Variant::Full, 0, ""}, syc()));
    CHECK_THROWS(generate_circuit({10, 10, 0, "", Variant::Full, 0, ""}, syc()));
    CHECK_THROWS(generate_circuit({10, 10, 0, "ABCZ", Variant::Full, 0, ""}, syc()));
}
