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

#include "qxeb/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qxeb/rng.hpp"

namespace qxeb {

int Circuit::count_two_qubit_gates() const {
    int k = 0;
    for (const auto& c : cycles) k += static_cast<int>(c.pairs.size());
    return k;
}

std::vector<std::pair<int, Unitary2>> cycle_single_ops(const Circuit& c, int cycle) {
    std::vector<std::pair<int, Unitary2>> out;
    const auto& singles = cycle == c.num_cycles() ? c.half_cycle : c.cycles.at(cycle).singles;
    for (const auto& s : singles) out.push_back({s.qubit, single_qubit_matrix(s.axis)});
    for (const auto& ins : c.insertions) {
        if (ins.cycle != cycle) continue;
        Unitary2 u = ins.kind == 'R' ? rz_matrix(ins.angle) : pauli_matrix(ins.kind);
        out.push_back({ins.qubit, u});
    }
    return out;
}

int Circuit::count_single_qubit_gates() const {
    int k = static_cast<int>(half_cycle.size());
    for (const auto& c : cycles) k += static_cast<int>(c.singles.size());
    return k;
}

void PairParamTable::set(int a, int b, FsimParams p) {
    entries_.push_back({{std::min(a, b), std::max(a, b)}, p});
}

FsimParams PairParamTable::get(int a, int b) const {
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    for (const auto& [k, p] : entries_)
        if (k == key) return p;
    return uniform_;
}

PairParamTable PairParamTable::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PairParamTable t;
    if (j.contains("default")) {
        const auto& d = j["default"];
        t.uniform_ = {d.value("theta", M_PI / 2), d.value("phi", M_PI / 6), d.value("dp", 0.0),
                      d.value("dm", 0.0), d.value("dmoff", 0.0)};
    }
    if (j.contains("pairs"))
        for (const auto& e : j["pairs"])
            t.set(e.at("a").get<int>(), e.at("b").get<int>(),
                  {e.at("theta").get<double>(), e.at("phi").get<double>(), e.value("dp", 0.0),
                   e.value("dm", 0.0), e.value("dmoff", 0.0)});
    return t;
}

Circuit generate_circuit(const CircuitSpec& spec, const QubitLayout& layout,
                         const PairParamTable& params) {
    if (spec.n < 1 || spec.n > layout.size())
        throw std::invalid_argument("circuit spec: n exceeds layout size");
    if (spec.m < 0) throw std::invalid_argument("circuit spec: negative depth");
    if (spec.sequence.empty()) throw std::invalid_argument("circuit spec: empty pattern sequence");
    for (char p : spec.sequence)
        if (p < 'A' || p > 'H') throw std::invalid_argument("circuit spec: bad pattern id");
    Circuit out;
    out.spec = spec;
    out.spec.layout_id = layout.id;

    Rng rng(spec.seed);
    const int full = layout.size();
    std::vector<int> prev(full, -1);

    for (int cyc = 0; cyc <= spec.m; ++cyc) {
        std::vector<SingleGate> singles;
        for (int q = 0; q < full; ++q) {
            std::uint64_t v = rng.next_u64();
            int g;
            if (prev[q] < 0) {
                g = static_cast<int>(v % 3);
            } else {
                int choice = static_cast<int>(v % 2);
                g = 0;
                for (int k = 0, seen = 0; k < 3; ++k) {
                    if (k == prev[q]) continue;
                    if (seen++ == choice) {
                        g = k;
                        break;
                    }
                }
            }
            prev[q] = g;
            if (q < spec.n) singles.push_back({q, static_cast<Axis>(g)});
        }
        if (cyc == spec.m) {
            out.half_cycle = std::move(singles);
            break;
        }
        Cycle cycle;
        cycle.singles = std::move(singles);
        char pattern = spec.sequence[cyc % spec.sequence.size()];
        auto cs = layout.pattern_couplers(pattern, spec.n);
        std::sort(cs.begin(), cs.end(), [](const Coupler& x, const Coupler& y) {
            return std::min(x.a, x.b) < std::min(y.a, y.b);
        });
        for (const auto& c : cs) cycle.pairs.push_back({c.a, c.b, params.get(c.a, c.b)});
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

namespace {

std::vector<char> side_mask(int n, const std::vector<int>& partition_a) {
    std::vector<char> side(n, 0);
    for (int q : partition_a) {
        if (q < 0 || q >= n) throw std::invalid_argument("partition qubit out of range");
        side[q] = 1;
    }
    return side;
}

}  // namespace

int count_cross_gates(const Circuit& circuit, const std::vector<int>& partition_a) {
    auto side = side_mask(circuit.n(), partition_a);
    int k = 0;
    for (const auto& c : circuit.cycles)
        for (const auto& g : c.pairs)
            if (side[g.a] != side[g.b]) ++k;
    return k;
}

Circuit elide_gates(const Circuit& circuit, const std::vector<int>& partition_a, int k) {
    int total = count_cross_gates(circuit, partition_a);
    if (k < 0 || k > total) throw std::invalid_argument("elide count exceeds cross-gate count");
    auto side = side_mask(circuit.n(), partition_a);
    Circuit out = circuit;
    out.spec.variant = (k == total) ? Variant::Patch : Variant::Elided;
    out.spec.elided_k = k;
    int removed = 0;
    for (auto& cyc : out.cycles) {
        // Pairs are already ordered by ascending min qubit index within a cycle.
        std::vector<PairGate> kept;
        for (const auto& g : cyc.pairs) {
            if (removed < k && side[g.a] != side[g.b]) {
                ++removed;
                continue;
            }
            kept.push_back(g);
        }
        cyc.pairs = std::move(kept);
        if (removed == k) continue;
    }
    return out;
}

Circuit make_patch(const Circuit& circuit, const std::vector<int>& partition_a) {
    Circuit out = elide_gates(circuit, partition_a, count_cross_gates(circuit, partition_a));
    out.spec.variant = Variant::Patch;
    out.spec.elided_k = 0;
    return out;
}

namespace {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Full: return "full";
        case Variant::Elided: return "elided";
        case Variant::Patch: return "patch";
    }
    return "?";
}

Variant variant_from_name(const std::string& s) {
    if (s == "full") return Variant::Full;
    if (s == "elided") return Variant::Elided;
    if (s == "patch") return Variant::Patch;
    throw std::invalid_argument("unknown circuit variant: " + s);
}

nlohmann::json singles_json(const std::vector<SingleGate>& singles) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : singles) arr.push_back({{"q", g.qubit}, {"axis", axis_name(g.axis)}});
    return arr;
}

std::vector<SingleGate> singles_from(const nlohmann::json& arr) {
    std::vector<SingleGate> out;
    for (const auto& g : arr)
        out.push_back({g.at("q").get<int>(), axis_from_name(g.at("axis").get<std::string>())});
    return out;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["version"] = 1;
    j["spec"] = {{"n", c.spec.n},
                 {"m", c.spec.m},
                 {"seed", c.spec.seed},
                 {"sequence", c.spec.sequence},
                 {"variant", variant_name(c.spec.variant)}};
    if (c.spec.variant == Variant::Elided) j["spec"]["k"] = c.spec.elided_k;
    j["layout_id"] = c.spec.layout_id;
    j["cycles"] = nlohmann::json::array();
    for (const auto& cyc : c.cycles) {
        nlohmann::json jc;
        jc["singles"] = singles_json(cyc.singles);
        jc["pairs"] = nlohmann::json::array();
        for (const auto& g : cyc.pairs)
            jc["pairs"].push_back({{"a", g.a},
                                   {"b", g.b},
                                   {"theta", g.params.theta},
                                   {"phi", g.params.phi},
                                   {"dp", g.params.delta_plus},
                                   {"dm", g.params.delta_minus},
                                   {"dmoff", g.params.delta_minus_off}});
        j["cycles"].push_back(jc);
    }
    j["half_cycle"] = singles_json(c.half_cycle);
    if (!c.insertions.empty()) {
        j["insertions"] = nlohmann::json::array();
        for (const auto& ins : c.insertions)
            j["insertions"].push_back({{"cycle", ins.cycle},
                                       {"q", ins.qubit},
                                       {"kind", std::string(1, ins.kind)},
                                       {"angle", ins.angle}});
    }
    return j.dump();
}

Circuit circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Circuit c;
    const auto& s = j.at("spec");
    c.spec.n = s.at("n").get<int>();
    c.spec.m = s.at("m").get<int>();
    c.spec.seed = s.at("seed").get<std::uint64_t>();
    c.spec.sequence = s.at("sequence").get<std::string>();
    c.spec.variant = variant_from_name(s.at("variant").get<std::string>());
    c.spec.elided_k = s.value("k", 0);
    c.spec.layout_id = j.value("layout_id", "");
    for (const auto& jc : j.at("cycles")) {
        Cycle cyc;
        cyc.singles = singles_from(jc.at("singles"));
        for (const auto& g : jc.at("pairs"))
            cyc.pairs.push_back({g.at("a").get<int>(),
                                 g.at("b").get<int>(),
                                 {g.at("theta").get<double>(), g.at("phi").get<double>(),
                                  g.value("dp", 0.0), g.value("dm", 0.0), g.value("dmoff", 0.0)}});
        c.cycles.push_back(std::move(cyc));
    }
    c.half_cycle = singles_from(j.at("half_cycle"));
    if (j.contains("insertions"))
        for (const auto& ins : j.at("insertions"))
            c.insertions.push_back({ins.at("cycle").get<int>(), ins.at("q").get<int>(),
                                    ins.at("kind").get<std::string>().at(0),
                                    ins.value("angle", 0.0)});
    return c;
}

}  // namespace qxeb
