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

#include "qxeb/cut.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <json.hpp>

namespace qxeb {

std::vector<int> Cut::partition_a() const {
    std::vector<int> out;
    for (int q = 0; q < static_cast<int>(side.size()); ++q)
        if (side[q]) out.push_back(q);
    return out;
}

std::vector<int> Cut::partition_b() const {
    std::vector<int> out;
    for (int q = 0; q < static_cast<int>(side.size()); ++q)
        if (!side[q]) out.push_back(q);
    return out;
}

int Cut::n1() const { return static_cast<int>(partition_a().size()); }
int Cut::n2() const { return static_cast<int>(partition_b().size()); }

namespace {

void check_connected(const QubitLayout& layout, const std::vector<char>& side, int n, char which) {
    std::vector<int> members;
    for (int q = 0; q < n; ++q)
        if (side[q] == which) members.push_back(q);
    if (members.empty()) throw std::invalid_argument("cut: empty partition");
    if (members.size() == 1) return;
    std::vector<std::vector<int>> adj(n);
    for (const auto& c : layout.active_couplers(n)) {
        if (side[c.a] == which && side[c.b] == which) {
            adj[c.a].push_back(c.b);
            adj[c.b].push_back(c.a);
        }
    }
    std::vector<char> seen(n, 0);
    std::queue<int> bfs;
    bfs.push(members[0]);
    seen[members[0]] = 1;
    int reached = 0;
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        ++reached;
        for (int r : adj[q])
            if (!seen[r]) {
                seen[r] = 1;
                bfs.push(r);
            }
    }
    if (reached != static_cast<int>(members.size()))
        throw std::invalid_argument("cut: partition is disconnected on the coupler graph");
}

struct TimedPair {
    int cycle;
    int pair_index;
    const PairGate* gate;
};

std::vector<TimedPair> all_pairs(const Circuit& c) {
    std::vector<TimedPair> out;
    for (int cyc = 0; cyc < c.num_cycles(); ++cyc)
        for (int i = 0; i < static_cast<int>(c.cycles[cyc].pairs.size()); ++i)
            out.push_back({cyc, i, &c.cycles[cyc].pairs[i]});
    return out;
}

bool touches(const PairGate& g, int q) { return g.a == q || g.b == q; }

}  // namespace

Cut plan_cut(const Circuit& circuit, const QubitLayout& layout,
             const std::vector<int>& partition_a) {
    const int n = circuit.n();
    Cut cut;
    cut.side.assign(n, 0);
    for (int q : partition_a) {
        if (q < 0 || q >= n) throw std::invalid_argument("cut: partition qubit out of range");
        cut.side[q] = 1;
    }
    check_connected(layout, cut.side, n, 1);
    check_connected(layout, cut.side, n, 0);

    auto pairs = all_pairs(circuit);
    for (const auto& tp : pairs)
        if (cut.side[tp.gate->a] != cut.side[tp.gate->b]) {
            CrossGate g;
            g.cycle = tp.cycle;
            g.pair_index = tp.pair_index;
            g.a = tp.gate->a;
            g.b = tp.gate->b;
            cut.cross.push_back(g);
        }

    // Wedge detection: greedy in time order. A candidate partner is the next
    // cross gate sharing exactly one qubit; the pair is a wedge only if no
    // two-qubit gate in a strictly intermediate cycle touches any of the three
    // involved qubits (same-cycle gates are disjoint and commute around).
    for (int i = 0; i < static_cast<int>(cut.cross.size()); ++i) {
        if (cut.cross[i].wedge >= 0) continue;
        for (int j = i + 1; j < static_cast<int>(cut.cross.size()); ++j) {
            if (cut.cross[j].wedge >= 0) continue;
            const auto& gi = cut.cross[i];
            const auto& gj = cut.cross[j];
            int shared = 0;
            for (int q : {gi.a, gi.b}) shared += (q == gj.a || q == gj.b);
            if (shared != 1) continue;
            bool blocked = false;
            for (const auto& tp : pairs) {
                if (tp.cycle <= gi.cycle || tp.cycle >= gj.cycle) continue;
                for (int q : {gi.a, gi.b, gj.a, gj.b})
                    if (touches(*tp.gate, q)) blocked = true;
                if (blocked) break;
            }
            if (blocked) continue;
            int id = static_cast<int>(cut.wedges.size());
            cut.wedges.push_back({i, j});
            cut.cross[i].wedge = id;
            cut.cross[j].wedge = id;
            break;
        }
    }

    // Schmidt ranks. Generic fsim cross gates have rank 4. A cross gate in the
    // first (last) two-qubit layer of the circuit whose qubits see no earlier
    // (later) two-qubit gate can be reduced to a controlled phase of rank 2 by
    // absorbing its swap into the circuit boundary; this needs theta = pi/2
    // exactly and does not apply inside wedges.
    for (auto& g : cut.cross) {
        g.schmidt_rank = 4;
        if (g.wedge >= 0) continue;
        const PairGate& pg = circuit.cycles[g.cycle].pairs[g.pair_index];
        if (std::abs(pg.params.theta - M_PI / 2) > 1e-12) continue;
        bool before = false, after = false;
        for (const auto& tp : pairs) {
            if (tp.cycle < g.cycle && (touches(*tp.gate, g.a) || touches(*tp.gate, g.b)))
                before = true;
            if (tp.cycle > g.cycle && (touches(*tp.gate, g.a) || touches(*tp.gate, g.b)))
                after = true;
        }
        if (!before || !after) g.schmidt_rank = 2;
    }
    return cut;
}

Cut plan_default_cut(const Circuit& circuit, const QubitLayout& layout) {
    return plan_cut(circuit, layout, layout.default_partition_for(circuit.n()));
}

std::vector<std::pair<int, int>> find_wedges(const Circuit& circuit, const QubitLayout& layout,
                                             const std::vector<int>& partition_a) {
    return plan_cut(circuit, layout, partition_a).wedges;
}

BigInt count_paths(const Circuit& circuit, const Cut& cut, bool fuse_wedges) {
    (void)circuit;
    BigInt total = 1;
    for (const auto& g : cut.cross)
        if (!(fuse_wedges && g.wedge >= 0)) total *= g.schmidt_rank;
    if (fuse_wedges) {
        for (size_t i = 0; i < cut.wedges.size(); ++i) total *= 4;
    }
    return total;
}

std::string pathspace_report_json(const Circuit& circuit, const Cut& cut) {
    nlohmann::json j;
    j["n1"] = cut.n1();
    j["n2"] = cut.n2();
    j["cross_gates"] = cut.cross.size();
    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& g : cut.cross)
        ranks.push_back({{"cycle", g.cycle}, {"a", g.a}, {"b", g.b}, {"rank", g.schmidt_rank},
                         {"wedge", g.wedge}});
    j["ranks"] = ranks;
    j["wedges"] = cut.wedges.size();
    j["total_paths"] = count_paths(circuit, cut, false).str();
    j["total_paths_fused"] = count_paths(circuit, cut, true).str();
    j["prefix_len"] = cut.cross.size() / 2;  // suggested checkpoint depth
    return j.dump(2);
}

}  // namespace qxeb
