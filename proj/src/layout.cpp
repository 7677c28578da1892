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

#include "qxeb/layout.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qxeb {

namespace {

char supremacy_class(GridPos a, bool horizontal) {
    int p = (a.row + a.col) & 1;
    if (horizontal) return p == 1 ? 'A' : 'B';
    return p == 0 ? 'C' : 'D';
}

char verifiable_class(GridPos a, bool horizontal) {
    if (!horizontal) return a.row % 2 == 0 ? 'E' : 'G';
    return a.col % 2 == 1 ? 'F' : 'H';
}

void build_couplers(QubitLayout& l) {
    std::map<std::pair<int, int>, int> at;
    for (int i = 0; i < l.size(); ++i) at[{l.qubits[i].row, l.qubits[i].col}] = i;
    l.couplers.clear();
    for (int i = 0; i < l.size(); ++i) {
        GridPos q = l.qubits[i];
        auto right = at.find({q.row, q.col + 1});
        if (right != at.end()) {
            Coupler c{std::min(i, right->second), std::max(i, right->second), true,
                      supremacy_class(q, true), verifiable_class(q, true)};
            l.couplers.push_back(c);
        }
        auto down = at.find({q.row + 1, q.col});
        if (down != at.end()) {
            Coupler c{std::min(i, down->second), std::max(i, down->second), false,
                      supremacy_class(q, false), verifiable_class(q, false)};
            l.couplers.push_back(c);
        }
    }
}

}  // namespace

std::vector<Coupler> QubitLayout::active_couplers(int n) const {
    std::vector<Coupler> out;
    for (const auto& c : couplers)
        if (c.a < n && c.b < n) out.push_back(c);
    return out;
}

std::vector<Coupler> QubitLayout::pattern_couplers(char pattern, int n) const {
    std::vector<Coupler> out;
    for (const auto& c : couplers)
        if (c.a < n && c.b < n && (c.sup_class == pattern || c.ver_class == pattern))
            out.push_back(c);
    return out;
}

std::optional<int> QubitLayout::index_at(GridPos p) const {
    for (int i = 0; i < size(); ++i)
        if (qubits[i] == p) return i;
    return std::nullopt;
}

std::vector<int> QubitLayout::default_partition_for(int n) const {
    std::vector<int> out;
    for (int q : default_partition_a)
        if (q < n) out.push_back(q);
    return out;
}

void QubitLayout::validate() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& q : qubits)
        if (!seen.insert({q.row, q.col}).second)
            throw std::invalid_argument("layout: duplicate grid position");
    for (const auto& c : couplers) {
        if (c.a < 0 || c.b < 0 || c.a >= size() || c.b >= size() || c.a == c.b)
            throw std::invalid_argument("layout: coupler endpoints out of range");
        GridPos qa = qubits[c.a], qb = qubits[c.b];
        int dr = std::abs(qa.row - qb.row), dc = std::abs(qa.col - qb.col);
        if (dr + dc != 1) throw std::invalid_argument("layout: coupler is not nearest-neighbor");
        if (std::string("ABCD").find(c.sup_class) == std::string::npos ||
            std::string("EFGH").find(c.ver_class) == std::string::npos)
            throw std::invalid_argument("layout: bad pattern class tag");
    }
    // A-D and E-H must each partition the coupler set; classes are per-coupler
    // tags so disjointness is automatic, only coverage can fail (checked above).
    for (int q : default_partition_a)
        if (q < 0 || q >= size()) throw std::invalid_argument("layout: bad default partition");
}

QubitLayout sycamore53_layout() {
    // 54-site diamond, row -> [col_lo, col_hi]; site (6,7) is dead.
    static const int rows[10][2] = {{5, 6}, {4, 7}, {3, 8}, {2, 9}, {1, 9},
                                    {0, 8}, {1, 7}, {2, 6}, {3, 5}, {4, 4}};
    QubitLayout l;
    l.id = "sycamore53";
    for (int r = 0; r < 10; ++r)
        for (int c = rows[r][0]; c <= rows[r][1]; ++c)
            if (!(r == 6 && c == 7)) l.qubits.push_back({r, c});
    // Order along the long axis: primary key row+col, secondary col-row.
    std::sort(l.qubits.begin(), l.qubits.end(), [](GridPos a, GridPos b) {
        int ua = a.row + a.col, ub = b.row + b.col;
        if (ua != ub) return ua < ub;
        return a.col - a.row < b.col - b.row;
    });
    build_couplers(l);
    for (int i = 0; i < l.size(); ++i)
        if (l.qubits[i].col - l.qubits[i].row <= 0) l.default_partition_a.push_back(i);
    l.validate();
    return l;
}

QubitLayout rect_layout(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols > 64)
        throw std::invalid_argument("rect layout: bad dimensions");
    QubitLayout l;
    std::ostringstream id;
    id << "rect:" << rows << "x" << cols;  // the id doubles as a resolvable spec
    l.id = id.str();
    if (cols >= rows) {
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) l.qubits.push_back({r, c});
    } else {
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) l.qubits.push_back({r, c});
    }
    build_couplers(l);
    int half = l.size() / 2;
    for (int i = 0; i < half; ++i) l.default_partition_a.push_back(i);
    l.validate();
    return l;
}

QubitLayout resolve_layout(const std::string& spec) {
    if (spec == "sycamore53") return sycamore53_layout();
    if (spec.rfind("rect:", 0) == 0) {
        auto body = spec.substr(5);
        auto x = body.find('x');
        if (x == std::string::npos) throw std::invalid_argument("rect layout spec must be rect:RxC");
        return rect_layout(std::stoi(body.substr(0, x)), std::stoi(body.substr(x + 1)));
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open layout file: " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return layout_from_json(ss.str());
}

std::string layout_to_json(const QubitLayout& l) {
    nlohmann::json j;
    j["version"] = 1;
    j["id"] = l.id;
    for (const auto& q : l.qubits) j["qubits"].push_back({q.row, q.col});
    j["order"] = nlohmann::json::array();
    for (int i = 0; i < l.size(); ++i) j["order"].push_back(i);
    j["couplers"] = nlohmann::json::array();
    for (const auto& c : l.couplers) {
        nlohmann::json jc;
        jc["a"] = c.a;
        jc["b"] = c.b;
        jc["orientation"] = c.horizontal ? "h" : "v";
        jc["supremacy_class"] = std::string(1, c.sup_class);
        jc["verifiable_class"] = std::string(1, c.ver_class);
        j["couplers"].push_back(jc);
    }
    j["default_partition_a"] = l.default_partition_a;
    return j.dump(2);
}

QubitLayout layout_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    QubitLayout l;
    l.id = j.value("id", "custom");
    std::vector<GridPos> listed;
    for (const auto& q : j.at("qubits")) listed.push_back({q.at(0).get<int>(), q.at(1).get<int>()});
    std::vector<int> order(listed.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (j.contains("order")) order = j.at("order").get<std::vector<int>>();
    if (order.size() != listed.size()) throw std::invalid_argument("layout: order size mismatch");
    std::vector<int> pos(listed.size(), -1);  // listed index -> qubit index
    l.qubits.resize(listed.size());
    for (size_t i = 0; i < order.size(); ++i) {
        l.qubits[i] = listed[order[i]];
        pos[order[i]] = static_cast<int>(i);
    }
    for (const auto& jc : j.at("couplers")) {
        Coupler c;
        int a = pos[jc.at("a").get<int>()], b = pos[jc.at("b").get<int>()];
        c.a = std::min(a, b);
        c.b = std::max(a, b);
        c.horizontal = jc.at("orientation").get<std::string>() == "h";
        c.sup_class = jc.at("supremacy_class").get<std::string>().at(0);
        c.ver_class = jc.at("verifiable_class").get<std::string>().at(0);
        l.couplers.push_back(c);
    }
    if (j.contains("default_partition_a")) {
        for (int q : j.at("default_partition_a").get<std::vector<int>>())
            l.default_partition_a.push_back(pos[q]);
        std::sort(l.default_partition_a.begin(), l.default_partition_a.end());
    }
    l.validate();
    return l;
}

}  // namespace qxeb
