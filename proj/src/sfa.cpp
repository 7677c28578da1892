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

#include "qxeb/sfa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qxeb/rng.hpp"
#include "qxeb/statevec.hpp"

namespace qxeb {

namespace {

using std::complex;
using namespace std::complex_literals;

// ---------------------------------------------------------------------------
// Program construction
// ---------------------------------------------------------------------------

struct HalfOp {
    int q1 = -1, q2 = -1;      // local qubit indices; q2 < 0 for single-qubit ops
    Eigen::MatrixXcd m;        // 2x2 or 4x4 (basis |q2 q1>)
};

struct BranchSideOps {
    std::vector<int> qubits;                // local, ascending; size 1 or 2
    std::vector<Eigen::MatrixXcd> per_branch;
};

struct BranchPoint {
    int radix = 0;
    BranchSideOps side[2];                  // [partition 0], [partition 1]
    std::vector<double> weights;            // normalized, sums to 1
};

struct HalfProgram {
    // Events: segments of plain ops separated by branch markers.
    // segments[k] runs before branch point k; segments[G] is the tail.
    std::vector<std::vector<HalfOp>> segments;
};

struct SfaPlan {
    Cut cut;
    std::vector<int> local_index;           // global qubit -> local index
    std::vector<int> side_qubits[2];        // local -> global
    std::vector<BranchPoint> branches;
    HalfProgram program[2];
    std::vector<int> output_bit_map;        // final bit i of reported q <- circuit qubit map
    BigInt total_paths = 1;
};

Eigen::MatrixXcd embed_pair_8x8(const Unitary4& u, int hi_pos, int lo_pos) {
    // u given in basis |hi lo>; embed into 3 bits at the given bit positions.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
    for (int r = 0; r < 8; ++r) {
        int r_hi = (r >> hi_pos) & 1, r_lo = (r >> lo_pos) & 1;
        int rest_r = r & ~((1 << hi_pos) | (1 << lo_pos));
        for (int ch = 0; ch < 2; ++ch)
            for (int cl = 0; cl < 2; ++cl) {
                int c = rest_r | (ch << hi_pos) | (cl << lo_pos);
                out(r, c) = u(2 * r_hi + r_lo, 2 * ch + cl);
            }
    }
    return out;
}

Eigen::MatrixXcd embed_single_8x8(const Unitary2& u, int pos) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
    for (int r = 0; r < 8; ++r) {
        int rb = (r >> pos) & 1;
        int rest = r & ~(1 << pos);
        for (int cb = 0; cb < 2; ++cb) out(r, rest | (cb << pos)) = u(rb, cb);
    }
    return out;
}

// Diagonal remainder of a boundary-simplified theta = pi/2 gate:
// fsim(pi/2, phi) = SWAP . D = D . SWAP with D = diag(1, -i, -i, e^{-i phi}).
Unitary4 boundary_diag(double phi) {
    Unitary4 d = Unitary4::Zero();
    d(0, 0) = 1;
    d(1, 1) = -1i;
    d(2, 2) = -1i;
    d(3, 3) = std::exp(-1i * phi);
    return d;
}

struct WorkingCircuit {
    Circuit circuit;
    std::vector<int> output_bit_map;             // reported bit i <- amplitude bit map
    std::set<std::pair<int, int>> replaced;      // (cycle, pair_index) -> diagonal remainder
};

// Applies the swap-absorption rewrites for plan rank-2 gates.
WorkingCircuit simplify_boundary_gates(const Circuit& circuit, const Cut& cut, bool enabled) {
    WorkingCircuit w;
    w.circuit = circuit;
    w.output_bit_map.resize(circuit.n());
    std::iota(w.output_bit_map.begin(), w.output_bit_map.end(), 0);
    if (!enabled) return w;

    auto pairs_touching_before = [&](int cycle, int q) {
        for (int c = 0; c < cycle; ++c)
            for (const auto& g : w.circuit.cycles[c].pairs)
                if (g.a == q || g.b == q) return true;
        return false;
    };
    auto pairs_touching_after = [&](int cycle, int q) {
        for (int c = cycle + 1; c < w.circuit.num_cycles(); ++c)
            for (const auto& g : w.circuit.cycles[c].pairs)
                if (g.a == q || g.b == q) return true;
        return false;
    };
    auto swap_singles = [&](int a, int b, int cycle_lo, int cycle_hi, bool include_half) {
        auto relabel = [&](int& q) {
            if (q == a)
                q = b;
            else if (q == b)
                q = a;
        };
        for (int c = cycle_lo; c <= cycle_hi && c < w.circuit.num_cycles(); ++c)
            for (auto& s : w.circuit.cycles[c].singles) relabel(s.qubit);
        if (include_half)
            for (auto& s : w.circuit.half_cycle) relabel(s.qubit);
        for (auto& ins : w.circuit.insertions) {
            bool in_range = (ins.cycle >= cycle_lo && ins.cycle <= cycle_hi &&
                             ins.cycle < w.circuit.num_cycles()) ||
                            (include_half && ins.cycle == w.circuit.num_cycles());
            if (in_range) relabel(ins.qubit);
        }
    };

    for (const auto& g : cut.cross) {
        if (g.schmidt_rank != 2) continue;
        const auto& pg = w.circuit.cycles[g.cycle].pairs[g.pair_index];
        bool before = pairs_touching_before(g.cycle, pg.a) || pairs_touching_before(g.cycle, pg.b);
        bool after = pairs_touching_after(g.cycle, pg.a) || pairs_touching_after(g.cycle, pg.b);
        if (before && after) continue;  // should not happen for rank-2 plans
        w.replaced.insert({g.cycle, g.pair_index});
        if (!after) {
            // Swap travels to the measurement: exchange later singles and
            // the output bit positions.
            swap_singles(pg.a, pg.b, g.cycle + 1, w.circuit.num_cycles(), true);
            std::swap(w.output_bit_map[pg.a], w.output_bit_map[pg.b]);
        } else {
            // Swap travels to the |0..0> input: exchange earlier singles
            // (including this cycle's, which precede the pair layer).
            swap_singles(pg.a, pg.b, 0, g.cycle, false);
        }
    }
    return w;
}

std::vector<double> normalized_weights(const std::vector<double>& raw) {
    double s = std::accumulate(raw.begin(), raw.end(), 0.0);
    std::vector<double> out(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / s;
    return out;
}

SfaPlan build_plan(const Circuit& circuit, const QubitLayout& layout,
                   const std::vector<int>& partition_a, const SfaOptions& opt) {
    SfaPlan plan;
    plan.cut = plan_cut(circuit, layout, partition_a);
    const int n = circuit.n();

    plan.local_index.assign(n, -1);
    for (int q = 0; q < n; ++q) {
        int s = plan.cut.side[q];
        plan.local_index[q] = static_cast<int>(plan.side_qubits[s].size());
        plan.side_qubits[s].push_back(q);
    }

    WorkingCircuit wc = simplify_boundary_gates(circuit, plan.cut, opt.simplify_boundary);
    plan.output_bit_map = wc.output_bit_map;
    const Circuit& c = wc.circuit;

    // Wedge bookkeeping (only when fusing).
    std::map<std::pair<int, int>, int> wedge_first;   // (cycle, pair_index) of earlier member -> wedge id
    std::set<std::pair<int, int>> wedge_second;
    std::set<std::pair<int, int>> consumed_singles;   // (cycle, qubit) folded into a wedge op
    struct WedgeInfo {
        int id;
        const CrossGate* g1;
        const CrossGate* g2;
    };
    std::vector<WedgeInfo> wedges;
    if (opt.fuse_wedges) {
        for (size_t wi = 0; wi < plan.cut.wedges.size(); ++wi) {
            const CrossGate& g1 = plan.cut.cross[plan.cut.wedges[wi].first];
            const CrossGate& g2 = plan.cut.cross[plan.cut.wedges[wi].second];
            wedge_first[{g1.cycle, g1.pair_index}] = static_cast<int>(wi);
            wedge_second.insert({g2.cycle, g2.pair_index});
            wedges.push_back({static_cast<int>(wi), &g1, &g2});
            int shared = (g1.a == g2.a || g1.a == g2.b) ? g1.a : g1.b;
            int o1 = g1.a == shared ? g1.b : g1.a;
            int o2 = g2.a == shared ? g2.b : g2.a;
            for (int cyc = g1.cycle + 1; cyc <= g2.cycle; ++cyc)
                for (int q : {shared, o1, o2}) consumed_singles.insert({cyc, q});
        }
    }

    auto emit_single = [&](int qubit, const Unitary2& u) {
        int side = plan.cut.side[qubit];
        HalfOp op;
        op.q1 = plan.local_index[qubit];
        op.m = u;
        plan.program[side].segments.back().push_back(op);
    };
    auto start_segments = [&]() {
        plan.program[0].segments.emplace_back();
        plan.program[1].segments.emplace_back();
    };
    auto push_branch = [&](BranchPoint bp) {
        plan.branches.push_back(std::move(bp));
        start_segments();
        plan.total_paths *= plan.branches.back().radix;
    };

    auto cross_branch_point = [&](const PairGate& pg, bool simplified) {
        BranchPoint bp;
        int side_b = plan.cut.side[pg.b];
        int lb = plan.local_index[pg.b], la = plan.local_index[pg.a];
        bp.side[side_b].qubits = {lb};
        bp.side[1 - side_b].qubits = {la};
        if (simplified) {
            Unitary4 d = boundary_diag(pg.params.phi);
            // d = sum_k |k><k|_b ox diag(d_{k0}, d_{k1})_a
            for (int k = 0; k < 2; ++k) {
                Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(2, 2);
                proj(k, k) = 1;
                Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
                diag(0, 0) = d(2 * k + 0, 2 * k + 0);
                diag(1, 1) = d(2 * k + 1, 2 * k + 1);
                bp.side[side_b].per_branch.push_back(proj);
                bp.side[1 - side_b].per_branch.push_back(diag);
                bp.weights.push_back(0.5);
            }
            bp.radix = 2;
        } else {
            auto sd = schmidt_decompose(general_fsim_matrix(pg.params));
            std::vector<double> raw;
            for (int k = 0; k < 4; ++k) {
                double lam = sd.coefficients[k];
                double root = std::sqrt(std::max(0.0, lam));
                bp.side[side_b].per_branch.push_back(root * sd.left_ops[k]);
                bp.side[1 - side_b].per_branch.push_back(root * sd.right_ops[k]);
                raw.push_back(lam * lam);
            }
            bp.weights = normalized_weights(raw);
            bp.radix = 4;
        }
        return bp;
    };

    auto wedge_branch_point = [&](const WedgeInfo& w) {
        const Circuit& cc = c;
        const CrossGate& g1 = *w.g1;
        const CrossGate& g2 = *w.g2;
        int shared = (g1.a == g2.a || g1.a == g2.b) ? g1.a : g1.b;
        int o1 = g1.a == shared ? g1.b : g1.a;
        int o2 = g2.a == shared ? g2.b : g2.a;
        // Local 3-bit space: bit0 = shared, bit1 = min(o1,o2), bit2 = max(o1,o2).
        auto pos_of = [&](int q) {
            if (q == shared) return 0;
            return q == std::min(o1, o2) ? 1 : 2;
        };
        const PairGate& pg1 = cc.cycles[g1.cycle].pairs[g1.pair_index];
        const PairGate& pg2 = cc.cycles[g2.cycle].pairs[g2.pair_index];
        Eigen::MatrixXcd u = embed_pair_8x8(general_fsim_matrix(pg1.params), pos_of(pg1.b),
                                            pos_of(pg1.a));
        for (int cyc = g1.cycle + 1; cyc <= g2.cycle; ++cyc)
            for (const auto& [q, su] : cycle_single_ops(cc, cyc))
                if (q == shared || q == o1 || q == o2)
                    u = embed_single_8x8(su, pos_of(q)) * u;
        u = embed_pair_8x8(general_fsim_matrix(pg2.params), pos_of(pg2.b), pos_of(pg2.a)) * u;

        // Schmidt split {bit2, bit1} | {bit0}: M[(x_out, x_in), (s_out, s_in)].
        Eigen::MatrixXcd mm(16, 4);
        for (int xo = 0; xo < 4; ++xo)
            for (int xi = 0; xi < 4; ++xi)
                for (int so = 0; so < 2; ++so)
                    for (int si = 0; si < 2; ++si)
                        mm(4 * xo + xi, 2 * so + si) = u(2 * xo + so, 2 * xi + si);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mm, Eigen::ComputeFullU | Eigen::ComputeFullV);

        BranchPoint bp;
        int outer_side = plan.cut.side[o1];
        int lo_local = plan.local_index[std::min(o1, o2)];
        int hi_local = plan.local_index[std::max(o1, o2)];
        bp.side[outer_side].qubits = {lo_local, hi_local};
        bp.side[1 - outer_side].qubits = {plan.local_index[shared]};
        std::vector<double> raw;
        for (int k = 0; k < 4; ++k) {
            double sv = svd.singularValues()(k);
            double root = std::sqrt(std::max(0.0, sv));
            Eigen::MatrixXcd a(4, 4), b(2, 2);
            for (int xo = 0; xo < 4; ++xo)
                for (int xi = 0; xi < 4; ++xi) a(xo, xi) = svd.matrixU()(4 * xo + xi, k);
            for (int so = 0; so < 2; ++so)
                for (int si = 0; si < 2; ++si)
                    b(so, si) = std::conj(svd.matrixV()(2 * so + si, k));
            bp.side[outer_side].per_branch.push_back(root * a);
            bp.side[1 - outer_side].per_branch.push_back(root * b);
            raw.push_back(sv * sv);
        }
        bp.weights = normalized_weights(raw);
        bp.radix = 4;
        return bp;
    };

    start_segments();
    for (int cyc = 0; cyc < c.num_cycles(); ++cyc) {
        for (const auto& [q, u] : cycle_single_ops(c, cyc))
            if (!consumed_singles.count({cyc, q})) emit_single(q, u);
        // Same-side gates of the layer first: a fused wedge op starting in
        // this cycle reaches into later cycles, and simultaneous disjoint
        // gates must land before it.
        for (const PairGate& pg : c.cycles[cyc].pairs) {
            int sa = plan.cut.side[pg.a], sb = plan.cut.side[pg.b];
            if (sa != sb) continue;
            HalfOp op;
            op.q1 = plan.local_index[pg.a];
            op.q2 = plan.local_index[pg.b];
            op.m = general_fsim_matrix(pg.params);
            plan.program[sa].segments.back().push_back(op);
        }
        for (int pi = 0; pi < static_cast<int>(c.cycles[cyc].pairs.size()); ++pi) {
            const PairGate& pg = c.cycles[cyc].pairs[pi];
            if (plan.cut.side[pg.a] == plan.cut.side[pg.b]) continue;
            if (opt.fuse_wedges) {
                auto itw = wedge_first.find({cyc, pi});
                if (itw != wedge_first.end()) {
                    push_branch(wedge_branch_point(wedges[itw->second]));
                    continue;
                }
                if (wedge_second.count({cyc, pi})) continue;  // folded into its wedge
            }
            push_branch(cross_branch_point(pg, wc.replaced.count({cyc, pi}) > 0));
        }
    }
    for (const auto& [q, u] : cycle_single_ops(c, c.num_cycles())) emit_single(q, u);
    return plan;
}

// ---------------------------------------------------------------------------
// Evolution
// ---------------------------------------------------------------------------

template <typename Real>
struct HalfState {
    std::vector<std::complex<Real>> amps;
};

template <typename Real>
void apply_ops(std::vector<std::complex<Real>>& amps, int /*n*/, const std::vector<HalfOp>& ops) {
    for (const auto& op : ops) {
        if (op.q2 < 0)
            apply_single_inplace(amps, Unitary2(op.m), op.q1);
        else
            apply_two_inplace(amps, Unitary4(op.m), std::min(op.q1, op.q2),
                              std::max(op.q1, op.q2));
    }
}

template <typename Real>
void apply_branch_op(std::vector<std::complex<Real>>& amps, int /*n*/, const BranchSideOps& ops,
                     int branch) {
    const Eigen::MatrixXcd& m = ops.per_branch[branch];
    if (ops.qubits.size() == 1)
        apply_single_inplace(amps, Unitary2(m), ops.qubits[0]);
    else
        apply_two_inplace(amps, Unitary4(m), ops.qubits[0], ops.qubits[1]);
}

struct PathSelector {
    BigInt used;                           // index order: [0, used)
    const std::vector<BigInt>* explicit_sorted = nullptr;

    bool any_in(const BigInt& lo, const BigInt& hi) const {  // [lo, hi)
        if (!explicit_sorted) return lo < used;
        auto it = std::lower_bound(explicit_sorted->begin(), explicit_sorted->end(), lo);
        return it != explicit_sorted->end() && *it < hi;
    }
    bool contains(const BigInt& idx) const {
        if (!explicit_sorted) return idx < used;
        return std::binary_search(explicit_sorted->begin(), explicit_sorted->end(), idx);
    }
};

struct KahanAcc {
    complex<double> sum{0, 0};
    complex<double> comp{0, 0};
    void add(complex<double> v) {
        complex<double> y = v - comp;
        complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

template <typename Real>
struct Engine {
    const SfaPlan& plan;
    const SfaOptions& opt;
    int n_side[2];
    std::vector<std::pair<std::uint64_t, std::uint64_t>> split_queries;  // (idxA0, idxA1)
    std::vector<KahanAcc> acc;
    double covered_weight = 0;
    BigInt paths_done = 0;
    PathSelector select;
    std::vector<BigInt> suffix_total;  // product of radices from level k to end

    // checkpoints per level: state for both sides
    std::vector<std::vector<complex<Real>>> ck0, ck1;

    Engine(const SfaPlan& p, const SfaOptions& o) : plan(p), opt(o) {
        n_side[0] = static_cast<int>(plan.side_qubits[0].size());
        n_side[1] = static_cast<int>(plan.side_qubits[1].size());
        int levels = static_cast<int>(plan.branches.size());
        suffix_total.assign(levels + 1, 1);
        for (int k = levels - 1; k >= 0; --k)
            suffix_total[k] = suffix_total[k + 1] * plan.branches[k].radix;
    }

    void run(const std::vector<std::uint64_t>& queries) {
        acc.assign(queries.size(), KahanAcc{});
        split_queries.clear();
        for (auto q : queries) {
            std::uint64_t i0 = 0, i1 = 0;
            for (int local = 0; local < n_side[0]; ++local) {
                int bit = plan.output_bit_map[plan.side_qubits[0][local]];
                i0 |= ((q >> bit) & 1ULL) << local;
            }
            for (int local = 0; local < n_side[1]; ++local) {
                int bit = plan.output_bit_map[plan.side_qubits[1][local]];
                i1 |= ((q >> bit) & 1ULL) << local;
            }
            split_queries.push_back({i0, i1});
        }
        int levels = static_cast<int>(plan.branches.size());
        int p = opt.prefix_len < 0 ? levels : std::min(opt.prefix_len, levels);
        ck0.assign(p + 1, {});
        ck1.assign(p + 1, {});
        ck0[0].assign(std::size_t{1} << n_side[0], complex<Real>{0, 0});
        ck1[0].assign(std::size_t{1} << n_side[1], complex<Real>{0, 0});
        ck0[0][0] = complex<Real>{1, 0};
        ck1[0][0] = complex<Real>{1, 0};
        apply_ops(ck0[0], n_side[0], plan.program[0].segments[0]);
        apply_ops(ck1[0], n_side[1], plan.program[1].segments[0]);
        descend(0, p, BigInt(0), 1.0);
    }

    void descend(int level, int prefix, BigInt base, double weight) {
        int levels = static_cast<int>(plan.branches.size());
        if (level == prefix) {
            enumerate_suffix(level, base, weight);
            return;
        }
        const BranchPoint& bp = plan.branches[level];
        for (int k = 0; k < bp.radix; ++k) {
            BigInt lo = base + k * suffix_total[level + 1];
            BigInt hi = lo + suffix_total[level + 1];
            if (!select.any_in(lo, hi)) continue;
            if (bp.weights[k] <= 0) continue;
            ck0[level + 1] = ck0[level];
            ck1[level + 1] = ck1[level];
            apply_branch_op(ck0[level + 1], n_side[0], bp.side[0], k);
            apply_branch_op(ck1[level + 1], n_side[1], bp.side[1], k);
            apply_ops(ck0[level + 1], n_side[0], plan.program[0].segments[level + 1]);
            apply_ops(ck1[level + 1], n_side[1], plan.program[1].segments[level + 1]);
            if (level + 1 == levels)
                finish_leaf(level + 1, weight * bp.weights[k]);
            else
                descend(level + 1, prefix, lo, weight * bp.weights[k]);
        }
    }

    // Replays levels [start, G) from the checkpoint at `start` for every
    // selected suffix, in ascending path order.
    void enumerate_suffix(int start, BigInt base, double weight) {
        int levels = static_cast<int>(plan.branches.size());
        if (start == levels) {
            finish_leaf_states(ck0[start], ck1[start], weight);
            return;
        }
        std::vector<int> digits(levels - start, 0);
        std::vector<complex<Real>> s0, s1;
        BigInt count = suffix_total[start];
        for (BigInt s = 0; s < count; ++s) {
            BigInt idx = base + s;
            if (select.contains(idx)) {
                // decode digits
                BigInt rem = s;
                double w = weight;
                bool zero = false;
                for (int k = start; k < levels; ++k) {
                    BigInt q = rem / suffix_total[k + 1];
                    digits[k - start] = q.convert_to<int>();
                    rem -= q * suffix_total[k + 1];
                    double bw = plan.branches[k].weights[digits[k - start]];
                    if (bw <= 0) zero = true;
                    w *= bw;
                }
                if (zero) {
                    paths_done += 1;
                    continue;
                }
                s0 = ck0[start];
                s1 = ck1[start];
                for (int k = start; k < levels; ++k) {
                    apply_branch_op(s0, n_side[0], plan.branches[k].side[0], digits[k - start]);
                    apply_branch_op(s1, n_side[1], plan.branches[k].side[1], digits[k - start]);
                    apply_ops(s0, n_side[0], plan.program[0].segments[k + 1]);
                    apply_ops(s1, n_side[1], plan.program[1].segments[k + 1]);
                }
                finish_leaf_states(s0, s1, w);
            }
        }
    }

    void finish_leaf(int level, double weight) {
        finish_leaf_states(ck0[level], ck1[level], weight);
    }

    void finish_leaf_states(const std::vector<complex<Real>>& s0,
                            const std::vector<complex<Real>>& s1, double weight) {
        for (std::size_t i = 0; i < split_queries.size(); ++i) {
            auto [i0, i1] = split_queries[i];
            complex<double> a0(s0[i0]), a1(s1[i1]);
            acc[i].add(a0 * a1);
        }
        covered_weight += weight;
        paths_done += 1;
    }
};

}  // namespace

SfaResult sfa_amplitudes(const Circuit& circuit, const QubitLayout& layout,
                         const std::vector<int>& partition_a,
                         const std::vector<std::uint64_t>& bitstrings, const SfaOptions& opt) {
    if (bitstrings.empty()) throw std::invalid_argument("sfa_amplitudes: no bitstrings given");
    if (!(opt.fraction > 0.0) || opt.fraction > 1.0)
        throw std::invalid_argument("sfa_amplitudes: fraction must be in (0, 1]");
    SfaPlan plan = build_plan(circuit, layout, partition_a, opt);
    int cap = opt.qubit_cap > 0 ? opt.qubit_cap : default_qubit_cap();
    for (int s : {0, 1})
        if (static_cast<int>(plan.side_qubits[s].size()) > cap)
            throw std::length_error("sfa: half size exceeds the memory cap");

    SfaResult res;
    res.total_paths = plan.total_paths;
    for (const auto& b : plan.branches) res.branch_radix.push_back(b.radix);
    res.wedge_count = static_cast<int>(plan.cut.wedges.size());

    // ceil(fraction * total)
    BigInt used = plan.total_paths;
    if (opt.fraction < 1.0) {
        BigInt scaled = BigInt(static_cast<long long>(std::ceil(
                            opt.fraction * 1e9))) * plan.total_paths;
        used = scaled / 1000000000;
        if (used * 1000000000 < scaled) used += 1;
        if (used == 0) used = 1;
        if (used > plan.total_paths) used = plan.total_paths;
    }
    res.paths_used = used;
    if (used > BigInt(opt.max_paths))
        throw std::length_error("sfa: path count " + used.str() + " exceeds the configured budget");

    PathOrdering ordering;
    PathSelector select;
    select.used = used;
    if (opt.order == PathOrder::Weight) {
        std::vector<std::vector<double>> bw;
        for (const auto& b : plan.branches) bw.push_back(b.weights);
        ordering = path_order_by_weight(bw, opt.fraction, opt.max_explicit_order);
        ordering.selected.resize(
            std::min<std::size_t>(ordering.selected.size(),
                                  static_cast<std::size_t>(opt.max_paths)));
        select.explicit_sorted = &ordering.selected;
        res.paths_used = BigInt(ordering.selected.size());
    }

    if (opt.single_precision) {
        Engine<float> eng(plan, opt);
        eng.select = select;
        eng.run(bitstrings);
        for (const auto& a : eng.acc) res.amplitudes.push_back(a.sum);
        res.implied_fidelity = eng.covered_weight;
    } else {
        Engine<double> eng(plan, opt);
        eng.select = select;
        eng.run(bitstrings);
        for (const auto& a : eng.acc) res.amplitudes.push_back(a.sum);
        res.implied_fidelity = eng.covered_weight;
    }
    return res;
}

SfaSampleResult sfa_sample(const Circuit& circuit, const QubitLayout& layout,
                           const std::vector<int>& partition_a, std::size_t n_s,
                           std::uint64_t rng_seed, const SfaOptions& opt, double ceiling) {
    const int n = circuit.n();
    const double d = std::pow(2.0, n);
    Rng rng(rng_seed);
    SfaSampleResult out;
    out.implied_fidelity = 1.0;
    std::size_t batch = std::max<std::size_t>(1024, static_cast<std::size_t>(n_s * ceiling / 4));
    const std::uint64_t mask = n >= 64 ? ~0ULL : ((1ULL << n) - 1);
    while (out.bitstrings.size() < n_s) {
        std::vector<std::uint64_t> cand(batch);
        for (auto& q : cand) q = rng.next_u64() & mask;
        SfaResult amps = sfa_amplitudes(circuit, layout, partition_a, cand, opt);
        out.implied_fidelity = amps.implied_fidelity;
        double norm = amps.implied_fidelity > 0 ? amps.implied_fidelity : 1.0;
        out.candidates_drawn += cand.size();
        for (std::size_t i = 0; i < cand.size() && out.bitstrings.size() < n_s; ++i) {
            double p = std::norm(amps.amplitudes[i]) / norm;
            double accept = p * d / ceiling;
            if (accept > 1.0) out.ceiling_exceeded = true;
            if (rng.next_double() < accept) out.bitstrings.push_back(cand[i]);
        }
    }
    return out;
}

PathOrdering path_order_by_weight(const std::vector<std::vector<double>>& branch_weights,
                                  double fraction, std::uint64_t max_explicit) {
    BigInt total = 1;
    for (const auto& w : branch_weights) total *= static_cast<int>(w.size());
    if (total > BigInt(max_explicit))
        throw std::length_error("path_order_by_weight: path space too large to materialize");
    std::uint64_t t = total.convert_to<std::uint64_t>();
    std::vector<std::pair<double, std::uint64_t>> table(t);
    std::vector<std::uint64_t> radix_suffix(branch_weights.size() + 1, 1);
    for (int k = static_cast<int>(branch_weights.size()) - 1; k >= 0; --k)
        radix_suffix[k] = radix_suffix[k + 1] * branch_weights[k].size();
    for (std::uint64_t idx = 0; idx < t; ++idx) {
        double w = 1.0;
        std::uint64_t rem = idx;
        for (std::size_t k = 0; k < branch_weights.size(); ++k) {
            std::uint64_t digit = rem / radix_suffix[k + 1];
            rem %= radix_suffix[k + 1];
            w *= branch_weights[k][digit];
        }
        table[idx] = {w, idx};
    }
    std::sort(table.begin(), table.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    PathOrdering ord;
    double covered = 0;
    for (const auto& [w, idx] : table) {
        if (covered >= fraction) break;
        covered += w;
        ord.selected.push_back(BigInt(idx));
    }
    std::sort(ord.selected.begin(), ord.selected.end());
    ord.s_count = BigInt(ord.selected.size());
    double ftotal = fraction * static_cast<double>(t);
    ord.speedup = ftotal / static_cast<double>(ord.selected.size());
    return ord;
}

double schmidt_truncation_speedup(int g, const std::array<double, 4>& lambdas, double fraction) {
    // Enumerate weight classes (a,b,c,d), a+b+c+d = g, weight lam^2 products,
    // multiplicity the multinomial coefficient.
    std::array<double, 4> w;
    for (int i = 0; i < 4; ++i) w[i] = lambdas[i] * lambdas[i];
    struct Cls {
        double log_weight;
        double log_count;
    };
    std::vector<Cls> classes;
    auto lg = [](double x) { return std::lgamma(x + 1.0); };
    for (int a = 0; a <= g; ++a)
        for (int b = 0; b <= g - a; ++b)
            for (int c = 0; c <= g - a - b; ++c) {
                int dd = g - a - b - c;
                double logw = a * std::log(w[0]) + b * std::log(w[1]) + c * std::log(w[2]) +
                              dd * std::log(w[3]);
                double logc = lg(g) - lg(a) - lg(b) - lg(c) - lg(dd);
                classes.push_back({logw, logc});
            }
    std::sort(classes.begin(), classes.end(),
              [](const Cls& x, const Cls& y) { return x.log_weight > y.log_weight; });
    const double log4g = g * std::log(4.0);
    double covered = 0, paths = 0;
    for (const auto& cl : classes) {
        double cw = std::exp(cl.log_count + cl.log_weight - log4g);
        double cnt = std::exp(cl.log_count);
        if (covered + cw >= fraction) {
            paths += cnt * (fraction - covered) / cw;
            covered = fraction;
            break;
        }
        covered += cw;
        paths += cnt;
    }
    return fraction * std::exp(log4g) / paths;
}

}  // namespace qxeb
