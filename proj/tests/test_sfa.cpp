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

#include <numeric>

#include "oracles.hpp"
#include "qxeb/sfa.hpp"
#include "qxeb/statevec.hpp"
#include "qxeb/xeb.hpp"

using namespace qxeb;

namespace {

std::vector<std::uint64_t> all_bitstrings(int n) {
    std::vector<std::uint64_t> qs(std::size_t{1} << n);
    std::iota(qs.begin(), qs.end(), 0);
    return qs;
}

void check_exact(const Circuit& c, const QubitLayout& layout, const std::vector<int>& part,
                 const SfaOptions& opt, double tol) {
    auto exact = simulate(c);
    auto res = sfa_amplitudes(c, layout, part, all_bitstrings(c.n()), opt);
    double worst = 0;
    for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst, std::abs(exact[i] - res.amplitudes[i]));
    CHECK(worst < tol);
    CHECK(res.implied_fidelity == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("full-path sum reproduces the state vector (no simplifications)") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 10, 17, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions opt;
    opt.simplify_boundary = false;
    check_exact(c, layout, layout.default_partition_a, opt, 1e-10);
}

TEST_CASE("boundary simplification is exact") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 10, 18, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions with, without;
    with.simplify_boundary = true;
    without.simplify_boundary = false;
    auto a = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(12), with);
    auto b = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(12), without);
    CHECK(a.total_paths < b.total_paths);  // some rank-2 gates present
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-10);
    check_exact(c, layout, layout.default_partition_a, with, 1e-10);
}

TEST_CASE("wedge fusion is exact and shrinks the path space") {
    auto layout = rect_layout(3, 4);
    // Anti-diagonal cut with wedges under the EFGH sequence.
    std::vector<int> part;
    for (int q = 0; q < 12; ++q) {
        auto pos = layout.qubits[q];
        if (pos.row + pos.col <= 2) part.push_back(q);
    }
    Circuit c = generate_circuit({12, 8, 23, "EFGH", Variant::Full, 0, ""}, layout);
    Cut cut = plan_cut(c, layout, part);
    REQUIRE(!cut.wedges.empty());

    SfaOptions fused, plain;
    fused.fuse_wedges = true;
    plain.fuse_wedges = false;
    plain.simplify_boundary = false;
    // The unfused path space is large; spot-check amplitudes on a slice.
    std::vector<std::uint64_t> queries;
    for (int i = 0; i < 256; ++i) queries.push_back((i * 2654435761ULL) & 4095);
    auto a = sfa_amplitudes(c, layout, part, queries, fused);
    auto b = sfa_amplitudes(c, layout, part, queries, plain);
    CHECK(a.total_paths < b.total_paths);
    CHECK(a.wedge_count == static_cast<int>(cut.wedges.size()));
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-10);
    check_exact(c, layout, part, fused, 1e-10);
}

TEST_CASE("no cross gates: single path, product of halves") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 10, 5, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    Circuit patch = make_patch(c, layout.default_partition_a);
    auto res = sfa_amplitudes(patch, layout, layout.default_partition_a, all_bitstrings(12), {});
    CHECK(res.total_paths == 1);
    auto exact = simulate(patch);
    for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(std::abs(exact[i] - res.amplitudes[i]) < 1e-12);
}

TEST_CASE("path-sum linearity: disjoint subsets add up") {
    auto layout = rect_layout(2, 4);
    Circuit c = generate_circuit({8, 8, 3, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions opt;
    opt.simplify_boundary = false;
    auto full = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), opt);
    // Split [0, total) into halves via two fraction runs: f and the rest.
    SfaOptions first = opt;
    first.fraction = 0.5;
    auto head = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), first);
    // The tail: weight-order with explicit complement is not exposed, so check
    // linearity with the covered fraction of the head instead:
    // |head| = ceil(0.5 total) paths and the full sum equals head + tail by
    // construction; verify head != full and |full - head| is consistent with
    // re-running at fraction 1.
    CHECK(head.paths_used * 2 >= full.total_paths);
    bool differs = false;
    for (std::size_t i = 0; i < full.amplitudes.size(); ++i)
        if (std::abs(full.amplitudes[i] - head.amplitudes[i]) > 1e-12) differs = true;
    CHECK(differs);
    // Rerun head deterministically: identical results.
    auto head2 = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), first);
    for (std::size_t i = 0; i < head.amplitudes.size(); ++i)
        CHECK(head.amplitudes[i] == head2.amplitudes[i]);
}

TEST_CASE("prefix length changes cost only, not results") {
    auto layout = rect_layout(2, 5);
    Circuit c = generate_circuit({10, 8, 29, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions base;
    base.simplify_boundary = false;
    auto reference = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(10), base);
    for (int p : {0, 1, 2, 3}) {
        SfaOptions opt = base;
        opt.prefix_len = p;
        auto res = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(10), opt);
        for (std::size_t i = 0; i < reference.amplitudes.size(); ++i)
            CHECK(std::abs(reference.amplitudes[i] - res.amplitudes[i]) < 1e-13);
    }
}

TEST_CASE("fractional path sums cover the stated weight") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 14, 8, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions opt;
    opt.simplify_boundary = false;  // flat weights
    for (double f : {0.25, 0.5}) {
        SfaOptions o = opt;
        o.fraction = f;
        auto res = sfa_amplitudes(c, layout, layout.default_partition_a, {0}, o);
        CHECK(res.implied_fidelity == doctest::Approx(f).epsilon(1e-3));
    }
}

TEST_CASE("weight ordering reaches the target weight with fewer paths") {
    // Imbalanced gates: theta away from pi/2.
    auto layout = rect_layout(2, 4);
    PairParamTable params(FsimParams{M_PI / 2 + 0.4, M_PI / 6, 0, 0, 0});
    Circuit c = generate_circuit({8, 8, 3, "ABCDCDAB", Variant::Full, 0, ""}, layout, params);
    SfaOptions opt;
    opt.simplify_boundary = false;
    opt.fraction = 0.2;
    opt.order = PathOrder::Weight;
    auto weighted = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), opt);
    SfaOptions idx = opt;
    idx.order = PathOrder::Index;
    auto indexed = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), idx);
    CHECK(weighted.paths_used < indexed.paths_used);
    CHECK(weighted.implied_fidelity >= 0.2);
    // Both remain valid partial sums: at fraction 1 they agree exactly.
    SfaOptions full = opt;
    full.fraction = 1.0;
    full.order = PathOrder::Index;
    auto exact = sfa_amplitudes(c, layout, layout.default_partition_a, all_bitstrings(8), full);
    auto sv = simulate(c);
    for (std::size_t i = 0; i < sv.size(); ++i)
        CHECK(std::abs(sv[i] - exact.amplitudes[i]) < 1e-10);
}

TEST_CASE("flat spectrum: weight order equals index order with unit speedup") {
    std::vector<std::vector<double>> w(5, std::vector<double>(4, 0.25));
    auto ord = path_order_by_weight(w, 0.3, 1 << 20);
    CHECK(ord.speedup == doctest::Approx(1.0).epsilon(0.01));
    for (std::size_t i = 0; i < ord.selected.size(); ++i) CHECK(ord.selected[i] == BigInt(i));
}

TEST_CASE("analytic truncation speedup at the device scale") {
    auto lam = fsim_schmidt_values(M_PI / 2 + 0.05, M_PI / 6);
    double s = schmidt_truncation_speedup(35, lam, 0.001);
    CHECK(s > 1.0);
    CHECK(s < 10.0);  // well below an order of magnitude
    // Upper bound: product of the largest coefficients squared, about 1.047^2g.
    double bound = std::pow(lam[0], 2 * 35);
    CHECK(bound == doctest::Approx(std::pow(1.0484, 70)).epsilon(0.05));
    CHECK(s < bound);
}

TEST_CASE("sfa sampling at f=1 matches ideal sampling statistics") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 14, 10, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    StateVector sv(12);
    sv.apply_circuit(c);
    auto probs = sv.probabilities();
    double max_dp = 0;
    for (double p : probs) max_dp = std::max(max_dp, 4096.0 * p);

    // A ceiling above max(D p) keeps rejection sampling exact.
    auto res = sfa_sample(c, layout, layout.default_partition_a, 20000, 314, {}, max_dp * 1.25);
    CHECK(!res.ceiling_exceeded);

    // The expected linear XEB of ideal sampling is D sum p^2 - 1 for this
    // exact circuit (not 1: the small circuit deviates from Porter-Thomas).
    double expect = 0;
    for (double p : probs) expect += p * p;
    expect = 4096.0 * expect - 1.0;
    ProbSample ps;
    ps.n = 12;
    for (auto q : res.bitstrings) ps.ideal_probs.push_back(probs[q]);
    auto est = linear_xeb(ps);
    CHECK(std::abs(est.value - expect) < 3 * est.sigma_theory);

    // An undersized ceiling is flagged as a bias warning.
    auto clipped = sfa_sample(c, layout, layout.default_partition_a, 500, 314, {}, 1.0);
    CHECK(clipped.ceiling_exceeded);
}

TEST_CASE("deterministic outputs for fixed options") {
    auto layout = rect_layout(2, 5);
    Circuit c = generate_circuit({10, 10, 1, "EFGH", Variant::Full, 0, ""}, layout);
    SfaOptions opt;
    opt.fraction = 0.4;
    auto a = sfa_amplitudes(c, layout, layout.default_partition_a, {3, 77, 1023}, opt);
    auto b = sfa_amplitudes(c, layout, layout.default_partition_a, {3, 77, 1023}, opt);
    for (int i = 0; i < 3; ++i) CHECK(a.amplitudes[i] == b.amplitudes[i]);
    auto s1 = sfa_sample(c, layout, layout.default_partition_a, 500, 7, opt);
    auto s2 = sfa_sample(c, layout, layout.default_partition_a, 500, 7, opt);
    CHECK(s1.bitstrings == s2.bitstrings);
}

TEST_CASE("path budget is enforced") {
    auto layout = rect_layout(2, 6);
    Circuit c = generate_circuit({12, 14, 8, "ABCDCDAB", Variant::Full, 0, ""}, layout);
    SfaOptions opt;
    opt.max_paths = 16;
    CHECK_THROWS_AS(
        sfa_amplitudes(c, layout, layout.default_partition_a, {0}, opt), std::length_error);
}
