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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qxeb/circuit.hpp"
#include "qxeb/cut.hpp"
#include "qxeb/layout.hpp"

namespace qxeb {

enum class PathOrder { Index, Weight };

struct SfaOptions {
    double fraction = 1.0;
    /// Number of leading branch points whose half-states are checkpointed and
    /// reused across suffixes; -1 means every branch point (full reuse).
    int prefix_len = -1;
    PathOrder order = PathOrder::Index;
    bool fuse_wedges = false;
    /// Replace boundary-layer theta = pi/2 cross gates (plan_cut rank 2) by a
    /// controlled phase with the swap absorbed into the circuit boundary.
    bool simplify_boundary = true;
    /// Refuse runs that would evaluate more paths than this.
    std::uint64_t max_paths = std::uint64_t{1} << 24;
    /// Weight ordering needs the explicit path table; cap on its size.
    std::uint64_t max_explicit_order = std::uint64_t{1} << 22;
    bool single_precision = false;
    int qubit_cap = -1;
};

struct SfaResult {
    std::vector<std::complex<double>> amplitudes;  // one per query bitstring
    BigInt total_paths;
    BigInt paths_used;
    /// Sum of normalized path weights over the evaluated paths; the expected
    /// fidelity of the truncated state against the exact one.
    double implied_fidelity = 1.0;
    std::vector<int> branch_radix;  // per branch point, in time order
    int wedge_count = 0;
};

/// Amplitudes <q|U|0> as a sum over Schmidt-branch paths across the cut.
/// Paths are indexed mixed-radix with the earliest branch point as the most
/// significant digit and are accumulated in ascending index order with
/// compensated summation. fraction < 1 keeps the first ceil(f * total) paths
/// of the configured order.
SfaResult sfa_amplitudes(const Circuit& circuit, const QubitLayout& layout,
                         const std::vector<int>& partition_a,
                         const std::vector<std::uint64_t>& bitstrings, const SfaOptions& opt = {});

struct SfaSampleResult {
    std::vector<std::uint64_t> bitstrings;
    double implied_fidelity = 1.0;
    std::uint64_t candidates_drawn = 0;
    bool ceiling_exceeded = false;  // some candidate had D*p above the ceiling
};

/// Frugal rejection sampling: candidates drawn uniformly, accepted with
/// probability p(q) * D / ceiling, where ceiling defaults to 6 (in units of
/// 1/D) and p is the truncated-and-renormalized SFA probability.
SfaSampleResult sfa_sample(const Circuit& circuit, const QubitLayout& layout,
                           const std::vector<int>& partition_a, std::size_t n_s,
                           std::uint64_t rng_seed, const SfaOptions& opt = {},
                           double ceiling = 6.0);

struct PathOrdering {
    std::vector<BigInt> selected;  // ascending path indices
    BigInt s_count = 0;            // paths needed to reach the target weight
    double speedup = 1.0;          // (f * total) / s_count
};

/// Selects the smallest set of paths (largest weights first, ties by ascending
/// index) whose normalized weights sum to at least `fraction`. Requires the
/// explicit path table, so total must be at most max_explicit.
PathOrdering path_order_by_weight(const std::vector<std::vector<double>>& branch_weights,
                                  double fraction, std::uint64_t max_explicit);

/// Analytic version of the weight-ordering speedup for g identical cross
/// gates with the given Schmidt values (sum lambda_i^2 = 4), via enumeration
/// of weight classes; usable at any g.
double schmidt_truncation_speedup(int g, const std::array<double, 4>& lambdas, double fraction);

}  // namespace qxeb
