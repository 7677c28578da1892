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
#include <string>

namespace qxeb {

/// Fitted constants of the runtime scaling formulas, in Hz, for a nominal
/// one-million-core machine, plus the average cross-gates-per-cycle density.
struct CostParams {
    double c_sa = 0.015e15;              // 0.015e6 GHz
    double c_sfa_verifiable = 0.0062e15;  // 0.0062e6 GHz
    double c_sfa_supremacy = 3.3e15;      // 3.3e6 GHz
    double b = 0.25;                      // cross gates per cycle per sqrt(n)
};

enum class SequenceKind { Supremacy, Verifiable };

/// Full state-vector runtime T = C^-1 m n 2^n (seconds, 1M cores).
double t_sa(int n, int m, const CostParams& p = {});

/// Hybrid-simulator runtime T = C^-1 * 2 * 2^{n/2} * 4^{c B m sqrt(n)} with
/// c = 1 for the supremacy sequence and 4/7 for the verifiable one.
double t_sfa(int n, int m, SequenceKind kind, const CostParams& p = {});

enum class CostAlgorithm { SchrodingerFull, SchrodingerFeynman };

/// Memory footprint in bytes with the 2-byte amplitude convention:
/// full: 2^{n+1}; hybrid: cores * 2^{ceil(n/2)+1}. bytes_per_amp 8/16
/// selects single/double precision instead.
double memory_bytes(int n, CostAlgorithm alg, double cores = 1e6, int bytes_per_amp = 2);

}  // namespace qxeb
