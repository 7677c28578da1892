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

#include "qxeb/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace qxeb {

double t_sa(int n, int m, const CostParams& p) {
    if (n < 1 || m < 1) throw std::invalid_argument("t_sa: n and m must be positive");
    return static_cast<double>(m) * n * std::pow(2.0, n) / p.c_sa;
}

double t_sfa(int n, int m, SequenceKind kind, const CostParams& p) {
    if (n < 1 || m < 1) throw std::invalid_argument("t_sfa: n and m must be positive");
    double exponent = p.b * m * std::sqrt(static_cast<double>(n));
    double c = p.c_sfa_supremacy;
    if (kind == SequenceKind::Verifiable) {
        exponent *= 4.0 / 7.0;
        c = p.c_sfa_verifiable;
    }
    return 2.0 * std::pow(2.0, n / 2.0) * std::pow(4.0, exponent) / c;
}

double memory_bytes(int n, CostAlgorithm alg, double cores, int bytes_per_amp) {
    if (n < 0) throw std::invalid_argument("memory_bytes: negative n");
    if (alg == CostAlgorithm::SchrodingerFull)
        return std::pow(2.0, n) * bytes_per_amp;
    int half = (n + 1) / 2;  // concrete split uses the larger half
    return cores * std::pow(2.0, half) * bytes_per_amp;
}

}  // namespace qxeb
