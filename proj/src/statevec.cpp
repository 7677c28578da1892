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

#include "qxeb/statevec.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qxeb/rng.hpp"

namespace qxeb {

int default_qubit_cap() {
    if (const char* env = std::getenv("QXEB_MAX_QUBITS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 30;
}

template <typename Real>
BasicStateVector<Real>::BasicStateVector(int n, int qubit_cap) : n_(n) {
    if (n < 0 || n > 62) throw std::invalid_argument("state vector: bad qubit count");
    int cap = qubit_cap > 0 ? qubit_cap : default_qubit_cap();
    if (n > cap)
        throw std::length_error("state vector: qubit count exceeds the memory cap (" +
                                std::to_string(cap) + "); raise it explicitly to proceed");
    amps_.assign(std::size_t{1} << n, C{0, 0});
    amps_[0] = C{1, 0};
}

template <typename Real>
void BasicStateVector<Real>::reset() {
    std::fill(amps_.begin(), amps_.end(), C{0, 0});
    amps_[0] = C{1, 0};
}

template <typename Real>
void apply_single_inplace(std::vector<std::complex<Real>>& amps, const Unitary2& u, int q) {
    using C = std::complex<Real>;
    const C u00(u(0, 0)), u01(u(0, 1)), u10(u(1, 0)), u11(u(1, 1));
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t size = amps.size();
    for (std::size_t i = 0; i < size; i += 2 * stride) {
        for (std::size_t k = 0; k < stride; ++k) {
            const std::size_t l = i + k;
            const C a0 = amps[l], a1 = amps[l + stride];
            amps[l] = u00 * a0 + u01 * a1;
            amps[l + stride] = u10 * a0 + u11 * a1;
        }
    }
}

template <typename Real>
void apply_two_inplace(std::vector<std::complex<Real>>& amps, const Unitary4& u, int q1, int q2) {
    using C = std::complex<Real>;
    C m[4][4];
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) m[r][s] = C(u(r, s));
    const std::size_t s1 = std::size_t{1} << q1;
    const std::size_t s2 = std::size_t{1} << q2;
    const std::size_t size = amps.size();
    // Outer blocks touch disjoint slices; parallel execution is bit-identical
    // to serial since no reductions are involved.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (size >= (std::size_t{1} << 16))
#endif
    for (std::size_t i = 0; i < size; i += 2 * s2) {
        for (std::size_t j = 0; j < s2; j += 2 * s1) {
            for (std::size_t k = 0; k < s1; ++k) {
                const std::size_t l = i + j + k;
                const C v0 = amps[l];
                const C v1 = amps[l + s1];
                const C v2 = amps[l + s2];
                const C v3 = amps[l + s1 + s2];
                amps[l] = m[0][0] * v0 + m[0][1] * v1 + m[0][2] * v2 + m[0][3] * v3;
                amps[l + s1] = m[1][0] * v0 + m[1][1] * v1 + m[1][2] * v2 + m[1][3] * v3;
                amps[l + s2] = m[2][0] * v0 + m[2][1] * v1 + m[2][2] * v2 + m[2][3] * v3;
                amps[l + s1 + s2] = m[3][0] * v0 + m[3][1] * v1 + m[3][2] * v2 + m[3][3] * v3;
            }
        }
    }
}

template void apply_single_inplace<double>(std::vector<std::complex<double>>&, const Unitary2&,
                                           int);
template void apply_single_inplace<float>(std::vector<std::complex<float>>&, const Unitary2&, int);
template void apply_two_inplace<double>(std::vector<std::complex<double>>&, const Unitary4&, int,
                                        int);
template void apply_two_inplace<float>(std::vector<std::complex<float>>&, const Unitary4&, int,
                                       int);

template <typename Real>
void BasicStateVector<Real>::apply_single(const Unitary2& u, int q) {
    if (q < 0 || q >= n_) throw std::out_of_range("apply_single: qubit index");
    apply_single_inplace(amps_, u, q);
}

template <typename Real>
void BasicStateVector<Real>::apply_two(const Unitary4& u, int q1, int q2) {
    if (!(0 <= q1 && q1 < q2 && q2 < n_)) throw std::out_of_range("apply_two: qubit indices");
    apply_two_inplace(amps_, u, q1, q2);
}

template <typename Real>
void BasicStateVector<Real>::apply_gate(const PairGate& g) {
    apply_two(general_fsim_matrix(g.params), g.a, g.b);
}

template <typename Real>
void BasicStateVector<Real>::apply_cycle(const Cycle& c) {
    for (const auto& s : c.singles) apply_single(single_qubit_matrix(s.axis), s.qubit);
    for (const auto& p : c.pairs) apply_gate(p);
}

template <typename Real>
void BasicStateVector<Real>::apply_circuit(const Circuit& c) {
    if (c.n() != n_) throw std::invalid_argument("apply_circuit: qubit count mismatch");
    for (int cyc = 0; cyc <= c.num_cycles(); ++cyc) {
        for (const auto& [q, u] : cycle_single_ops(c, cyc)) apply_single(u, q);
        if (cyc < c.num_cycles())
            for (const auto& p : c.cycles[cyc].pairs) apply_gate(p);
    }
}

template <typename Real>
std::complex<double> BasicStateVector<Real>::amplitude(std::uint64_t bitstring) const {
    return std::complex<double>(amps_.at(bitstring));
}

template <typename Real>
double BasicStateVector<Real>::norm_sq() const {
    double s = 0;
    for (const auto& a : amps_) s += static_cast<double>(std::norm(a));
    return s;
}

template <typename Real>
std::vector<double> BasicStateVector<Real>::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = static_cast<double>(std::norm(amps_[i]));
    return p;
}

template class BasicStateVector<double>;
template class BasicStateVector<float>;

std::vector<FusedOp> fuse(const Circuit& c) {
    const int n = c.n();
    std::vector<Unitary2> pending(n, Unitary2::Identity());
    std::vector<char> has_pending(n, 0);
    std::vector<FusedOp> program;

    auto flush_into_pair = [&](const PairGate& g) {
        Unitary2 pa = has_pending[g.a] ? pending[g.a] : Unitary2::Identity();
        Unitary2 pb = has_pending[g.b] ? pending[g.b] : Unitary2::Identity();
        Eigen::MatrixXcd m = general_fsim_matrix(g.params) * kron2(pb, pa);
        pending[g.a] = Unitary2::Identity();
        pending[g.b] = Unitary2::Identity();
        has_pending[g.a] = has_pending[g.b] = 0;
        program.push_back({{g.a, g.b}, m});
    };

    for (int cyc = 0; cyc <= c.num_cycles(); ++cyc) {
        for (const auto& [q, u] : cycle_single_ops(c, cyc)) {
            pending[q] = u * pending[q];
            has_pending[q] = 1;
        }
        if (cyc < c.num_cycles())
            for (const auto& p : c.cycles[cyc].pairs) flush_into_pair(p);
    }
    for (int q = 0; q < n; ++q)
        if (has_pending[q]) program.push_back({{q}, Eigen::MatrixXcd(pending[q])});
    return program;
}

template <typename Real>
void apply_fused(BasicStateVector<Real>& sv, const std::vector<FusedOp>& program) {
    for (const auto& op : program) {
        if (op.qubits.size() == 1) {
            sv.apply_single(Unitary2(op.matrix), op.qubits[0]);
        } else {
            sv.apply_two(Unitary4(op.matrix), op.qubits[0], op.qubits[1]);
        }
    }
}

template void apply_fused<double>(BasicStateVector<double>&, const std::vector<FusedOp>&);
template void apply_fused<float>(BasicStateVector<float>&, const std::vector<FusedOp>&);

std::vector<std::complex<double>> simulate(const Circuit& c, int qubit_cap) {
    StateVector sv(c.n(), qubit_cap);
    sv.apply_circuit(c);
    return sv.amplitudes();
}

std::vector<std::uint64_t> sample_from_probs(const std::vector<double>& probs, std::size_t n_s,
                                             std::uint64_t rng_seed) {
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-6)
        throw std::invalid_argument("sample_from_probs: distribution is not normalized");
    Rng rng(rng_seed);
    std::vector<std::uint64_t> out;
    out.reserve(n_s);
    for (std::size_t k = 0; k < n_s; ++k) {
        double u = rng.next_double() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
    }
    return out;
}

std::vector<std::uint64_t> sample(const Circuit& c, std::size_t n_s, std::uint64_t rng_seed,
                                  int qubit_cap) {
    StateVector sv(c.n(), qubit_cap);
    sv.apply_circuit(c);
    return sample_from_probs(sv.probabilities(), n_s, rng_seed);
}

}  // namespace qxeb
