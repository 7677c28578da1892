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
#include <vector>

#include "qxeb/circuit.hpp"
#include "qxeb/gates.hpp"

namespace qxeb {

/// Default refusal threshold for dense state allocation; override explicitly
/// or via the QXEB_MAX_QUBITS environment variable.
int default_qubit_cap();

/// In-place gate kernels on a dense amplitude array (index bit k = qubit k).
template <typename Real>
void apply_single_inplace(std::vector<std::complex<Real>>& amps, const Unitary2& u, int q);

/// u in basis |q2 q1>, q1 < q2; the three-loop stride walk over the array.
template <typename Real>
void apply_two_inplace(std::vector<std::complex<Real>>& amps, const Unitary4& u, int q1, int q2);

/// Dense 2^n state vector, amplitude index bit k = qubit k. Matrices are
/// supplied in double precision; Real selects the storage/kernel precision.
template <typename Real>
class BasicStateVector {
  public:
    using C = std::complex<Real>;

    explicit BasicStateVector(int n, int qubit_cap = -1);

    int n() const { return n_; }
    const std::vector<C>& amplitudes() const { return amps_; }
    std::vector<C>& amplitudes() { return amps_; }

    void reset();  // back to |0...0>
    void apply_single(const Unitary2& u, int q);
    void apply_two(const Unitary4& u, int q1, int q2);  // u in basis |q2 q1>, q1 < q2
    void apply_gate(const PairGate& g);
    void apply_cycle(const Cycle& c);
    void apply_circuit(const Circuit& c);

    std::complex<double> amplitude(std::uint64_t bitstring) const;
    double norm_sq() const;
    std::vector<double> probabilities() const;

  private:
    int n_;
    std::vector<C> amps_;
};

using StateVector = BasicStateVector<double>;
using StateVectorF = BasicStateVector<float>;

/// Gate with absorbed neighbors; qubits.size() is 1 or 2 here.
struct FusedOp {
    std::vector<int> qubits;      // ascending
    Eigen::MatrixXcd matrix;      // dim 2^{qubits.size()}, basis high..low = reversed qubit order
};

/// Greedy fusion: every single-qubit gate is absorbed into the temporally
/// nearest two-qubit gate on that qubit, preferring the later one; singles
/// with no following two-qubit gate stay as 2x2 trailing ops.
std::vector<FusedOp> fuse(const Circuit& c);

template <typename Real>
void apply_fused(BasicStateVector<Real>& sv, const std::vector<FusedOp>& program);

/// Full-state simulation of a circuit; throws std::length_error over the cap.
std::vector<std::complex<double>> simulate(const Circuit& c, int qubit_cap = -1);

/// N_s inverse-CDF draws from a probability table, deterministic per seed.
std::vector<std::uint64_t> sample_from_probs(const std::vector<double>& probs, std::size_t n_s,
                                             std::uint64_t rng_seed);

/// Ideal sampling of a circuit (state-vector simulation + inverse CDF).
std::vector<std::uint64_t> sample(const Circuit& c, std::size_t n_s, std::uint64_t rng_seed,
                                  int qubit_cap = -1);

}  // namespace qxeb
