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

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qxeb {

using Unitary2 = Eigen::Matrix2cd;
using Unitary4 = Eigen::Matrix4cd;

/// The three pi/2 rotations used for randomized single-qubit layers.
enum class Axis : std::uint8_t { XHalf = 0, YHalf = 1, WHalf = 2 };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& s);

/// Two-qubit gate model: partial-iSWAP angle theta, conditional phase phi,
/// and three implicit Z-rotation angles. theta/phi are 2*pi periodic, the
/// delta angles 4*pi periodic.
struct FsimParams {
    double theta = 0.0;
    double phi = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double delta_minus_off = 0.0;

    bool is_pure_fsim(double tol = 1e-12) const;
    bool operator==(const FsimParams&) const = default;
};

inline FsimParams sycamore_params() { return {M_PI / 2, M_PI / 6, 0, 0, 0}; }

Unitary2 single_qubit_matrix(Axis axis);
Unitary2 pauli_matrix(char axis);  // 'X','Y','Z'
Unitary2 rz_matrix(double angle);  // exp(-i*angle*Z/2)
Unitary2 rx_matrix(double angle);  // exp(-i*angle*X/2)

/// Basis order |00>,|01>,|10>,|11>, left ket symbol = higher-index bit.
Unitary4 fsim_matrix(double theta, double phi);
Unitary4 general_fsim_matrix(const FsimParams& p);
Unitary4 cphase_matrix(double delta);  // diag(1,1,1,e^{-i delta})
Unitary4 swap_matrix();
Unitary4 kron2(const Unitary2& high, const Unitary2& low);  // high bit ox low bit

/// Operator Schmidt decomposition U = sum_i lambda_i A_i ox B_i with the
/// A_i/B_i orthonormal in the Hilbert-Schmidt inner product and
/// sum lambda_i^2 = 4. A acts on the high bit, B on the low bit.
struct SchmidtDecomposition {
    std::array<double, 4> coefficients{};  // descending
    std::array<Unitary2, 4> left_ops{};
    std::array<Unitary2, 4> right_ops{};

    Unitary4 reconstruct() const;
    int rank(double tol = 1e-12) const;
};

SchmidtDecomposition schmidt_decompose(const Unitary4& u);

/// Closed-form Schmidt coefficients of fsim_matrix(theta, phi), descending.
std::array<double, 4> fsim_schmidt_values(double theta, double phi);

/// Depolarizing-model cycle polarization for a swap-angle error dtheta:
/// p_c = (8 cos dtheta + 2 cos 2 dtheta + 5)/15.
double depolarizing_p_per_cycle(double delta_theta);

/// |tr(U V^dagger)| / dim, = 1 iff U equals V up to global phase.
double phase_overlap(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);
bool phase_equal(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v, double tol = 1e-10);

/// Controlled-phase synthesis from two fsim applications.
///
/// The returned sequence composes (left to right = time order) to
/// diag(1,1,1,e^{-i delta}) up to single-qubit Z rotations:
///   Rx(xi) x Rx(eta)  .  Upsilon(theta,phi)  .  exp(i alpha X x I)
///   .  Upsilon(-theta,phi)  .  Rx(xi) x Rx(-eta)
/// where Upsilon is the fsim gate conjugated by Z rotations and
/// Upsilon(-theta,phi) = (Z x I) Upsilon(theta,phi) (Z x I).
struct CzDecomposition {
    double alpha = 0, xi = 0, eta = 0;
    double theta = 0, phi = 0, delta = 0;

    Unitary4 upsilon(bool negative_theta) const;
    /// Full composite, before stripping the residual Z rotations.
    Unitary4 compose() const;
    /// Residual-stripped result; should match cphase_matrix(delta).
    Unitary4 compose_stripped() const;
    /// Operator-norm error of compose_stripped() against cphase(delta).
    double error() const;
};

struct InfeasibleAngles : std::domain_error {
    using std::domain_error::domain_error;
};

/// Throws InfeasibleAngles unless sin(delta/4) lies between |sin(phi/2)|
/// and |sin(theta)| (in either order).
CzDecomposition decompose_cz_from_fsim(double theta, double phi, double delta);

/// Least-squares removal of Z x I, I x Z and global-phase freedom from a
/// diagonal unitary; returns the stripped diagonal.
Unitary4 strip_z_rotations(const Unitary4& diag_unitary, const Unitary4& target);

enum class ErrorMetric { Pauli, Average, Depolarization, Polarization };
ErrorMetric error_metric_from_name(const std::string& s);

/// "Rosetta stone" conversions: e_P = (1-p)(1-1/D^2), e_a = (1-p)(1-1/D),
/// e_d = 1-p, where p is the depolarization decay constant.
double error_metric_convert(double value, ErrorMetric from, ErrorMetric to, int dimension);

}  // namespace qxeb
