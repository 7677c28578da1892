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

#include "qxeb/gates.hpp"

#include <cmath>

namespace qxeb {

using std::complex;
using namespace std::complex_literals;

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::XHalf: return "x";
        case Axis::YHalf: return "y";
        case Axis::WHalf: return "w";
    }
    return "?";
}

Axis axis_from_name(const std::string& s) {
    if (s == "x") return Axis::XHalf;
    if (s == "y") return Axis::YHalf;
    if (s == "w") return Axis::WHalf;
    throw std::invalid_argument("unknown single-qubit axis: " + s);
}

bool FsimParams::is_pure_fsim(double tol) const {
    return std::abs(delta_plus) < tol && std::abs(delta_minus) < tol &&
           std::abs(delta_minus_off) < tol;
}

Unitary2 single_qubit_matrix(Axis axis) {
    const double s = 1.0 / std::sqrt(2.0);
    Unitary2 u;
    switch (axis) {
        case Axis::XHalf:
            u << s, -s * 1i, -s * 1i, s;
            break;
        case Axis::YHalf:
            u << s, -s, s, s;
            break;
        case Axis::WHalf: {
            // sqrt(i) and sqrt(-i), principal values.
            complex<double> sqi = std::exp(1i * (M_PI / 4));
            complex<double> sqmi = std::exp(-1i * (M_PI / 4));
            u << s, -s * sqi, s * sqmi, s;
            break;
        }
    }
    return u;
}

Unitary2 pauli_matrix(char axis) {
    Unitary2 u;
    switch (axis) {
        case 'X': u << 0, 1, 1, 0; break;
        case 'Y': u << 0, -1i, 1i, 0; break;
        case 'Z': u << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli axis must be X, Y or Z");
    }
    return u;
}

Unitary2 rz_matrix(double angle) {
    Unitary2 u = Unitary2::Zero();
    u(0, 0) = std::exp(-1i * (angle / 2));
    u(1, 1) = std::exp(1i * (angle / 2));
    return u;
}

Unitary2 rx_matrix(double angle) {
    Unitary2 u;
    u << std::cos(angle / 2), -1i * std::sin(angle / 2), -1i * std::sin(angle / 2),
        std::cos(angle / 2);
    return u;
}

Unitary4 fsim_matrix(double theta, double phi) {
    Unitary4 u = Unitary4::Zero();
    u(0, 0) = 1;
    u(1, 1) = std::cos(theta);
    u(1, 2) = -1i * std::sin(theta);
    u(2, 1) = -1i * std::sin(theta);
    u(2, 2) = std::cos(theta);
    u(3, 3) = std::exp(-1i * phi);
    return u;
}

Unitary4 general_fsim_matrix(const FsimParams& p) {
    Unitary4 u = Unitary4::Zero();
    u(0, 0) = 1;
    u(1, 1) = std::exp(1i * (p.delta_plus + p.delta_minus)) * std::cos(p.theta);
    u(1, 2) = -1i * std::exp(1i * (p.delta_plus - p.delta_minus_off)) * std::sin(p.theta);
    u(2, 1) = -1i * std::exp(1i * (p.delta_plus + p.delta_minus_off)) * std::sin(p.theta);
    u(2, 2) = std::exp(1i * (p.delta_plus - p.delta_minus)) * std::cos(p.theta);
    u(3, 3) = std::exp(1i * (2 * p.delta_plus - p.phi));
    return u;
}

Unitary4 cphase_matrix(double delta) {
    Unitary4 u = Unitary4::Identity();
    u(3, 3) = std::exp(-1i * delta);
    return u;
}

Unitary4 swap_matrix() {
    Unitary4 u = Unitary4::Zero();
    u(0, 0) = u(1, 2) = u(2, 1) = u(3, 3) = 1;
    return u;
}

Unitary4 kron2(const Unitary2& high, const Unitary2& low) {
    Unitary4 u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = high(i, j) * low;
    return u;
}

Unitary4 SchmidtDecomposition::reconstruct() const {
    Unitary4 u = Unitary4::Zero();
    for (int k = 0; k < 4; ++k) u += coefficients[k] * kron2(left_ops[k], right_ops[k]);
    return u;
}

int SchmidtDecomposition::rank(double tol) const {
    int r = 0;
    for (double c : coefficients)
        if (c > tol) ++r;
    return r;
}

SchmidtDecomposition schmidt_decompose(const Unitary4& u) {
    // Reshuffle U_(a_out a_in),(b_out b_in): row index (a_out, a_in),
    // column index (b_out, b_in), where a is the high bit.
    Eigen::Matrix4cd m;
    for (int ao = 0; ao < 2; ++ao)
        for (int ai = 0; ai < 2; ++ai)
            for (int bo = 0; bo < 2; ++bo)
                for (int bi = 0; bi < 2; ++bi) m(2 * ao + ai, 2 * bo + bi) = u(2 * ao + bo, 2 * ai + bi);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtDecomposition d;
    for (int k = 0; k < 4; ++k) {
        d.coefficients[k] = svd.singularValues()(k);
        Eigen::Vector4cd lv = svd.matrixU().col(k);
        Eigen::Vector4cd rv = svd.matrixV().col(k).conjugate();
        Unitary2 a, b;
        a << lv(0), lv(1), lv(2), lv(3);
        b << rv(0), rv(1), rv(2), rv(3);
        d.left_ops[k] = a;
        d.right_ops[k] = b;
    }
    return d;
}

std::array<double, 4> fsim_schmidt_values(double theta, double phi) {
    double c = std::cos(theta);
    double cross = 2.0 * std::abs(std::cos(phi / 2) * c);
    std::array<double, 4> v{std::sqrt(std::max(0.0, 1 + cross + c * c)), std::abs(std::sin(theta)),
                            std::abs(std::sin(theta)), std::sqrt(std::max(0.0, 1 - cross + c * c))};
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

double depolarizing_p_per_cycle(double delta_theta) {
    return (8 * std::cos(delta_theta) + 2 * std::cos(2 * delta_theta) + 5) / 15.0;
}

double phase_overlap(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

bool phase_equal(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v, double tol) {
    return std::abs(phase_overlap(u, v) - 1.0) < tol;
}

namespace {

Unitary4 pauli2(char high, char low) {
    auto m = [](char c) -> Unitary2 {
        if (c == 'I') return Unitary2::Identity();
        return pauli_matrix(c);
    };
    return kron2(m(high), m(low));
}

}  // namespace

Unitary4 CzDecomposition::upsilon(bool negative_theta) const {
    // Upsilon(theta, phi) = exp(-i theta (XX+YY)/2) exp(-i phi ZZ/4)
    double th = negative_theta ? -theta : theta;
    Unitary4 xxyy = Unitary4::Identity();
    // exp(-i th (XX+YY)/2): acts on the single-excitation block as an iSWAP rotation.
    xxyy(1, 1) = std::cos(th);
    xxyy(2, 2) = std::cos(th);
    xxyy(1, 2) = -1i * std::sin(th);
    xxyy(2, 1) = -1i * std::sin(th);
    Unitary4 zz = Unitary4::Zero();
    zz(0, 0) = std::exp(-1i * (phi / 4));
    zz(1, 1) = std::exp(1i * (phi / 4));
    zz(2, 2) = std::exp(1i * (phi / 4));
    zz(3, 3) = std::exp(-1i * (phi / 4));
    return xxyy * zz;
}

Unitary4 CzDecomposition::compose() const {
    // exp(i alpha X x I)
    Unitary4 x1 = pauli2('X', 'I');
    Unitary4 mid = std::cos(alpha) * Unitary4::Identity() + 1i * std::sin(alpha) * x1;
    Unitary4 first = kron2(rx_matrix(xi), rx_matrix(eta));    // exp(-i(xi X1 + eta X2)/2)
    Unitary4 last = kron2(rx_matrix(xi), rx_matrix(-eta));    // exp(-i(xi X1 - eta X2)/2)
    return last * upsilon(true) * mid * upsilon(false) * first;
}

Unitary4 CzDecomposition::compose_stripped() const {
    return strip_z_rotations(compose(), cphase_matrix(delta));
}

double CzDecomposition::error() const {
    Unitary4 diff = compose_stripped() - cphase_matrix(delta);
    return diff.operatorNorm();
}

CzDecomposition decompose_cz_from_fsim(double theta, double phi, double delta) {
    double sd = std::sin(delta / 4);
    double sp = std::abs(std::sin(phi / 2));
    double st = std::abs(std::sin(theta));
    bool feasible = (st <= sd && sd <= sp) || (sp <= sd && sd <= st);
    if (!feasible)
        throw InfeasibleAngles("sin(delta/4) must lie between |sin(phi/2)| and |sin(theta)|");
    double num = sd * sd - sp * sp;
    double den = std::sin(theta) * std::sin(theta) - sp * sp;
    double sa = std::sqrt(num / den);
    CzDecomposition d;
    d.theta = theta;
    d.phi = phi;
    d.delta = delta;
    d.alpha = std::asin(std::min(1.0, std::max(-1.0, sa)));
    double ta = std::tan(d.alpha);
    auto sgn = [](double x) { return x >= 0 ? 1.0 : -1.0; };
    d.xi = std::atan(ta * std::cos(theta) / std::cos(phi / 2)) +
           (M_PI / 2) * (1 - sgn(std::cos(phi / 2)));
    d.eta = std::atan(ta * std::sin(theta) / std::sin(phi / 2)) +
            (M_PI / 2) * (1 - sgn(std::sin(phi / 2)));
    return d;
}

Unitary4 strip_z_rotations(const Unitary4& u, const Unitary4& target) {
    // Solve for phases g + z1*s1(k) + z2*s2(k) matching arg(target_kk / u_kk)
    // in the least-squares sense over the diagonal, where s1/s2 = +-1/2 are
    // the Rz generators on the two qubits.
    Eigen::Matrix<double, 4, 3> a;
    Eigen::Vector4d rhs;
    for (int k = 0; k < 4; ++k) {
        int hi = (k >> 1) & 1, lo = k & 1;
        a(k, 0) = 1.0;
        a(k, 1) = hi ? 0.5 : -0.5;
        a(k, 2) = lo ? 0.5 : -0.5;
        std::complex<double> ratio = target(k, k) / u(k, k);
        rhs(k) = std::arg(ratio);
    }
    // Unwrap: phases are defined mod 2*pi; pick the branch closest to the
    // first row's solution by iterating once.
    Eigen::Vector3d sol = (a.transpose() * a).ldlt().solve(a.transpose() * rhs);
    for (int iter = 0; iter < 4; ++iter) {
        for (int k = 0; k < 4; ++k) {
            double pred = a.row(k).dot(sol);
            while (rhs(k) - pred > M_PI) rhs(k) -= 2 * M_PI;
            while (rhs(k) - pred < -M_PI) rhs(k) += 2 * M_PI;
        }
        sol = (a.transpose() * a).ldlt().solve(a.transpose() * rhs);
    }
    Unitary4 corr = Unitary4::Zero();
    for (int k = 0; k < 4; ++k) {
        double ph = a.row(k).dot(sol);
        corr(k, k) = std::exp(1i * ph);
    }
    return corr * u;
}

ErrorMetric error_metric_from_name(const std::string& s) {
    if (s == "pauli") return ErrorMetric::Pauli;
    if (s == "average") return ErrorMetric::Average;
    if (s == "depol") return ErrorMetric::Depolarization;
    if (s == "p") return ErrorMetric::Polarization;
    throw std::invalid_argument("unknown error metric: " + s);
}

double error_metric_convert(double value, ErrorMetric from, ErrorMetric to, int dimension) {
    if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
    double d = static_cast<double>(dimension);
    // Convert to polarization p first.
    double p;
    switch (from) {
        case ErrorMetric::Pauli: p = 1.0 - value / (1.0 - 1.0 / (d * d)); break;
        case ErrorMetric::Average: p = 1.0 - value / (1.0 - 1.0 / d); break;
        case ErrorMetric::Depolarization: p = 1.0 - value; break;
        case ErrorMetric::Polarization: p = value; break;
        default: throw std::invalid_argument("bad metric");
    }
    switch (to) {
        case ErrorMetric::Pauli: return (1.0 - p) * (1.0 - 1.0 / (d * d));
        case ErrorMetric::Average: return (1.0 - p) * (1.0 - 1.0 / d);
        case ErrorMetric::Depolarization: return 1.0 - p;
        case ErrorMetric::Polarization: return p;
    }
    throw std::invalid_argument("bad metric");
}

}  // namespace qxeb
