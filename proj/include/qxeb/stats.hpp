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

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace qxeb {

enum class PtFamily { Linear, Log };

/// Theory distributions of scored bitstring probabilities at fidelity F:
///   linear family: x = D p,      P_l(x|F) = (F x + 1 - F) e^{-x} on [0, inf)
///   log family:    x = log(D p), P_c(x|F) = (1 + F(e^x - 1)) e^{x - e^x} on R.
struct TheoryPdf {
    PtFamily family = PtFamily::Linear;
    double fidelity = 0;

    double pdf(double x) const;
    double cdf(double x) const;
};

TheoryPdf pt_pdf_and_cdf(PtFamily family, double fidelity);

struct KsResult {
    double d_ks = 0;
    double p_value = 0;
    std::size_t n = 0;
};

/// Two-sided Kolmogorov-Smirnov statistic (sup over both step edges) with the
/// asymptotic Kolmogorov p-value Q(sqrt(N) d).
KsResult ks_test(std::vector<double> values, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov distribution Q(t) = 2 sum_k (-1)^{k-1} e^{-2 k^2 t^2}.
double kolmogorov_q(double t);

struct BootstrapResult {
    std::vector<double> statistics;  // one value per resample
    double sigma = 0;
};

/// B resamples with replacement, deterministic per seed.
BootstrapResult bootstrap(const std::vector<double>& values, int b,
                          const std::function<double(const std::vector<double>&)>& statistic,
                          std::uint64_t rng_seed);

struct DriftFit {
    double p0 = 0, p1 = 0;
    double sigma_p0 = 0, sigma_p1 = 0;
    double rho = 0;                 // correlation of (p0, p1)
    double chi2 = 0;
    int dof = 0;
    double residual_stdev = 0;
    double sigma_p0_total = 0;      // statistical + residual scatter in quadrature

    /// sigma_F(t) by standard error propagation with the total sigma_p0.
    double sigma_f(double t) const;
};

/// Weighted linear fit F = p0 + p1 t of (t, F, sigma_F) points.
DriftFit drift_fit(const std::vector<std::array<double, 3>>& points);

/// Quadrature combination of independent uncertainties.
double combine_in_quadrature(double statistical, double systematic);

/// Simpson integration helper used by the verification tests.
double integrate(const std::function<double(double)>& f, double a, double b, int intervals = 4000);

}  // namespace qxeb
