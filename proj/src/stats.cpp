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

#include "qxeb/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qxeb/rng.hpp"

namespace qxeb {

double TheoryPdf::pdf(double x) const {
    if (family == PtFamily::Linear) {
        if (x < 0) return 0;
        return (fidelity * x + 1.0 - fidelity) * std::exp(-x);
    }
    double ex = std::exp(x);
    return (1.0 + fidelity * (ex - 1.0)) * std::exp(x - ex);
}

double TheoryPdf::cdf(double x) const {
    // Linear family: 1 - (1 + F x) e^{-x}. The log family is its pushforward
    // under x -> log x, so its CDF is the linear CDF evaluated at e^x.
    double y = family == PtFamily::Linear ? x : std::exp(x);
    if (y < 0) return 0;
    return 1.0 - (1.0 + fidelity * y) * std::exp(-y);
}

TheoryPdf pt_pdf_and_cdf(PtFamily family, double fidelity) {
    if (fidelity < 0 || fidelity > 1)
        throw std::invalid_argument("pt_pdf_and_cdf: fidelity must be in [0, 1]");
    return TheoryPdf{family, fidelity};
}

double kolmogorov_q(double t) {
    if (t <= 0) return 1.0;
    double sum = 0;
    for (int k = 1; k <= 200; ++k) {
        double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_test(std::vector<double> values, const std::function<double(double)>& cdf) {
    if (values.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double c = cdf(values[i]);
        double hi = static_cast<double>(i + 1) / n - c;
        double lo = c - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    KsResult r;
    r.d_ks = d;
    r.n = values.size();
    r.p_value = kolmogorov_q(std::sqrt(n) * d);
    return r;
}

BootstrapResult bootstrap(const std::vector<double>& values, int b,
                          const std::function<double(const std::vector<double>&)>& statistic,
                          std::uint64_t rng_seed) {
    if (b < 100) throw std::invalid_argument("bootstrap: need at least 100 resamples");
    Rng base(rng_seed);
    BootstrapResult out;
    out.statistics.reserve(b);
    std::vector<double> resample(values.size());
    for (int r = 0; r < b; ++r) {
        Rng rng = base.fork(r);
        for (std::size_t i = 0; i < values.size(); ++i)
            resample[i] = values[rng.next_below(values.size())];
        out.statistics.push_back(statistic(resample));
    }
    double mean = 0;
    for (double s : out.statistics) mean += s;
    mean /= b;
    double var = 0;
    for (double s : out.statistics) var += (s - mean) * (s - mean);
    out.sigma = std::sqrt(var / (b - 1));
    return out;
}

double DriftFit::sigma_f(double t) const {
    double v = sigma_p0_total * sigma_p0_total + 2.0 * t * sigma_p0_total * sigma_p1 * rho +
               sigma_p1 * sigma_p1 * t * t;
    return std::sqrt(std::max(0.0, v));
}

DriftFit drift_fit(const std::vector<std::array<double, 3>>& points) {
    if (points.size() < 3) throw std::invalid_argument("drift_fit: need at least three points");
    double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [t, f, sig] : points) {
        if (!(sig > 0)) throw std::invalid_argument("drift_fit: non-positive sigma");
        double w = 1.0 / (sig * sig);
        s += w;
        sx += w * t;
        sy += w * f;
        sxx += w * t * t;
        sxy += w * t * f;
    }
    double det = s * sxx - sx * sx;
    if (det == 0) throw std::invalid_argument("drift_fit: degenerate time values");
    DriftFit fit;
    fit.p0 = (sxx * sy - sx * sxy) / det;
    fit.p1 = (s * sxy - sx * sy) / det;
    fit.sigma_p0 = std::sqrt(sxx / det);
    fit.sigma_p1 = std::sqrt(s / det);
    fit.rho = -sx / std::sqrt(s * sxx);
    fit.dof = static_cast<int>(points.size()) - 2;
    double rsum = 0;
    for (const auto& [t, f, sig] : points) {
        double r = f - (fit.p0 + fit.p1 * t);
        fit.chi2 += (r / sig) * (r / sig);
        rsum += r * r;
    }
    fit.residual_stdev = std::sqrt(rsum / std::max(1, fit.dof));
    fit.sigma_p0_total = combine_in_quadrature(fit.sigma_p0, fit.residual_stdev);
    return fit;
}

double combine_in_quadrature(double statistical, double systematic) {
    return std::sqrt(statistical * statistical + systematic * systematic);
}

double integrate(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace qxeb
