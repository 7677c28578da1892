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

#include "qxeb/xeb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qxeb {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

struct MeanVar {
    double mean = 0;
    double var = 0;  // unbiased
};

MeanVar mean_var(const std::vector<double>& xs) {
    double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    if (xs.size() > 1) v /= (xs.size() - 1);
    return {m, v};
}

}  // namespace

const char* estimator_name(Estimator e) {
    switch (e) {
        case Estimator::Linear: return "linear";
        case Estimator::Log: return "log";
        case Estimator::Hog: return "hog";
        case Estimator::Purity: return "purity";
    }
    return "?";
}

FidelityEstimate linear_xeb(const ProbSample& sample) {
    if (sample.size() < 2) throw std::invalid_argument("linear_xeb: need at least two samples");
    const double d = sample.dimension();
    std::vector<double> xs;
    xs.reserve(sample.size());
    for (double p : sample.ideal_probs) xs.push_back(d * p - 1.0);
    auto mv = mean_var(xs);
    FidelityEstimate e;
    e.estimator = Estimator::Linear;
    e.value = mv.mean;
    e.n_samples = sample.size();
    e.sigma = std::sqrt(mv.var / sample.size());
    e.sigma_theory = std::sqrt((1.0 + 2.0 * e.value - e.value * e.value) / sample.size());
    return e;
}

FidelityEstimate log_xeb(const ProbSample& sample) {
    if (sample.size() < 2) throw std::invalid_argument("log_xeb: need at least two samples");
    const double d = sample.dimension();
    std::vector<double> xs;
    xs.reserve(sample.size());
    for (double p : sample.ideal_probs) {
        if (!(p > 0)) throw std::domain_error("log_xeb: zero probability in sample");
        xs.push_back(std::log(d * p));
    }
    auto mv = mean_var(xs);
    FidelityEstimate e;
    e.estimator = Estimator::Log;
    e.value = mv.mean + kEulerGamma;
    e.n_samples = sample.size();
    e.sigma = std::sqrt(mv.var / sample.size());
    e.sigma_theory = std::sqrt((M_PI * M_PI / 6.0 - e.value * e.value) / sample.size());
    return e;
}

FidelityEstimate hog_fidelity(const ProbSample& sample) {
    if (sample.size() < 2) throw std::invalid_argument("hog_fidelity: need at least two samples");
    const double d = sample.dimension();
    const double ln2 = std::log(2.0);
    std::vector<double> xs;
    xs.reserve(sample.size());
    for (double p : sample.ideal_probs) xs.push_back((d * p >= ln2 ? 1.0 : -1.0) / ln2);
    auto mv = mean_var(xs);
    FidelityEstimate e;
    e.estimator = Estimator::Hog;
    e.value = mv.mean;
    e.n_samples = sample.size();
    e.sigma = std::sqrt(mv.var / sample.size());
    e.sigma_theory = std::sqrt((1.0 / (ln2 * ln2) - e.value * e.value) / sample.size());
    return e;
}

double small_f_mle(const ProbSample& sample) {
    const double d = sample.dimension();
    double num = 0, den = 0;
    for (double p : sample.ideal_probs) {
        double x = d * p - 1.0;
        num += x;
        den += x * x;
    }
    if (den == 0) throw std::domain_error("small_f_mle: degenerate sample");
    return num / den;
}

double xeb_normalization(const std::vector<double>& full_probs) {
    double s = 0;
    for (double p : full_probs) s += p * p;
    return static_cast<double>(full_probs.size()) * s - 1.0;
}

double xeb_normalization_haar(double dimension) { return 2.0 * dimension / (dimension + 1.0) - 1.0; }

FidelityEstimate speckle_purity(const std::vector<double>& prob_table, int n) {
    if (prob_table.empty()) throw std::invalid_argument("speckle_purity: empty table");
    const double d = std::pow(2.0, n);
    auto mv = mean_var(prob_table);
    const double scale = d * d * (d + 1.0) / (d - 1.0);
    FidelityEstimate e;
    e.estimator = Estimator::Purity;
    e.value = mv.var * scale;
    e.n_samples = prob_table.size();
    // Error on a variance estimate from N values: Var(s^2) ~ (mu4 - sigma^4)/N.
    double m = mv.mean, mu4 = 0;
    for (double p : prob_table) mu4 += std::pow(p - m, 4.0);
    mu4 /= prob_table.size();
    e.sigma = scale * std::sqrt(std::max(0.0, mu4 - mv.var * mv.var) / prob_table.size());
    e.sigma_theory = e.sigma;
    return e;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_decay: need at least two depths");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [m, est] : points) {
        if (!(est > 0)) throw std::domain_error("fit_decay: non-positive estimate");
        double y = std::log(est);
        sx += m;
        sy += y;
        sxx += m * m;
        sxy += m * y;
    }
    const double n = static_cast<double>(points.size());
    const double det = n * sxx - sx * sx;
    if (det == 0) throw std::invalid_argument("fit_decay: degenerate depths");
    double slope = (n * sxy - sx * sy) / det;
    double intercept = (sy * sxx - sx * sxy) / det;
    DecayFit fit;
    fit.p_cycle = std::exp(slope);
    fit.prefactor = std::exp(intercept);
    for (auto [m, est] : points) fit.residuals.push_back(std::log(est) - (intercept + slope * m));
    return fit;
}

FidelityEstimate combine_estimates(const std::vector<FidelityEstimate>& estimates) {
    if (estimates.empty()) throw std::invalid_argument("combine_estimates: empty list");
    double wsum = 0, vsum = 0;
    std::size_t n = 0;
    for (const auto& e : estimates) {
        if (!(e.sigma > 0)) throw std::invalid_argument("combine_estimates: non-positive sigma");
        double w = 1.0 / (e.sigma * e.sigma);
        wsum += w;
        vsum += w * e.value;
        n += e.n_samples;
    }
    FidelityEstimate out;
    out.estimator = estimates.front().estimator;
    out.value = vsum / wsum;
    out.sigma = std::sqrt(1.0 / wsum);
    out.sigma_theory = out.sigma;
    out.n_samples = n;
    return out;
}

double predict_fidelity(const std::vector<double>& single_gate_pauli_errors,
                        const std::vector<double>& two_gate_pauli_errors,
                        const std::vector<double>& qubit_spam_errors) {
    double f = 1.0;
    for (double e : single_gate_pauli_errors) f *= (1.0 - e);
    for (double e : two_gate_pauli_errors) f *= (1.0 - e);
    for (double e : qubit_spam_errors) f *= (1.0 - e);
    return f;
}

double separate_measurement_fidelity(double f_total, double p_m) {
    if (!(p_m > 0)) throw std::domain_error("separate_measurement_fidelity: p_m must be positive");
    return f_total / p_m;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opt) {
    const int dim = static_cast<int>(start.size());
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (int i = 0; i < dim; ++i) simplex[i + 1][i] += opt.initial_step;
    std::vector<double> values(dim + 1);
    for (int i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

    NelderMeadResult res;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        std::vector<int> idx(dim + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
        if (values[idx[dim]] - values[idx[0]] < opt.tolerance) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) centroid[k] += simplex[idx[i]][k] / dim;
        const int worst = idx[dim];
        auto blend = [&](double t) {
            std::vector<double> x(dim);
            for (int k = 0; k < dim; ++k) x[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
            return x;
        };
        auto reflected = blend(opt.reflection);
        double fr = objective(reflected);
        if (fr < values[idx[0]]) {
            auto expanded = blend(opt.expansion);
            double fe = objective(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[idx[dim - 1]]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            auto contracted = blend(-opt.contraction);
            double fc = objective(contracted);
            if (fc < values[worst]) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                for (int i = 1; i <= dim; ++i) {
                    for (int k = 0; k < dim; ++k)
                        simplex[idx[i]][k] =
                            simplex[idx[0]][k] + opt.shrink * (simplex[idx[i]][k] - simplex[idx[0]][k]);
                    values[idx[i]] = objective(simplex[idx[i]]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= dim; ++i)
        if (values[i] < values[best]) best = i;
    res.x = simplex[best];
    res.value = values[best];
    res.iterations = iter;
    return res;
}

std::array<double, 4> two_qubit_probs(const std::vector<std::array<Unitary2, 2>>& single_layers,
                                      const FsimParams& params) {
    Eigen::Vector4cd state;
    state << 1, 0, 0, 0;
    Unitary4 gate = general_fsim_matrix(params);
    for (const auto& layer : single_layers) {
        state = kron2(layer[1], layer[0]) * state;  // qubit 1 = high bit
        state = gate * state;
    }
    std::array<double, 4> p{};
    for (int k = 0; k < 4; ++k) p[k] = std::norm(state(k));
    return p;
}

FitUnitaryResult fit_unitary(const std::vector<TwoQubitXebData>& data, const FsimParams& initial,
                             const NelderMeadOptions& opt) {
    // Cross-entropy objective: mean log-likelihood of the measured bitstrings
    // under the model. Its population maximum sits exactly at the data-
    // generating unitary, which the bare linear score does not guarantee for
    // a two-qubit Hilbert space.
    auto objective = [&](const std::vector<double>& x) {
        FsimParams p{x[0], x[1], x[2], x[3], x[4]};
        double total = 0;
        std::size_t count = 0;
        for (const auto& d : data) {
            auto probs = two_qubit_probs(d.single_layers, p);
            for (auto q : d.measured) total += std::log(std::max(probs[q], 1e-12));
            count += d.measured.size();
        }
        return -total / count;  // maximize the mean log-likelihood
    };
    NelderMeadResult nm = nelder_mead(
        objective,
        {initial.theta, initial.phi, initial.delta_plus, initial.delta_minus,
         initial.delta_minus_off},
        opt);
    FitUnitaryResult out;
    out.params = {nm.x[0], nm.x[1], nm.x[2], nm.x[3], nm.x[4]};
    out.objective = -nm.value;
    out.converged = nm.converged;
    out.iterations = nm.iterations;
    return out;
}

}  // namespace qxeb
