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
#include <functional>
#include <string>
#include <vector>

#include "qxeb/gates.hpp"

namespace qxeb {

/// Simulated ideal probabilities of the measured bitstrings of one circuit.
struct ProbSample {
    std::string circuit_id;
    int n = 0;
    std::vector<double> ideal_probs;

    std::size_t size() const { return ideal_probs.size(); }
    double dimension() const { return std::pow(2.0, n); }
};

enum class Estimator { Linear, Log, Hog, Purity };
const char* estimator_name(Estimator e);

struct FidelityEstimate {
    double value = 0;
    double sigma = 0;         // empirical standard error (sample variance / N)
    double sigma_theory = 0;  // closed-form standard deviation at the estimate
    std::size_t n_samples = 0;
    Estimator estimator = Estimator::Linear;
};

/// F = <D p> - 1; theory sigma sqrt((1 + 2F - F^2)/N).
FidelityEstimate linear_xeb(const ProbSample& sample);

/// F = <log(D p)> + gamma; theory sigma sqrt((pi^2/6 - F^2)/N).
FidelityEstimate log_xeb(const ProbSample& sample);

/// Heavy-output estimator: F = <2*[D p >= ln 2] - 1>/ln 2;
/// theory sigma sqrt((1/ln^2 2 - F^2)/N).
FidelityEstimate hog_fidelity(const ProbSample& sample);

/// Small-fidelity maximum-likelihood estimate sum(Dp-1)/sum((Dp-1)^2).
double small_f_mle(const ProbSample& sample);

/// Right-hand-side normalization D*sum(p^2)-1 from a full distribution, or
/// its Haar value 2D/(D+1)-1.
double xeb_normalization(const std::vector<double>& full_probs);
double xeb_normalization_haar(double dimension);

/// Purity = Var(P_m) * D^2 (D+1)/(D-1) from a table of bitstring
/// probabilities (either all 2^n of them or measured estimates).
FidelityEstimate speckle_purity(const std::vector<double>& prob_table, int n);

struct DecayFit {
    double prefactor = 0;  // A, absorbs SPAM
    double p_cycle = 0;    // per-cycle polarization
    std::vector<double> residuals;  // log-domain
};

/// Least-squares exponential fit estimate = A * p^m in the log domain.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& points);

/// Inverse-variance weighted combination.
FidelityEstimate combine_estimates(const std::vector<FidelityEstimate>& estimates);

/// Digital-error-model prediction: product of per-gate entanglement
/// fidelities (1 - e_P) and per-qubit SPAM fidelities.
double predict_fidelity(const std::vector<double>& single_gate_pauli_errors,
                        const std::vector<double>& two_gate_pauli_errors,
                        const std::vector<double>& qubit_spam_errors);

/// F_total = F_U * p_m, solved for F_U.
double separate_measurement_fidelity(double f_total, double p_m);

// --- Nelder-Mead -----------------------------------------------------------

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 0.05;
    int max_iterations = 500;
    double tolerance = 1e-6;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    int iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opt = {});

/// Per-depth two-qubit XEB data for unitary-model learning.
struct TwoQubitXebData {
    int depth = 0;
    /// Random single-qubit layers: per cycle, the two 2x2 gates actually run.
    std::vector<std::array<Unitary2, 2>> single_layers;
    std::vector<std::uint64_t> measured;  // bitstrings in {0,1,2,3}
};

struct FitUnitaryResult {
    FsimParams params;
    double objective = 0;  // mean log-likelihood at the optimum
    bool converged = false;
    int iterations = 0;
};

/// Nelder-Mead fit of the five unitary-model parameters to two-qubit XEB
/// data, maximizing the cross-entropy (mean log-likelihood) of the measured
/// bitstrings under the model.
FitUnitaryResult fit_unitary(const std::vector<TwoQubitXebData>& data, const FsimParams& initial,
                             const NelderMeadOptions& opt = {});

/// Ideal two-qubit output probabilities for given single-qubit layers and a
/// two-qubit model applied each cycle (helper shared with tests/acceptance).
std::array<double, 4> two_qubit_probs(const std::vector<std::array<Unitary2, 2>>& single_layers,
                                      const FsimParams& params);

}  // namespace qxeb
