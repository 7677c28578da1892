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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "qxeb/circuit.hpp"
#include "qxeb/cost.hpp"
#include "qxeb/cut.hpp"
#include "qxeb/io.hpp"
#include "qxeb/layout.hpp"
#include "qxeb/noise.hpp"
#include "qxeb/sfa.hpp"
#include "qxeb/statevec.hpp"
#include "qxeb/stats.hpp"
#include "qxeb/xeb.hpp"

namespace {

constexpr const char* kVersion = "qxeb 1.0.0 (circuit schema 1, layout schema 1)";

using namespace qxeb;

std::vector<int> parse_cut(const std::string& spec, const QubitLayout& layout, int n) {
    if (spec.empty() || spec == "default") return layout.default_partition_for(n);
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

Circuit load_circuit(const std::string& path) { return circuit_from_json(read_text_file(path)); }

nlohmann::json run_config(const CLI::App* cmd) {
    nlohmann::json j;
    j["command"] = cmd->get_name();
    for (const auto* opt : cmd->get_options()) {
        if (opt->count() == 0) continue;
        auto results = opt->results();
        if (results.size() == 1)
            j["args"][opt->get_name()] = results.front();
        else
            j["args"][opt->get_name()] = results;
    }
    return j;
}

struct GenerateArgs {
    std::string layout = "sycamore53";
    int n = 12, m = 14;
    std::uint64_t seed = 0;
    std::string sequence = "ABCDCDAB";
    std::string variant = "full";
    int k = 0;
    std::string cut = "default";
    std::string params_file;
    std::string out = "circuit.json";
};

int cmd_generate(const GenerateArgs& a, const CLI::App* cmd) {
    QubitLayout layout = resolve_layout(a.layout);
    PairParamTable params;
    if (!a.params_file.empty()) params = PairParamTable::from_json(read_text_file(a.params_file));
    CircuitSpec spec;
    spec.n = a.n;
    spec.m = a.m;
    spec.seed = a.seed;
    spec.sequence = a.sequence;
    if (a.variant != "full" && a.variant != "patch" && a.variant != "elided")
        throw std::invalid_argument("variant must be full, elided or patch");
    Circuit c = generate_circuit(spec, layout, params);
    if (a.variant != "full") {
        auto part = parse_cut(a.cut, layout, a.n);
        c = a.variant == "patch" ? make_patch(c, part) : elide_gates(c, part, a.k);
    }
    write_text_file(a.out, circuit_to_json(c));
    nlohmann::json meta = run_config(cmd);
    meta["two_qubit_gates"] = c.count_two_qubit_gates();
    meta["single_qubit_gates"] = c.count_single_qubit_gates();
    std::cerr << meta.dump() << "\n";
    return 0;
}

struct PerturbArgs {
    std::string circuit;
    std::string pauli;
    std::optional<double> rz;
    int cycle = 0, qubit = 0;
    std::string out = "perturbed.json";
};

int cmd_perturb(const PerturbArgs& a) {
    Circuit c = load_circuit(a.circuit);
    if (!a.pauli.empty() && a.rz)
        throw std::invalid_argument("choose one of --pauli / --rz");
    if (!a.pauli.empty())
        c = inject_pauli(c, a.cycle, a.qubit, a.pauli.at(0));
    else if (a.rz)
        c = inject_rz(c, a.cycle, a.qubit, *a.rz);
    else
        throw std::invalid_argument("one of --pauli / --rz is required");
    write_text_file(a.out, circuit_to_json(c));
    return 0;
}

struct SimulateArgs {
    std::string circuit;
    std::string layout = "";
    std::string engine = "sv";
    std::string mode = "amplitudes";
    std::string bitstrings_file;
    bool all_bitstrings = false;
    std::size_t ns = 100000;
    std::uint64_t rng_seed = 0;
    double fraction = 1.0;
    int prefix = -1;
    std::string order = "index";
    bool fuse_wedges = false;
    bool no_simplify = false;
    std::string precision = "double";
    std::string cut = "default";
    double noise_f = -1.0;
    double meas_e0 = 0.0, meas_e1 = 0.0;
    bool binary = false;
    int max_qubits = -1;
    std::string out = "out";
    std::string sidecar;
};

int cmd_simulate(const SimulateArgs& a, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    Circuit c = load_circuit(a.circuit);
    const int n = c.n();
    nlohmann::json meta = run_config(cmd);
    meta["engine"] = a.engine;
    meta["n"] = n;
    meta["m"] = c.spec.m;

    std::vector<std::uint64_t> queries;
    if (a.all_bitstrings) {
        if (n > 24) throw std::length_error("--all is limited to 24 qubits");
        queries.resize(std::size_t{1} << n);
        for (std::size_t i = 0; i < queries.size(); ++i) queries[i] = i;
    } else if (!a.bitstrings_file.empty()) {
        queries = read_bitstrings_text(a.bitstrings_file);
    }

    if (a.engine == "sv") {
        auto run_probs = [&]() {
            if (a.precision == "single") {
                StateVectorF sv(n, a.max_qubits);
                sv.apply_circuit(c);
                return sv.probabilities();
            }
            StateVector sv(n, a.max_qubits);
            sv.apply_circuit(c);
            return sv.probabilities();
        };
        if (a.mode == "amplitudes") {
            if (queries.empty()) throw std::invalid_argument("amplitudes mode needs bitstrings");
            std::vector<std::complex<double>> amps;
            if (a.precision == "single") {
                StateVectorF sv(n, a.max_qubits);
                sv.apply_circuit(c);
                for (auto q : queries) amps.push_back(sv.amplitude(q));
            } else {
                StateVector sv(n, a.max_qubits);
                sv.apply_circuit(c);
                for (auto q : queries) amps.push_back(sv.amplitude(q));
            }
            write_amplitudes_csv(a.out, queries, amps, n);
        } else if (a.mode == "probs") {
            auto probs = run_probs();
            std::vector<std::uint64_t> qs(probs.size());
            for (std::size_t i = 0; i < qs.size(); ++i) qs[i] = i;
            write_prob_rows_ndjson(a.out, c.spec.layout_id + ":" + std::to_string(c.spec.seed), qs,
                                   probs, n);
        } else if (a.mode == "sample") {
            auto probs = run_probs();
            double total = 0;
            for (double p : probs) total += p;
            for (double& p : probs) p /= total;  // single precision rounds the norm
            std::vector<std::uint64_t> draws;
            if (a.noise_f >= 0.0)
                draws = depolarizing_sample(probs, a.noise_f, a.ns, a.rng_seed);
            else
                draws = sample_from_probs(probs, a.ns, a.rng_seed);
            if (a.meas_e0 > 0 || a.meas_e1 > 0)
                draws = apply_measurement_error(draws, n, a.meas_e0, a.meas_e1, a.rng_seed + 1);
            if (a.binary)
                write_bitstrings_binary(a.out, draws);
            else
                write_bitstrings_text(a.out, draws, n);
            meta["n_samples"] = draws.size();
        } else {
            throw std::invalid_argument("unknown mode: " + a.mode);
        }
    } else if (a.engine == "sfa") {
        std::string layout_spec = a.layout.empty() ? c.spec.layout_id : a.layout;
        QubitLayout layout = resolve_layout(layout_spec);
        auto part = parse_cut(a.cut, layout, n);
        SfaOptions opt;
        opt.fraction = a.fraction;
        opt.prefix_len = a.prefix;
        opt.order = a.order == "weight" ? PathOrder::Weight : PathOrder::Index;
        opt.fuse_wedges = a.fuse_wedges;
        opt.simplify_boundary = !a.no_simplify;
        opt.single_precision = a.precision == "single";
        opt.qubit_cap = a.max_qubits;
        if (a.mode == "amplitudes") {
            if (queries.empty()) throw std::invalid_argument("amplitudes mode needs bitstrings");
            auto res = sfa_amplitudes(c, layout, part, queries, opt);
            write_amplitudes_csv(a.out, queries, res.amplitudes, n);
            meta["total_paths"] = res.total_paths.str();
            meta["paths_used"] = res.paths_used.str();
            meta["implied_fidelity"] = res.implied_fidelity;
            meta["wedges"] = res.wedge_count;
        } else if (a.mode == "sample") {
            auto res = sfa_sample(c, layout, part, a.ns, a.rng_seed, opt);
            if (a.binary)
                write_bitstrings_binary(a.out, res.bitstrings);
            else
                write_bitstrings_text(a.out, res.bitstrings, n);
            meta["implied_fidelity"] = res.implied_fidelity;
            meta["candidates_drawn"] = res.candidates_drawn;
            meta["ceiling_exceeded"] = res.ceiling_exceeded;
            if (res.ceiling_exceeded)
                std::cerr << "warning: rejection ceiling below max D*p; sample is biased\n";
        } else {
            throw std::invalid_argument("sfa engine supports amplitudes and sample modes");
        }
    } else {
        throw std::invalid_argument("unknown engine: " + a.engine);
    }

    auto t1 = std::chrono::steady_clock::now();
    meta["wall_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    if (!a.sidecar.empty()) write_text_file(a.sidecar, meta.dump(2));
    return 0;
}

struct XebArgs {
    std::string samples;
    std::string circuit;
    std::string probs_file;
    std::string estimators = "linear,log,hog";
    bool ks = false;
    int bootstrap_b = 0;
    std::string purity_table;
    std::string hist;
    int max_qubits = -1;
    std::string out = "report.json";
};

// Single-pass mean/variance accumulators for the three estimator scores;
// keeps sample analysis at constant memory unless KS, bootstrap or histogram
// output require the value list.
struct StreamingXeb {
    struct Welford {
        std::size_t n = 0;
        double mean = 0, m2 = 0;
        void add(double x) {
            ++n;
            double d = x - mean;
            mean += d / n;
            m2 += d * (x - mean);
        }
        double var() const { return n > 1 ? m2 / (n - 1) : 0.0; }
    };
    Welford lin, lg, hog;
    double mle_num = 0, mle_den = 0;
    double d = 0;

    void add(double p) {
        double x = d * p - 1.0;
        lin.add(x);
        lg.add(std::log(std::max(d * p, 1e-300)));
        hog.add((d * p >= std::log(2.0) ? 1.0 : -1.0) / std::log(2.0));
        mle_num += x;
        mle_den += x * x;
    }
};

int cmd_xeb(const XebArgs& a, const CLI::App* cmd) {
    nlohmann::json report;
    report["config"] = run_config(cmd);

    const bool need_values = a.ks || a.bootstrap_b > 0 || !a.hist.empty();
    StreamingXeb acc;
    ProbSample ps;  // materialized only when need_values
    int n_qubits = 0;

    if (!a.probs_file.empty()) {
        auto rows = read_prob_rows_ndjson(a.probs_file, &n_qubits);
        ps.n = n_qubits;
        acc.d = std::pow(2.0, n_qubits);
        for (const auto& r : rows) {
            acc.add(r.p_s);
            ps.circuit_id = r.circuit_id;
            if (need_values) ps.ideal_probs.push_back(r.p_s);
        }
    } else if (!a.samples.empty() && !a.circuit.empty()) {
        Circuit c = load_circuit(a.circuit);
        auto qs = read_bitstrings_text(a.samples, &n_qubits);
        if (n_qubits != c.n())
            throw std::invalid_argument("sample width does not match the circuit");
        StateVector sv(c.n(), a.max_qubits);
        sv.apply_circuit(c);
        ps.n = c.n();
        acc.d = std::pow(2.0, c.n());
        ps.circuit_id = c.spec.layout_id + ":" + std::to_string(c.spec.seed);
        for (auto q : qs) {
            double p = std::norm(sv.amplitude(q));
            acc.add(p);
            if (need_values) ps.ideal_probs.push_back(p);
        }
    }

    if (acc.lin.n > 1) {
        const double gamma = 0.57721566490153286;
        const double ln2 = std::log(2.0);
        const std::size_t count = acc.lin.n;
        std::stringstream ss(a.estimators);
        std::string name;
        double f_linear = 0;
        while (std::getline(ss, name, ',')) {
            double value, var, sig_theory;
            if (name == "linear") {
                value = acc.lin.mean;
                var = acc.lin.var();
                sig_theory = std::sqrt((1 + 2 * value - value * value) / count);
                f_linear = value;
            } else if (name == "log") {
                value = acc.lg.mean + gamma;
                var = acc.lg.var();
                sig_theory = std::sqrt((M_PI * M_PI / 6 - value * value) / count);
            } else if (name == "hog") {
                value = acc.hog.mean;
                var = acc.hog.var();
                sig_theory = std::sqrt((1.0 / (ln2 * ln2) - value * value) / count);
            } else {
                throw std::invalid_argument("unknown estimator: " + name);
            }
            report["estimates"].push_back({{"estimator", name},
                                           {"F", value},
                                           {"sigma_empirical", std::sqrt(var / count)},
                                           {"sigma_theory", sig_theory},
                                           {"N_s", count}});
        }
        if (acc.mle_den > 0) report["small_f_mle"] = acc.mle_num / acc.mle_den;

        if (a.ks) {
            std::vector<double> xs;
            const double d = acc.d;
            for (double p : ps.ideal_probs) xs.push_back(d * p);
            auto fhat = pt_pdf_and_cdf(PtFamily::Linear, std::clamp(f_linear, 0.0, 1.0));
            auto null0 = pt_pdf_and_cdf(PtFamily::Linear, 0.0);
            auto k1 = ks_test(xs, [&](double x) { return fhat.cdf(x); });
            auto k0 = ks_test(xs, [&](double x) { return null0.cdf(x); });
            report["ks"] = {{"vs_estimate", {{"d", k1.d_ks}, {"p_value", k1.p_value}}},
                            {"vs_zero", {{"d", k0.d_ks}, {"p_value", k0.p_value}}}};
        }
        if (a.bootstrap_b > 0) {
            const double d = acc.d;
            auto stat = [&](const std::vector<double>& vals) {
                double m = 0;
                for (double p : vals) m += d * p - 1;
                return m / vals.size();
            };
            auto b = bootstrap(ps.ideal_probs, a.bootstrap_b, stat, 17);
            report["bootstrap"] = {{"B", a.bootstrap_b}, {"sigma", b.sigma}};
        }
        if (!a.hist.empty()) {
            const double d = acc.d;
            std::vector<double> xs;
            for (double p : ps.ideal_probs) xs.push_back(d * p);
            const int bins = 50;
            const double lo = 0, hi = 8;
            auto fhat = pt_pdf_and_cdf(PtFamily::Linear, std::clamp(f_linear, 0.0, 1.0));
            auto ideal = pt_pdf_and_cdf(PtFamily::Linear, 1.0);
            auto zero = pt_pdf_and_cdf(PtFamily::Linear, 0.0);
            double width = (hi - lo) / bins;
            std::vector<double> t_fhat, t_one, t_zero;
            for (int b = 0; b < bins; ++b) {
                double x = lo + (b + 0.5) * width;
                double scale = xs.size() * width;
                t_fhat.push_back(fhat.pdf(x) * scale);
                t_one.push_back(ideal.pdf(x) * scale);
                t_zero.push_back(zero.pdf(x) * scale);
            }
            write_histogram_csv(a.hist, xs, bins, lo, hi,
                                {{"theory_fhat", t_fhat}, {"theory_f1", t_one},
                                 {"theory_f0", t_zero}});
        }
    }

    if (!a.purity_table.empty()) {
        std::vector<double> table;
        std::stringstream ss(read_text_file(a.purity_table));
        std::string line;
        int n_bits = 0;
        while (std::getline(ss, line)) {
            if (line.empty()) continue;
            table.push_back(std::stod(line));
        }
        n_bits = n_qubits > 0 ? n_qubits : static_cast<int>(std::round(std::log2(table.size())));
        auto purity = speckle_purity(table, n_bits);
        report["purity"] = {{"value", purity.value}, {"sigma", purity.sigma},
                            {"sqrt", std::sqrt(std::max(0.0, purity.value))}};
    }

    write_text_file(a.out, report.dump(2));
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct PathspaceArgs {
    std::string circuit;
    std::string layout;
    std::string cut = "default";
    std::string out;
};

int cmd_pathspace(const PathspaceArgs& a) {
    Circuit c = load_circuit(a.circuit);
    QubitLayout layout = resolve_layout(a.layout.empty() ? c.spec.layout_id : a.layout);
    Cut cut = plan_cut(c, layout, parse_cut(a.cut, layout, c.n()));
    auto text = pathspace_report_json(c, cut);
    if (!a.out.empty()) write_text_file(a.out, text);
    std::cout << text << "\n";
    return 0;
}

struct CostArgs {
    std::string alg = "sfa";
    std::string variant = "supremacy";
    std::string n_range = "20:53:1";
    std::string m_range = "12:20:2";
    std::string format = "csv";
    std::string out;
};

int cmd_cost(const CostArgs& a) {
    auto parse_range = [](const std::string& s) {
        int lo, hi, step = 1;
        char c;
        std::stringstream ss(s);
        ss >> lo >> c >> hi;
        if (ss >> c >> step) {
        }
        std::vector<int> out;
        for (int v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    };
    auto ns = parse_range(a.n_range);
    auto ms = parse_range(a.m_range);
    SequenceKind kind =
        a.variant == "verifiable" ? SequenceKind::Verifiable : SequenceKind::Supremacy;
    std::stringstream csv;
    nlohmann::json rows = nlohmann::json::array();
    csv << "n,m,seconds,memory_bytes\n";
    for (int n : ns)
        for (int m : ms) {
            double t = a.alg == "sa" ? t_sa(n, m) : t_sfa(n, m, kind);
            double mem = memory_bytes(n, a.alg == "sa" ? CostAlgorithm::SchrodingerFull
                                                       : CostAlgorithm::SchrodingerFeynman);
            csv << n << ',' << m << ',' << t << ',' << mem << '\n';
            rows.push_back({{"n", n}, {"m", m}, {"seconds", t}, {"memory_bytes", mem}});
        }
    std::string text = a.format == "json" ? rows.dump(2) : csv.str();
    if (!a.out.empty())
        write_text_file(a.out, text);
    else
        std::cout << text;
    return 0;
}

struct LayoutArgs {
    std::string export_spec;
    std::string validate_file;
    std::string out = "layout.json";
};

int cmd_layout(const LayoutArgs& a) {
    if (!a.export_spec.empty()) {
        write_text_file(a.out, layout_to_json(resolve_layout(a.export_spec)));
        return 0;
    }
    if (!a.validate_file.empty()) {
        QubitLayout l = resolve_layout(a.validate_file);
        std::cout << "ok: " << l.id << " with " << l.size() << " qubits, " << l.couplers.size()
                  << " couplers\n";
        return 0;
    }
    throw std::invalid_argument("layout: need --export or --validate");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-circuit simulation and cross-entropy verification toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config");
    app.require_subcommand(1);

    int threads = 1;
    if (const char* env = std::getenv("QXEB_THREADS")) threads = std::max(1, std::atoi(env));
    app.add_option("--threads", threads, "worker threads for gate kernels");

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "generate a random circuit");
    gen->add_option("--layout", g.layout, "sycamore53 | rect:RxC | layout file");
    gen->add_option("--n", g.n, "qubit count")->required();
    gen->add_option("--m", g.m, "cycle count")->required();
    gen->add_option("--seed", g.seed, "PRNG seed");
    gen->add_option("--sequence", g.sequence, "pattern sequence, e.g. ABCDCDAB or EFGH");
    gen->add_option("--variant", g.variant, "full | elided | patch");
    gen->add_option("--k", g.k, "number of gates to elide");
    gen->add_option("--cut", g.cut, "default | comma-separated qubit indices of partition A");
    gen->add_option("--params", g.params_file, "per-pair unitary parameter table (JSON)");
    gen->add_option("-o,--out", g.out, "output circuit file");

    PerturbArgs p;
    auto* per = app.add_subcommand("perturb", "insert an error gate into a circuit");
    per->add_option("--circuit", p.circuit)->required();
    per->add_option("--pauli", p.pauli, "X | Y | Z");
    double rz_angle = 0;
    auto* rz_opt = per->add_option("--rz", rz_angle, "Rz angle in radians");
    per->add_option("--cycle", p.cycle)->required();
    per->add_option("--qubit", p.qubit)->required();
    per->add_option("-o,--out", p.out);

    SimulateArgs s;
    auto* sim = app.add_subcommand("simulate", "run a circuit");
    sim->add_option("--circuit", s.circuit)->required();
    sim->add_option("--layout", s.layout, "layout override for the sfa cut");
    sim->add_option("--engine", s.engine, "sv | sfa");
    sim->add_option("--mode", s.mode, "amplitudes | sample | probs");
    sim->add_option("--bitstrings", s.bitstrings_file, "query bitstrings (text)");
    sim->add_flag("--all", s.all_bitstrings, "query every bitstring");
    sim->add_option("--ns", s.ns, "sample count");
    sim->add_option("--rng-seed", s.rng_seed);
    sim->add_option("--fraction", s.fraction, "fraction of simulation paths");
    sim->add_option("--prefix", s.prefix, "checkpointed branch points (-1: all)");
    sim->add_option("--order", s.order, "index | weight");
    sim->add_flag("--fuse-wedges", s.fuse_wedges);
    sim->add_flag("--no-simplify", s.no_simplify, "keep boundary gates at rank 4");
    sim->add_option("--precision", s.precision, "double | single");
    sim->add_option("--cut", s.cut);
    sim->add_option("--noise-f", s.noise_f, "depolarizing sampling fidelity");
    sim->add_option("--meas-e0", s.meas_e0, "readout 0->1 flip rate");
    sim->add_option("--meas-e1", s.meas_e1, "readout 1->0 flip rate");
    sim->add_flag("--binary", s.binary, "binary sample output (u64 little-endian)");
    sim->add_option("--max-qubits", s.max_qubits, "memory cap override");
    sim->add_option("-o,--out", s.out)->required();
    sim->add_option("--sidecar", s.sidecar, "run metadata JSON");

    XebArgs x;
    auto* xeb = app.add_subcommand("xeb", "estimate fidelity from samples");
    xeb->add_option("--samples", x.samples, "measured bitstrings (text)");
    xeb->add_option("--circuit", x.circuit, "circuit for ideal probabilities");
    xeb->add_option("--probs", x.probs_file, "precomputed NDJSON sample probabilities");
    xeb->add_option("--estimators", x.estimators, "comma list: linear,log,hog");
    xeb->add_flag("--ks", x.ks, "KS tests vs the estimate and vs zero fidelity");
    xeb->add_option("--bootstrap", x.bootstrap_b, "bootstrap resamples");
    xeb->add_option("--purity", x.purity_table, "probability table for speckle purity");
    xeb->add_option("--hist", x.hist, "histogram CSV with theory overlays");
    xeb->add_option("--max-qubits", x.max_qubits);
    xeb->add_option("-o,--out", x.out);

    PathspaceArgs ps;
    auto* psc = app.add_subcommand("pathspace", "cut and path-count report");
    psc->add_option("--circuit", ps.circuit)->required();
    psc->add_option("--layout", ps.layout);
    psc->add_option("--cut", ps.cut);
    psc->add_option("-o,--out", ps.out);

    CostArgs c;
    auto* cost = app.add_subcommand("cost", "runtime/memory scaling tables");
    cost->add_option("--alg", c.alg, "sa | sfa");
    cost->add_option("--variant", c.variant, "supremacy | verifiable");
    cost->add_option("--n", c.n_range, "lo:hi[:step]");
    cost->add_option("--m", c.m_range, "lo:hi[:step]");
    cost->add_option("--format", c.format, "csv | json");
    cost->add_option("-o,--out", c.out);

    LayoutArgs l;
    auto* lay = app.add_subcommand("layout", "export or validate layouts");
    lay->add_option("--export", l.export_spec, "sycamore53 | rect:RxC");
    lay->add_option("--validate", l.validate_file);
    lay->add_option("-o,--out", l.out);

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif

    try {
        if (gen->parsed()) return cmd_generate(g, gen);
        if (per->parsed()) {
            if (rz_opt->count()) p.rz = rz_angle;
            return cmd_perturb(p);
        }
        if (sim->parsed()) return cmd_simulate(s, sim);
        if (xeb->parsed()) return cmd_xeb(x, xeb);
        if (psc->parsed()) return cmd_pathspace(ps);
        if (cost->parsed()) return cmd_cost(c);
        if (lay->parsed()) return cmd_layout(l);
    } catch (const std::length_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
