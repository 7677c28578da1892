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

#include "qxeb/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qxeb {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

}  // namespace

std::string bitstring_to_text(std::uint64_t q, int n) {
    std::string s(n, '0');
    for (int b = 0; b < n; ++b)
        if ((q >> b) & 1ULL) s[n - 1 - b] = '1';
    return s;
}

std::uint64_t bitstring_from_text(const std::string& s) {
    std::uint64_t q = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring: " + s);
        q = (q << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return q;
}

void write_bitstrings_text(const std::string& path, const std::vector<std::uint64_t>& qs, int n) {
    auto out = open_out(path);
    for (auto q : qs) out << bitstring_to_text(q, n) << '\n';
}

std::vector<std::uint64_t> read_bitstrings_text(const std::string& path, int* n_out) {
    auto in = open_in(path);
    std::vector<std::uint64_t> qs;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        n = static_cast<int>(line.size());
        qs.push_back(bitstring_from_text(line));
    }
    if (n_out) *n_out = n;
    return qs;
}

void write_bitstrings_binary(const std::string& path, const std::vector<std::uint64_t>& qs) {
    auto out = open_out(path, true);
    for (auto q : qs) {
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((q >> (8 * i)) & 0xFF);
        out.write(reinterpret_cast<const char*>(bytes), 8);
    }
}

std::vector<std::uint64_t> read_bitstrings_binary(const std::string& path) {
    auto in = open_in(path, true);
    std::vector<std::uint64_t> qs;
    unsigned char bytes[8];
    while (in.read(reinterpret_cast<char*>(bytes), 8)) {
        std::uint64_t q = 0;
        for (int i = 7; i >= 0; --i) q = (q << 8) | bytes[i];
        qs.push_back(q);
    }
    return qs;
}

void write_amplitudes_csv(const std::string& path, const std::vector<std::uint64_t>& qs,
                          const std::vector<std::complex<double>>& amps, int n) {
    auto out = open_out(path);
    out << "bitstring,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < qs.size(); ++i)
        out << bitstring_to_text(qs[i], n) << ',' << amps[i].real() << ',' << amps[i].imag()
            << '\n';
}

void write_prob_rows_ndjson(const std::string& path, const std::string& circuit_id,
                            const std::vector<std::uint64_t>& qs, const std::vector<double>& ps,
                            int n) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        nlohmann::json row = {{"circuit_id", circuit_id},
                              {"bitstring", bitstring_to_text(qs[i], n)},
                              {"p_s", ps[i]}};
        out << row.dump() << '\n';
    }
}

std::vector<ProbRow> read_prob_rows_ndjson(const std::string& path, int* n_out) {
    auto in = open_in(path);
    std::vector<ProbRow> rows;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        std::string bits = j.at("bitstring").get<std::string>();
        n = static_cast<int>(bits.size());
        rows.push_back({j.value("circuit_id", std::string{}), bitstring_from_text(bits),
                        j.at("p_s").get<double>()});
    }
    if (n_out) *n_out = n;
    return rows;
}

void write_histogram_csv(const std::string& path, const std::vector<double>& values, int bins,
                         double lo, double hi,
                         const std::vector<std::pair<std::string, std::vector<double>>>& overlays) {
    std::vector<double> counts(bins, 0);
    const double width = (hi - lo) / bins;
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        if (b >= 0 && b < bins) counts[b] += 1;
    }
    auto out = open_out(path);
    out << "bin_center,count";
    for (const auto& [name, _] : overlays) out << ',' << name;
    out << '\n' << std::setprecision(12);
    for (int b = 0; b < bins; ++b) {
        out << lo + (b + 0.5) * width << ',' << counts[b];
        for (const auto& [_, col] : overlays) out << ',' << col.at(b);
        out << '\n';
    }
}

std::string read_text_file(const std::string& path) {
    auto in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

}  // namespace qxeb
