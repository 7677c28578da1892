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
#include <string>
#include <vector>

namespace qxeb {

/// Newline-delimited bitstrings, most significant character = highest qubit.
void write_bitstrings_text(const std::string& path, const std::vector<std::uint64_t>& qs, int n);
std::vector<std::uint64_t> read_bitstrings_text(const std::string& path, int* n_out = nullptr);

/// Little-endian u64 per bitstring.
void write_bitstrings_binary(const std::string& path, const std::vector<std::uint64_t>& qs);
std::vector<std::uint64_t> read_bitstrings_binary(const std::string& path);

/// CSV rows "bitstring,re,im".
void write_amplitudes_csv(const std::string& path, const std::vector<std::uint64_t>& qs,
                          const std::vector<std::complex<double>>& amps, int n);

/// NDJSON rows {"circuit_id":..., "bitstring":"...", "p_s":...}.
void write_prob_rows_ndjson(const std::string& path, const std::string& circuit_id,
                            const std::vector<std::uint64_t>& qs, const std::vector<double>& ps,
                            int n);
struct ProbRow {
    std::string circuit_id;
    std::uint64_t bitstring;
    double p_s;
};
std::vector<ProbRow> read_prob_rows_ndjson(const std::string& path, int* n_out = nullptr);

std::string bitstring_to_text(std::uint64_t q, int n);
std::uint64_t bitstring_from_text(const std::string& s);

/// Histogram CSV with a theory overlay column (for external plotting).
void write_histogram_csv(const std::string& path, const std::vector<double>& values, int bins,
                         double lo, double hi,
                         const std::vector<std::pair<std::string, std::vector<double>>>& overlays);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qxeb
