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
#include <optional>
#include <string>
#include <vector>

namespace qxeb {

struct GridPos {
    int row = 0;
    int col = 0;
    bool operator==(const GridPos&) const = default;
};

/// Nearest-neighbor coupler between qubit indices a < b.
///
/// Every coupler carries two activation-class tags:
///   sup_class in {A,B,C,D} -- the staggered tiling used by the ABCDCDAB sequence,
///   ver_class in {E,F,G,H} -- the aligned tiling used by the EFGH sequence.
/// A-D key on (orientation, parity of row+col of the top/left endpoint); E-H key on
/// (orientation, row resp. column parity). Each tiling partitions the coupler set
/// into four disjoint classes.
struct Coupler {
    int a = 0;
    int b = 0;
    bool horizontal = false;
    char sup_class = '?';
    char ver_class = '?';
};

class QubitLayout {
  public:
    std::string id;
    /// Grid coordinates; vector position = qubit index (the order qubits are added).
    std::vector<GridPos> qubits;
    std::vector<Coupler> couplers;
    /// Default cut: qubit indices of partition A (the rest form partition B).
    std::vector<int> default_partition_a;

    int size() const { return static_cast<int>(qubits.size()); }

    /// Couplers whose endpoints are both below n (the active prefix).
    std::vector<Coupler> active_couplers(int n) const;

    /// Couplers of the given pattern id ('A'..'H') among the first n qubits.
    std::vector<Coupler> pattern_couplers(char pattern, int n) const;

    /// Qubit index at grid position, if present.
    std::optional<int> index_at(GridPos p) const;

    /// Default partition restricted to the first n qubits.
    std::vector<int> default_partition_for(int n) const;

    void validate() const;  // throws std::invalid_argument on bad invariants
};

/// The bundled 53-qubit layout: a 54-site diamond with one dead corner site,
/// ordered along the long axis of the device so that qubit prefixes stay
/// contiguous and the default cut interface stays small.
QubitLayout sycamore53_layout();

/// Rectangular grid, column-major order, default cut between column
/// halves (parallel to the short axis when cols >= rows, else between rows).
QubitLayout rect_layout(int rows, int cols);

/// Parse "rect:RxC" / "sycamore53" / a JSON file path.
QubitLayout resolve_layout(const std::string& spec);

std::string layout_to_json(const QubitLayout& l);
QubitLayout layout_from_json(const std::string& json_text);

}  // namespace qxeb
