// Copyright 2026 The hexq Authors
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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/graph.hpp"
#include "hexq/instance.hpp"
#include "hexq/qaoa_angles.hpp"

namespace hexq {

/// Partition of the edge set into at most three matchings, as indices into
/// graph.edges(). Empty classes are allowed (e.g. for paths and cycles).
struct EdgeColoring {
    std::array<std::vector<int>, 3> classes;
    int color_count() const;
    /// Color of every edge, aligned with graph.edges().
    std::vector<int> color_of(size_t edge_count) const;
};

/// Greedy coloring over a seeded shuffle of the edges, with alternating-path
/// (Kempe chain) recoloring whenever an edge sees all three colors. Always
/// succeeds on bipartite graphs of max degree 3. Throws InvalidArgument for
/// degree > 3.
EdgeColoring edge_coloring(const HeavyHexGraph &graph, uint64_t seed);
/// Throws InvalidArgument unless the coloring is a partition into matchings.
void check_coloring(const HeavyHexGraph &graph, const EdgeColoring &coloring);

enum class GateKind { h, rz, rx, cx, cz, measure };
std::string to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::h;
    int q0 = 0;
    /// Target of two-qubit gates, -1 otherwise.
    int q1 = -1;
    double angle = 0;
    /// 0 for state preparation, j for QAOA layer j, p + 1 for measurement.
    int layer = 0;
    bool operator==(const Gate &) const = default;
};

struct Circuit {
    int qubits = 0;
    int p = 0;
    std::vector<Gate> gates;
};

/// Hadamards, then per layer: linear RZ rotations, two passes over the color
/// classes with CX from the V3 end of each edge onto its V2 end, RZ on the V2
/// qubit between them for the quadratic and cubic phases, and RX(2 beta) on
/// every qubit; finally measurements. p = 0 gives preparation and
/// measurement only.
Circuit build_circuit(const IsingInstance &instance, const QaoaAngles &angles, const EdgeColoring &coloring);

/// Rewrites every CX as H(target) CZ H(target).
Circuit lower_to_cz(const Circuit &circuit);

struct GateCounts {
    int64_t two_qubit = 0;
    int64_t x_family = 0;
    int64_t z_family = 0;
    int64_t hadamard = 0;
    int64_t measure = 0;
    bool operator==(const GateCounts &) const = default;
};

GateCounts gate_counts(const Circuit &circuit);
nlohmann::json gate_counts_to_json(const GateCounts &counts);

/// Two-qubit depth of each QAOA layer (ASAP over two-qubit gates only);
/// element j - 1 belongs to layer j.
std::vector<int> two_qubit_depths(const Circuit &circuit);

/// OpenQASM 2.0 text using qelib1.inc gates.
std::string emit_qasm(const Circuit &circuit);

/// Result of the minimal OpenQASM 2.0 reader.
struct QasmSummary {
    int qubits = 0;
    int clbits = 0;
    std::map<std::string, int64_t> gate_counts;
};

/// Accepts the subset emit_qasm produces (header, one qreg, one creg, h, rz,
/// rx, cx, cz, measure, barrier, comments). Throws FormatError otherwise.
QasmSummary validate_qasm(std::string_view text);

}  // namespace hexq
