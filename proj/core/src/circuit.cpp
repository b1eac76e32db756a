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

#include "hexq/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/format.hpp"
#include "hexq/rng.hpp"

namespace hexq {

int EdgeColoring::color_count() const {
    return static_cast<int>(std::count_if(classes.begin(), classes.end(), [](const auto &c) { return !c.empty(); }));
}

std::vector<int> EdgeColoring::color_of(size_t edge_count) const {
    std::vector<int> out(edge_count, -1);
    for (int c = 0; c < 3; c++) {
        for (int e : classes[c]) {
            if (e < 0 || static_cast<size_t>(e) >= edge_count) {
                throw InvalidArgument("edge coloring refers to a missing edge");
            }
            out[e] = c;
        }
    }
    return out;
}

EdgeColoring edge_coloring(const HeavyHexGraph &graph, uint64_t seed) {
    if (graph.max_degree() > 3) {
        throw InvalidArgument("edge coloring needs max degree <= 3");
    }
    const auto edges = graph.edges();
    const int m = static_cast<int>(edges.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed, 0xc0, 0);
    for (int i = m - 1; i > 0; i--) {
        std::swap(order[i], order[rng.below(static_cast<uint64_t>(i) + 1)]);
    }

    // at[v][c] = edge of color c at node v, or -1.
    std::vector<std::array<int, 3>> at(graph.node_count(), {-1, -1, -1});
    std::vector<int> color(m, -1);
    auto other = [&](int e, int v) { return edges[e].u == v ? edges[e].v : edges[e].u; };
    auto free_color = [&](int v) {
        for (int c = 0; c < 3; c++) {
            if (at[v][c] < 0) return c;
        }
        return -1;
    };
    auto assign = [&](int e, int c) {
        color[e] = c;
        at[edges[e].u][c] = e;
        at[edges[e].v][c] = e;
    };

    for (int e : order) {
        int u = edges[e].u, v = edges[e].v;
        int a = free_color(u), b = free_color(v);
        if (at[v][a] < 0) {
            assign(e, a);
            continue;
        }
        if (at[u][b] < 0) {
            assign(e, b);
            continue;
        }
        // Swap a and b along the alternating path leaving v on color a. In
        // a bipartite graph the path cannot reach u, so a becomes free at v.
        std::vector<int> path;
        int x = v, c = a;
        while (at[x][c] >= 0) {
            int f = at[x][c];
            path.push_back(f);
            x = other(f, x);
            c = c == a ? b : a;
        }
        for (int f : path) {
            at[edges[f].u][color[f]] = -1;
            at[edges[f].v][color[f]] = -1;
        }
        for (int f : path) {
            assign(f, color[f] == a ? b : a);
        }
        assign(e, a);
    }

    EdgeColoring out;
    for (int e = 0; e < m; e++) {
        out.classes[color[e]].push_back(e);
    }
    check_coloring(graph, out);
    return out;
}

void check_coloring(const HeavyHexGraph &graph, const EdgeColoring &coloring) {
    const auto edges = graph.edges();
    std::vector<int> color = coloring.color_of(edges.size());
    if (std::find(color.begin(), color.end(), -1) != color.end()) {
        throw InvalidArgument("edge coloring leaves an edge uncolored");
    }
    size_t total = 0;
    for (const auto &cls : coloring.classes) {
        total += cls.size();
        std::set<int> touched;
        for (int e : cls) {
            if (!touched.insert(edges[e].u).second || !touched.insert(edges[e].v).second) {
                throw InvalidArgument("edge color class is not a matching");
            }
        }
    }
    if (total != edges.size()) {
        throw InvalidArgument("edge coloring lists an edge more than once");
    }
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::h:
            return "h";
        case GateKind::rz:
            return "rz";
        case GateKind::rx:
            return "rx";
        case GateKind::cx:
            return "cx";
        case GateKind::cz:
            return "cz";
        case GateKind::measure:
            return "measure";
    }
    return "unknown";
}

Circuit build_circuit(const IsingInstance &instance, const QaoaAngles &angles, const EdgeColoring &coloring) {
    const auto &g = instance.graph;
    check_coloring(g, coloring);
    if (angles.betas.size() != angles.gammas.size()) {
        throw InvalidArgument("betas and gammas differ in length");
    }
    const int n = g.node_count();
    const auto edges = g.edges();

    // Cubic coefficient per center node (0 when the node has none).
    std::vector<int> cubic_at(n, 0);
    for (size_t c = 0; c < g.cubic().size(); c++) {
        cubic_at[g.cubic()[c].w] = instance.d_cubic[c];
    }
    // Edges of each V2 node in the order their colors are visited.
    std::vector<std::vector<int>> v2_edges(n);
    for (int c = 0; c < 3; c++) {
        for (int e : coloring.classes[c]) {
            int target = g.side(edges[e].u) == Side::v2 ? edges[e].u : edges[e].v;
            v2_edges[target].push_back(e);
        }
    }

    Circuit circ;
    circ.qubits = n;
    circ.p = angles.p();
    for (int q = 0; q < n; q++) {
        circ.gates.push_back({GateKind::h, q, -1, 0, 0});
    }
    for (int j = 0; j < angles.p(); j++) {
        const int layer = j + 1;
        const double gamma = angles.gammas[j];
        // RZ(theta) contributes exp(+i theta z / 2) since bit 1 is spin +1.
        for (int q = 0; q < n; q++) {
            circ.gates.push_back({GateKind::rz, q, -1, -2 * gamma * instance.d_lin[q], layer});
        }
        std::vector<int> seen(n, 0);
        for (int pass = 0; pass < 2; pass++) {
            for (int c = 0; c < 3; c++) {
                for (int e : coloring.classes[c]) {
                    int target = g.side(edges[e].u) == Side::v2 ? edges[e].u : edges[e].v;
                    int control = edges[e].u == target ? edges[e].v : edges[e].u;
                    circ.gates.push_back({GateKind::cx, control, target, 0, layer});
                    const auto &mine = v2_edges[target];
                    int step = seen[target]++;
                    if (mine.size() == 1) {
                        if (step == 0) {
                            circ.gates.push_back({GateKind::rz, target, -1, 2 * gamma * instance.d_quad[e], layer});
                        }
                    } else if (step == 0) {
                        circ.gates.push_back({GateKind::rz, target, -1, 2 * gamma * instance.d_quad[mine[0]], layer});
                    } else if (step == 1) {
                        // Target holds the parity of three spins: Z acts as -z_i z_w z_k.
                        circ.gates.push_back({GateKind::rz, target, -1, -2 * gamma * cubic_at[target], layer});
                    } else if (step == 2) {
                        circ.gates.push_back({GateKind::rz, target, -1, 2 * gamma * instance.d_quad[mine[1]], layer});
                    }
                }
            }
        }
        for (int q = 0; q < n; q++) {
            circ.gates.push_back({GateKind::rx, q, -1, 2 * angles.betas[j], layer});
        }
    }
    for (int q = 0; q < n; q++) {
        circ.gates.push_back({GateKind::measure, q, -1, 0, angles.p() + 1});
    }
    return circ;
}

Circuit lower_to_cz(const Circuit &circuit) {
    Circuit out = circuit;
    out.gates.clear();
    for (const auto &gate : circuit.gates) {
        if (gate.kind == GateKind::cx) {
            out.gates.push_back({GateKind::h, gate.q1, -1, 0, gate.layer});
            out.gates.push_back({GateKind::cz, gate.q0, gate.q1, 0, gate.layer});
            out.gates.push_back({GateKind::h, gate.q1, -1, 0, gate.layer});
        } else {
            out.gates.push_back(gate);
        }
    }
    return out;
}

GateCounts gate_counts(const Circuit &circuit) {
    GateCounts c;
    for (const auto &gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::h:
                c.hadamard++;
                break;
            case GateKind::rz:
                c.z_family++;
                break;
            case GateKind::rx:
                c.x_family++;
                break;
            case GateKind::cx:
            case GateKind::cz:
                c.two_qubit++;
                break;
            case GateKind::measure:
                c.measure++;
                break;
        }
    }
    return c;
}

nlohmann::json gate_counts_to_json(const GateCounts &c) {
    return {
        {"two_qubit", c.two_qubit},
        {"single_qubit_x_family", c.x_family},
        {"single_qubit_z_family", c.z_family},
        {"hadamard", c.hadamard},
        {"measure", c.measure},
    };
}

std::vector<int> two_qubit_depths(const Circuit &circuit) {
    std::vector<int> depths(circuit.p, 0);
    std::vector<int> level(circuit.qubits, 0);
    int current = -1;
    for (const auto &gate : circuit.gates) {
        if (gate.kind != GateKind::cx && gate.kind != GateKind::cz) {
            continue;
        }
        if (gate.layer != current) {
            std::fill(level.begin(), level.end(), 0);
            current = gate.layer;
        }
        int d = std::max(level[gate.q0], level[gate.q1]) + 1;
        level[gate.q0] = level[gate.q1] = d;
        depths[gate.layer - 1] = std::max(depths[gate.layer - 1], d);
    }
    return depths;
}

std::string emit_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.qubits << "];\n";
    out << "creg c[" << circuit.qubits << "];\n";
    int current = -1;
    for (const auto &gate : circuit.gates) {
        if (gate.layer != current) {
            current = gate.layer;
            if (current == 0) {
                out << "// prep\n";
            } else if (current <= circuit.p) {
                out << "// layer " << current << "\n";
            } else {
                out << "barrier q;\n";
            }
        }
        switch (gate.kind) {
            case GateKind::h:
                out << "h q[" << gate.q0 << "];\n";
                break;
            case GateKind::rz:
            case GateKind::rx:
                out << to_string(gate.kind) << "(" << format_real(gate.angle) << ") q[" << gate.q0 << "];\n";
                break;
            case GateKind::cx:
            case GateKind::cz:
                out << to_string(gate.kind) << " q[" << gate.q0 << "],q[" << gate.q1 << "];\n";
                break;
            case GateKind::measure:
                out << "measure q[" << gate.q0 << "] -> c[" << gate.q0 << "];\n";
                break;
        }
    }
    return out.str();
}

QasmSummary validate_qasm(std::string_view text) {
    static const std::regex header_re(R"(OPENQASM\s+2\.0\s*;)");
    static const std::regex include_re(R"(include\s+"qelib1\.inc"\s*;)");
    static const std::regex qreg_re(R"(qreg\s+q\[(\d+)\]\s*;)");
    static const std::regex creg_re(R"(creg\s+c\[(\d+)\]\s*;)");
    static const std::regex one_re(R"((h)\s+q\[(\d+)\]\s*;)");
    static const std::regex rot_re(R"((rz|rx)\(\s*([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)\s*\)\s+q\[(\d+)\]\s*;)");
    static const std::regex two_re(R"((cx|cz)\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;)");
    static const std::regex measure_re(R"(measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\]\s*;)");
    static const std::regex barrier_re(R"(barrier\s+q\s*;)");

    QasmSummary summary;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    int stage = 0;  // 0 header, 1 include, 2 qreg, 3 creg, 4 body
    auto fail = [&](const std::string &why) {
        throw FormatError("qasm line " + std::to_string(lineno) + ": " + why);
    };
    auto check_qubit = [&](const std::string &s) {
        int q = std::stoi(s);
        if (q >= summary.qubits) fail("qubit index out of range");
        return q;
    };
    while (std::getline(in, line)) {
        lineno++;
        auto comment = line.find("//");
        if (comment != std::string::npos) {
            line.erase(comment);
        }
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) {
            continue;
        }
        std::smatch m;
        switch (stage) {
            case 0:
                if (!std::regex_match(line, header_re)) fail("expected OPENQASM 2.0 header");
                stage = 1;
                continue;
            case 1:
                if (!std::regex_match(line, include_re)) fail("expected include \"qelib1.inc\"");
                stage = 2;
                continue;
            case 2:
                if (!std::regex_match(line, m, qreg_re)) fail("expected qreg declaration");
                summary.qubits = std::stoi(m[1]);
                stage = 3;
                continue;
            case 3:
                if (!std::regex_match(line, m, creg_re)) fail("expected creg declaration");
                summary.clbits = std::stoi(m[1]);
                stage = 4;
                continue;
            default:
                break;
        }
        if (std::regex_match(line, m, one_re)) {
            check_qubit(m[2]);
            summary.gate_counts[m[1]]++;
        } else if (std::regex_match(line, m, rot_re)) {
            check_qubit(m[5]);
            summary.gate_counts[m[1]]++;
        } else if (std::regex_match(line, m, two_re)) {
            if (check_qubit(m[2]) == check_qubit(m[3])) fail("two-qubit gate on a single qubit");
            summary.gate_counts[m[1]]++;
        } else if (std::regex_match(line, m, measure_re)) {
            check_qubit(m[1]);
            if (std::stoi(m[2]) >= summary.clbits) fail("classical bit out of range");
            summary.gate_counts["measure"]++;
        } else if (std::regex_match(line, barrier_re)) {
            summary.gate_counts["barrier"]++;
        } else {
            fail("unrecognized statement '" + line + "'");
        }
    }
    if (stage < 4) {
        throw FormatError("qasm text ends before the register declarations");
    }
    return summary;
}

}  // namespace hexq
