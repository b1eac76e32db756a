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

#include <algorithm>
#include <charconv>
#include <map>

#include "hexq/error.hpp"
#include "hexq/graph.hpp"

namespace hexq {

namespace {

// IBM row-and-bridge layout. Rows of qubits are chained left to right;
// after each row come the bridge qubits of the following gap, each joining
// the same column in the row above and the row below. A final gap with no
// row below produces pendant qubits.
struct RowBridgeLayout {
    struct Row {
        int first_col;
        int length;
    };
    std::vector<Row> rows;
    std::vector<std::vector<int>> gap_cols;
};

HeavyHexGraph build_row_bridge(const RowBridgeLayout &layout, const std::string &name) {
    struct Bridge {
        size_t gap;
        int col;
        int id;
    };
    std::vector<std::map<int, int>> row_ids(layout.rows.size());
    std::vector<Bridge> bridges;
    std::vector<Edge> edges;
    int next = 0;
    for (size_t r = 0; r < layout.rows.size(); r++) {
        const auto &row = layout.rows[r];
        for (int c = 0; c < row.length; c++) {
            row_ids[r][row.first_col + c] = next++;
            if (c > 0) {
                edges.push_back({next - 2, next - 1});
            }
        }
        if (r < layout.gap_cols.size()) {
            for (int col : layout.gap_cols[r]) {
                bridges.push_back({r, col, next++});
            }
        }
    }
    for (const auto &b : bridges) {
        edges.push_back({row_ids[b.gap].at(b.col), b.id});
        if (b.gap + 1 < layout.rows.size()) {
            edges.push_back({b.id, row_ids[b.gap + 1].at(b.col)});
        }
    }
    for (auto &e : edges) {
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges.begin(), edges.end());
    return HeavyHexGraph::from_edges(next, std::move(edges), name);
}

HeavyHexGraph build_eagle127() {
    RowBridgeLayout l;
    l.rows = {{0, 14}, {0, 15}, {0, 15}, {0, 15}, {0, 15}, {0, 15}, {1, 14}};
    for (int g = 0; g < 6; g++) {
        l.gap_cols.push_back(g % 2 == 0 ? std::vector<int>{0, 4, 8, 12} : std::vector<int>{2, 6, 10, 14});
    }
    return build_row_bridge(l, "eagle127");
}

HeavyHexGraph build_heron133() {
    RowBridgeLayout l;
    l.rows.assign(7, {0, 15});
    for (int g = 0; g < 7; g++) {
        l.gap_cols.push_back(g % 2 == 0 ? std::vector<int>{0, 4, 8, 12} : std::vector<int>{2, 6, 10, 14});
    }
    return build_row_bridge(l, "heron133");
}

HeavyHexGraph build_heron156() {
    RowBridgeLayout l;
    l.rows.assign(8, {0, 16});
    for (int g = 0; g < 7; g++) {
        l.gap_cols.push_back(g % 2 == 0 ? std::vector<int>{3, 7, 11, 15} : std::vector<int>{1, 5, 9, 13});
    }
    return build_row_bridge(l, "heron156");
}

// Falcon-family maps (ibmq_guadalupe, 16 qubits; ibmq_montreal-style, 27
// qubits).
HeavyHexGraph build_guadalupe16() {
    std::vector<Edge> edges = {
        {0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 7},
        {7, 10}, {8, 9}, {8, 11}, {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14},
    };
    return HeavyHexGraph::from_edges(16, std::move(edges), "guadalupe16");
}

HeavyHexGraph build_falcon27() {
    std::vector<Edge> edges = {
        {0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 7}, {7, 10}, {8, 9},
        {8, 11}, {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18},
        {18, 21}, {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26},
    };
    return HeavyHexGraph::from_edges(27, std::move(edges), "falcon27");
}

// Brick-wall honeycomb with vertex rows 0..rows and columns 0..2*cols+1.
// Horizontal edges join consecutive columns; vertical edges between vertex
// rows r and r+1 sit at columns x with x % 2 == r % 2. Vertices left with
// degree <= 1 are pruned, then every edge is subdivided by one V2 node.
// Numbering: each vertex row's chain (corners and horizontal edge nodes,
// left to right), followed by the vertical edge nodes below that row.
HeavyHexGraph build_parametric(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("parametric layout needs rows >= 1 and cols >= 1");
    }
    int width = 2 * cols + 2;
    auto vid = [&](int r, int x) {
        return r * width + x;
    };
    int total = (rows + 1) * width;
    std::vector<std::vector<int>> adj(total);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int r = 0; r <= rows; r++) {
        for (int x = 0; x + 1 < width; x++) {
            link(vid(r, x), vid(r, x + 1));
        }
    }
    for (int r = 0; r < rows; r++) {
        for (int x = r % 2; x < width; x += 2) {
            link(vid(r, x), vid(r + 1, x));
        }
    }
    std::vector<bool> alive(total, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < total; v++) {
            if (!alive[v]) {
                continue;
            }
            int live_degree = 0;
            for (int u : adj[v]) {
                live_degree += alive[u] ? 1 : 0;
            }
            if (live_degree <= 1) {
                alive[v] = false;
                changed = true;
            }
        }
    }

    std::map<int, int> corner_id;
    std::vector<Edge> edges;
    int next = 0;
    for (int r = 0; r <= rows; r++) {
        int prev = -1;
        for (int x = 0; x < width; x++) {
            int v = vid(r, x);
            if (!alive[v]) {
                continue;
            }
            if (prev >= 0) {
                int mid = next++;
                edges.push_back({corner_id.at(prev), mid});
                corner_id[v] = next++;
                edges.push_back({mid, corner_id[v]});
            } else {
                corner_id[v] = next++;
            }
            prev = v;
        }
        if (r == rows) {
            break;
        }
        for (int x = r % 2; x < width; x += 2) {
            int a = vid(r, x);
            int b = vid(r + 1, x);
            if (!alive[a] || !alive[b]) {
                continue;
            }
            int mid = next++;
            edges.push_back({corner_id.at(a), mid});
            // The lower endpoint is numbered with the next row; patch below.
            edges.push_back({-1 - b, mid});
        }
    }
    for (auto &e : edges) {
        if (e.u < 0) {
            e.u = corner_id.at(-1 - e.u);
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges.begin(), edges.end());
    return HeavyHexGraph::from_edges(
        next, std::move(edges), "parametric:" + std::to_string(rows) + "x" + std::to_string(cols));
}

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument("bad integer in layout name: '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

LayoutSpec LayoutSpec::parse(std::string_view text) {
    static const std::map<std::string, LayoutKind, std::less<>> named = {
        {"eagle127", LayoutKind::eagle127},
        {"heron133", LayoutKind::heron133},
        {"heron156", LayoutKind::heron156},
        {"guadalupe16", LayoutKind::guadalupe16},
        {"falcon27", LayoutKind::falcon27},
    };
    if (auto it = named.find(text); it != named.end()) {
        return {it->second, 0, 0};
    }
    std::string_view body;
    char sep = 0;
    if (text.starts_with("parametric:")) {
        body = text.substr(11);
        sep = 'x';
    } else if (text.starts_with("parametric(") && text.ends_with(")")) {
        body = text.substr(11, text.size() - 12);
        sep = ',';
    } else {
        throw InvalidArgument("unknown layout '" + std::string(text) + "'");
    }
    auto pos = body.find(sep);
    if (pos == std::string_view::npos) {
        throw InvalidArgument("parametric layout needs two dimensions: '" + std::string(text) + "'");
    }
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    LayoutSpec spec{LayoutKind::parametric, parse_int(trim(body.substr(0, pos))), parse_int(trim(body.substr(pos + 1)))};
    if (spec.rows < 1 || spec.cols < 1) {
        throw InvalidArgument("parametric layout needs rows >= 1 and cols >= 1");
    }
    return spec;
}

std::string LayoutSpec::name() const {
    switch (kind) {
        case LayoutKind::eagle127:
            return "eagle127";
        case LayoutKind::heron133:
            return "heron133";
        case LayoutKind::heron156:
            return "heron156";
        case LayoutKind::guadalupe16:
            return "guadalupe16";
        case LayoutKind::falcon27:
            return "falcon27";
        case LayoutKind::parametric:
            return "parametric:" + std::to_string(rows) + "x" + std::to_string(cols);
    }
    return "unknown";
}

HeavyHexGraph build_heavy_hex(const LayoutSpec &layout) {
    switch (layout.kind) {
        case LayoutKind::eagle127:
            return build_eagle127();
        case LayoutKind::heron133:
            return build_heron133();
        case LayoutKind::heron156:
            return build_heron156();
        case LayoutKind::guadalupe16:
            return build_guadalupe16();
        case LayoutKind::falcon27:
            return build_falcon27();
        case LayoutKind::parametric:
            return build_parametric(layout.rows, layout.cols);
    }
    throw InvalidArgument("unknown layout kind");
}

HeavyHexGraph build_heavy_hex(std::string_view layout_name) {
    return build_heavy_hex(LayoutSpec::parse(layout_name));
}

std::vector<std::string> device_layout_names() {
    return {"eagle127", "heron133", "heron156", "guadalupe16", "falcon27"};
}

nlohmann::json layout_to_json(const HeavyHexGraph &graph) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : graph.edges()) {
        edges.push_back({e.u, e.v});
    }
    return {
        {"format", "hexq-layout"},
        {"version", 1},
        {"name", graph.name()},
        {"n", graph.node_count()},
        {"edges", std::move(edges)},
    };
}

HeavyHexGraph layout_from_json(const nlohmann::json &j) {
    try {
        if (j.at("format").get<std::string>() != "hexq-layout") {
            throw FormatError("not a hexq-layout document");
        }
        if (j.at("version").get<int>() != 1) {
            throw FormatError("unsupported hexq-layout version " + j.at("version").dump());
        }
        std::vector<Edge> edges;
        for (const auto &e : j.at("edges")) {
            edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        }
        return HeavyHexGraph::from_edges(j.at("n").get<int>(), std::move(edges), j.at("name").get<std::string>());
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed layout file: ") + ex.what());
    }
}

}  // namespace hexq
