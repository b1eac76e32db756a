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

#include "hexq/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "hexq/error.hpp"

namespace hexq {

namespace {

int max_degree_on(const std::vector<int> &degree, const std::vector<int> &color, int which) {
    int best = 0;
    for (size_t v = 0; v < degree.size(); v++) {
        if (color[v] == which) {
            best = std::max(best, degree[v]);
        }
    }
    return best;
}

std::vector<CubicTriple> derive_cubic(
    int n, const std::vector<int> &offsets, const std::vector<int> &adjacency, const std::vector<Side> &side) {
    std::vector<CubicTriple> out;
    for (int w = 0; w < n; w++) {
        if (side[w] != Side::v2 || offsets[w + 1] - offsets[w] != 2) {
            continue;
        }
        int a = adjacency[offsets[w]];
        int b = adjacency[offsets[w] + 1];
        out.push_back({std::min(a, b), w, std::max(a, b)});
    }
    return out;
}

CubicTriple normalized(CubicTriple t) {
    if (t.i > t.k) {
        std::swap(t.i, t.k);
    }
    return t;
}

}  // namespace

HeavyHexGraph HeavyHexGraph::from_edges(
    int node_count, std::vector<Edge> edges, std::string name, std::optional<std::vector<CubicTriple>> cubic) {
    if (node_count < 2) {
        throw InvalidArgument("heavy-hex graph needs at least 2 nodes, got " + std::to_string(node_count));
    }
    std::set<Edge> seen;
    for (auto &e : edges) {
        if (e.u == e.v) {
            throw InvalidArgument("self loop on node " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        if (e.u < 0 || e.v >= node_count) {
            throw InvalidArgument("edge endpoint out of range");
        }
        if (!seen.insert(e).second) {
            throw InvalidArgument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    }

    HeavyHexGraph g;
    g.node_count_ = node_count;
    g.name_ = std::move(name);
    g.edges_ = std::move(edges);

    std::vector<int> degree(node_count, 0);
    for (const auto &e : g.edges_) {
        degree[e.u]++;
        degree[e.v]++;
    }
    g.adjacency_offsets_.assign(node_count + 1, 0);
    for (int v = 0; v < node_count; v++) {
        g.adjacency_offsets_[v + 1] = g.adjacency_offsets_[v] + degree[v];
    }
    g.adjacency_.assign(g.adjacency_offsets_.back(), 0);
    std::vector<int> fill(g.adjacency_offsets_.begin(), g.adjacency_offsets_.end() - 1);
    for (const auto &e : g.edges_) {
        g.adjacency_[fill[e.u]++] = e.v;
        g.adjacency_[fill[e.v]++] = e.u;
    }
    for (int v = 0; v < node_count; v++) {
        std::sort(g.adjacency_.begin() + g.adjacency_offsets_[v], g.adjacency_.begin() + g.adjacency_offsets_[v + 1]);
        if (degree[v] > 3) {
            throw InvalidArgument("node " + std::to_string(v) + " has degree " + std::to_string(degree[v]) + " > 3");
        }
    }

    // Two-color from node 0; this also checks connectivity.
    std::vector<int> color(node_count, -1);
    std::queue<int> frontier;
    color[0] = 0;
    frontier.push(0);
    int reached = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int k = g.adjacency_offsets_[v]; k < g.adjacency_offsets_[v + 1]; k++) {
            int u = g.adjacency_[k];
            if (color[u] < 0) {
                color[u] = 1 - color[v];
                reached++;
                frontier.push(u);
            } else if (color[u] == color[v]) {
                throw InvalidArgument("graph is not bipartite (odd cycle through node " + std::to_string(u) + ")");
            }
        }
    }
    if (reached != node_count) {
        throw InvalidArgument("graph is not connected");
    }

    int max0 = max_degree_on(degree, color, 0);
    int max1 = max_degree_on(degree, color, 1);
    if (max0 == 3 && max1 == 3) {
        throw InvalidArgument("both bipartition sides contain degree-3 nodes; not a heavy-hex graph");
    }

    auto assign = [&](int v2_color) {
        g.side_.assign(node_count, Side::v3);
        for (int v = 0; v < node_count; v++) {
            if (color[v] == v2_color) {
                g.side_[v] = Side::v2;
            }
        }
    };

    std::vector<int> candidates;
    if (max0 == 3) {
        candidates = {1};
    } else if (max1 == 3) {
        candidates = {0};
    } else {
        // No degree-3 node: prefer the side with more degree-2 nodes, then the
        // side not containing node 0.
        int two0 = 0;
        int two1 = 0;
        for (int v = 0; v < node_count; v++) {
            if (degree[v] == 2) {
                (color[v] == 0 ? two0 : two1)++;
            }
        }
        candidates = two0 > two1 ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    }

    if (!cubic.has_value()) {
        assign(candidates.front());
        g.cubic_ = derive_cubic(node_count, g.adjacency_offsets_, g.adjacency_, g.side_);
        return g;
    }

    std::vector<CubicTriple> given;
    given.reserve(cubic->size());
    for (auto t : *cubic) {
        given.push_back(normalized(t));
    }
    std::vector<CubicTriple> given_sorted = given;
    std::sort(given_sorted.begin(), given_sorted.end(), [](const CubicTriple &a, const CubicTriple &b) {
        return a.w < b.w;
    });
    for (int c : candidates) {
        assign(c);
        auto derived = derive_cubic(node_count, g.adjacency_offsets_, g.adjacency_, g.side_);
        if (derived == given_sorted) {
            g.cubic_ = std::move(given);
            return g;
        }
    }
    throw InvalidArgument("cubic triples do not match the degree-2 V2 nodes of the graph");
}

std::span<const int> HeavyHexGraph::neighbors(int node) const {
    if (node < 0 || node >= node_count_) {
        throw InvalidArgument("node out of range");
    }
    return std::span<const int>(adjacency_).subspan(
        adjacency_offsets_[node], adjacency_offsets_[node + 1] - adjacency_offsets_[node]);
}

int HeavyHexGraph::degree(int node) const {
    return static_cast<int>(neighbors(node).size());
}

Side HeavyHexGraph::side(int node) const {
    if (node < 0 || node >= node_count_) {
        throw InvalidArgument("node out of range");
    }
    return side_[node];
}

std::vector<int> HeavyHexGraph::nodes_on(Side s) const {
    std::vector<int> out;
    for (int v = 0; v < node_count_; v++) {
        if (side_[v] == s) {
            out.push_back(v);
        }
    }
    return out;
}

std::optional<size_t> HeavyHexGraph::edge_index(int a, int b) const {
    Edge key{std::min(a, b), std::max(a, b)};
    for (size_t k = 0; k < edges_.size(); k++) {
        if (edges_[k] == key) {
            return k;
        }
    }
    return std::nullopt;
}

int HeavyHexGraph::max_degree() const {
    int best = 0;
    for (int v = 0; v < node_count_; v++) {
        best = std::max(best, adjacency_offsets_[v + 1] - adjacency_offsets_[v]);
    }
    return best;
}

}  // namespace hexq
