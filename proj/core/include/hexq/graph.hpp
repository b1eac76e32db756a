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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hexq {

/// Undirected edge, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    bool operator==(const Edge &) const = default;
    auto operator<=>(const Edge &) const = default;
};

/// Path i - w - k through a degree-2 node w of the V2 side, stored with i < k.
struct CubicTriple {
    int i = 0;
    int w = 0;
    int k = 0;
    bool operator==(const CubicTriple &) const = default;
    auto operator<=>(const CubicTriple &) const = default;
};

/// Side of the heavy-hex bipartition. V3 holds the (up to) degree-3 nodes,
/// V2 the degree <= 2 nodes that sit on lattice edges.
enum class Side : uint8_t { v2, v3 };

/// Immutable, validated heavy-hex style graph.
///
/// Invariants checked on construction: connected, bipartite with every edge
/// joining V2 and V3, max degree 2 on V2 and 3 on V3, and exactly one cubic
/// triple centered on every degree-2 V2 node.
class HeavyHexGraph {
   public:
    /// Builds the graph and derives the bipartition and cubic triples.
    ///
    /// When `cubic` is given, it must be the same set of triples the graph
    /// implies (up to the choice of V2 side for graphs without degree-3
    /// nodes); it then also fixes the triple order. `name` is informational.
    static HeavyHexGraph from_edges(
        int node_count,
        std::vector<Edge> edges,
        std::string name = "custom",
        std::optional<std::vector<CubicTriple>> cubic = std::nullopt);

    int node_count() const noexcept {
        return node_count_;
    }
    const std::string &name() const noexcept {
        return name_;
    }
    std::span<const Edge> edges() const noexcept {
        return edges_;
    }
    std::span<const CubicTriple> cubic() const noexcept {
        return cubic_;
    }
    std::span<const int> neighbors(int node) const;
    int degree(int node) const;
    Side side(int node) const;
    std::vector<int> nodes_on(Side s) const;
    /// Index of edge {a, b} in edges(), if present.
    std::optional<size_t> edge_index(int a, int b) const;
    int max_degree() const;

    bool operator==(const HeavyHexGraph &other) const {
        return node_count_ == other.node_count_ && edges_ == other.edges_ && cubic_ == other.cubic_;
    }

   private:
    HeavyHexGraph() = default;

    int node_count_ = 0;
    std::string name_;
    std::vector<Edge> edges_;
    std::vector<CubicTriple> cubic_;
    std::vector<int> adjacency_offsets_;
    std::vector<int> adjacency_;
    std::vector<Side> side_;
};

enum class LayoutKind { eagle127, heron133, heron156, guadalupe16, falcon27, parametric };

/// Named device layout or a parametric lattice of rows x cols hexagons.
struct LayoutSpec {
    LayoutKind kind = LayoutKind::guadalupe16;
    int rows = 0;
    int cols = 0;

    /// Accepts "eagle127", "heron133", "heron156", "guadalupe16", "falcon27",
    /// "parametric:RxC" and "parametric(R,C)".
    static LayoutSpec parse(std::string_view text);
    std::string name() const;
};

/// Builds a heavy-hex coupling graph.
///
/// Device layouts follow IBM's row-and-bridge numbering. The parametric
/// lattice is a brick-wall honeycomb of rows x cols hexagons with every edge
/// subdivided by one V2 node; parametric(1,1) is a single heavy hexagon, a
/// 12-cycle with 6 V3 corners and 6 V2 edge nodes.
HeavyHexGraph build_heavy_hex(const LayoutSpec &layout);
HeavyHexGraph build_heavy_hex(std::string_view layout_name);

/// Names of the built-in device layouts.
std::vector<std::string> device_layout_names();

/// Coupling-map data file: {"format": "hexq-layout", "version": 1, "name",
/// "n", "edges"}.
nlohmann::json layout_to_json(const HeavyHexGraph &graph);
HeavyHexGraph layout_from_json(const nlohmann::json &j);

}  // namespace hexq
