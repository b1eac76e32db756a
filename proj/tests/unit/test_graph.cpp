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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "hexq/error.hpp"
#include "hexq/graph.hpp"
#include "hexq/instance.hpp"

namespace hexq {
namespace {

struct LayoutCase {
    const char *name;
    int nodes;
    int edges;
    int cubic;
};

class DeviceLayout : public testing::TestWithParam<LayoutCase> {};

TEST_P(DeviceLayout, Sizes) {
    const auto &c = GetParam();
    auto g = build_heavy_hex(c.name);
    EXPECT_EQ(g.node_count(), c.nodes);
    EXPECT_EQ(g.edges().size(), size_t(c.edges));
    EXPECT_EQ(g.cubic().size(), size_t(c.cubic));
    EXPECT_EQ(g.max_degree(), 3);
}

TEST_P(DeviceLayout, HeavyHexStructure) {
    auto g = build_heavy_hex(GetParam().name);
    for (const auto &e : g.edges()) {
        EXPECT_LT(e.u, e.v);
        EXPECT_NE(g.side(e.u), g.side(e.v));
    }
    std::set<int> centers;
    for (int v = 0; v < g.node_count(); v++) {
        if (g.side(v) == Side::v2) {
            EXPECT_LE(g.degree(v), 2) << "node " << v;
        }
        if (g.side(v) == Side::v2 && g.degree(v) == 2) {
            centers.insert(v);
        }
    }
    // One cubic triple per degree-2 V2 node, centered on it.
    std::set<int> seen;
    for (const auto &t : g.cubic()) {
        EXPECT_TRUE(centers.contains(t.w));
        EXPECT_TRUE(seen.insert(t.w).second);
        EXPECT_TRUE(g.edge_index(t.i, t.w).has_value());
        EXPECT_TRUE(g.edge_index(t.w, t.k).has_value());
    }
    EXPECT_EQ(seen, centers);
}

TEST_P(DeviceLayout, JsonRoundTrip) {
    auto g = build_heavy_hex(GetParam().name);
    auto back = layout_from_json(layout_to_json(g));
    EXPECT_EQ(back, g);
}

TEST_P(DeviceLayout, ShippedDataFileMatches) {
    std::filesystem::path file =
        std::filesystem::path(HEXQ_SOURCE_DIR) / "core/data/layouts" / (std::string(GetParam().name) + ".json");
    ASSERT_TRUE(std::filesystem::exists(file)) << file;
    EXPECT_EQ(layout_from_json(read_json_file(file)), build_heavy_hex(GetParam().name));
}

INSTANTIATE_TEST_SUITE_P(
    All,
    DeviceLayout,
    testing::Values(
        LayoutCase{"guadalupe16", 16, 16, 6},
        LayoutCase{"falcon27", 27, 28, 11},
        LayoutCase{"eagle127", 127, 144, 71},
        LayoutCase{"heron133", 133, 150, 73},
        LayoutCase{"heron156", 156, 176, 84}),
    [](const auto &info) { return std::string(info.param.name); });

TEST(Parametric, CellCounts) {
    auto one = build_heavy_hex("parametric:1x1");
    EXPECT_EQ(one.node_count(), 12);
    EXPECT_EQ(one.edges().size(), 12u);
    auto two = build_heavy_hex("parametric(1,2)");
    EXPECT_EQ(two.node_count(), 21);
    EXPECT_EQ(two.edges().size(), 22u);
}

TEST(Parametric, GrowsWithGrid) {
    int prev = 0;
    for (int c = 1; c <= 4; c++) {
        auto g = build_heavy_hex("parametric:2x" + std::to_string(c));
        EXPECT_GT(g.node_count(), prev);
        prev = g.node_count();
    }
}

TEST(Layout, RejectsUnknownNames) {
    EXPECT_THROW(build_heavy_hex("osprey433"), InvalidArgument);
    EXPECT_THROW(build_heavy_hex("parametric:0x3"), InvalidArgument);
    EXPECT_THROW(build_heavy_hex("parametric:2"), InvalidArgument);
}

TEST(FromEdges, RejectsNonHeavyHex) {
    // Triangle: odd cycle.
    EXPECT_THROW(HeavyHexGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), InvalidArgument);
    // Degree 4.
    EXPECT_THROW(HeavyHexGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), InvalidArgument);
    // Two components.
    EXPECT_THROW(HeavyHexGraph::from_edges(4, {{0, 1}, {2, 3}}), InvalidArgument);
    // Degree-3 nodes on both sides.
    EXPECT_THROW(
        HeavyHexGraph::from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {3, 7}}), InvalidArgument);
    EXPECT_THROW(HeavyHexGraph::from_edges(2, {{0, 0}}), InvalidArgument);
}

TEST(FromEdges, PathHasOneTriplePerInteriorV2Node) {
    auto g = HeavyHexGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    // A path has no degree-3 node; either side may be V2, but each interior
    // V2 node centers exactly one triple.
    for (const auto &t : g.cubic()) {
        EXPECT_EQ(g.side(t.w), Side::v2);
        EXPECT_EQ(g.degree(t.w), 2);
    }
    EXPECT_GE(g.cubic().size(), 1u);
}

TEST(Layout, MalformedJsonIsFormatError) {
    EXPECT_THROW(layout_from_json(nlohmann::json{{"format", "other"}}), FormatError);
    EXPECT_THROW(layout_from_json(nlohmann::json::array()), FormatError);
}

}  // namespace
}  // namespace hexq
