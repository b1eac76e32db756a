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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/import.hpp"
#include "hexq/instance.hpp"
#include "hexq/rng.hpp"

namespace hexq {
namespace {

std::string as_text(const std::vector<Term> &terms) {
    std::ostringstream out;
    out << "# exported terms\n";
    for (const auto &t : terms) {
        for (int q = 0; q < t.order; q++) out << t.nodes[q] << ' ';
        out << t.coeff << '\n';
    }
    return out.str();
}

std::string as_tuple_object(const std::vector<Term> &terms) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &t : terms) {
        std::string key = "(";
        for (int q = 0; q < t.order; q++) key += (q ? ", " : "") + std::to_string(t.nodes[q]);
        if (t.order == 1) key += ",";
        key += ")";
        j[key] = t.coeff;
    }
    return j.dump();
}

std::string as_pair_list(const std::vector<Term> &terms) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &t : terms) {
        j.push_back({std::vector<int>(t.nodes.begin(), t.nodes.begin() + t.order), t.coeff});
    }
    return j.dump();
}

template <class T>
std::vector<T> sorted(std::span<const T> xs) {
    std::vector<T> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    return v;
}

void expect_same_energies(const IsingInstance &a, const IsingInstance &b) {
    ASSERT_EQ(a.node_count(), b.node_count());
    Rng rng(1);
    for (int trial = 0; trial < 300; trial++) {
        SpinConfig z(a.node_count());
        for (auto &s : z) s = rng.below(2) ? 1 : -1;
        ASSERT_EQ(energy(a, z), energy(b, z));
    }
}

TEST(Import, AllFormatsReproduceInstance) {
    auto inst = generate_instance(build_heavy_hex("eagle127"), CoefficientMode::random_pm1, 13);
    auto terms = inst.terms();
    for (const auto &text : {as_text(terms), as_tuple_object(terms), as_pair_list(terms)}) {
        auto back = instance_from_terms(parse_term_list(text), "imp");
        EXPECT_EQ(back.mode, CoefficientMode::imported);
        EXPECT_EQ(back.id, "imp");
        // Edge order follows the file; the structure must not.
        EXPECT_EQ(sorted(back.graph.edges()), sorted(inst.graph.edges()));
        EXPECT_EQ(sorted(back.graph.cubic()), sorted(inst.graph.cubic()));
        expect_same_energies(back, inst);
    }
}

TEST(Import, FileConverterAndNativePassThrough) {
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 2);
    auto dir = std::filesystem::temp_directory_path() / "hexq_import_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "terms.txt") << as_text(inst.terms());
    }
    auto converted = import_instance_file(dir / "terms.txt");
    expect_same_energies(converted, inst);
    EXPECT_EQ(converted.id, "terms");
    save_instance(inst, dir / "native.json");
    EXPECT_EQ(import_instance_file(dir / "native.json"), inst);
    EXPECT_THROW(import_instance_file(dir / "absent.txt"), MissingInput);
    std::filesystem::remove_all(dir);
}

TEST(Import, RejectsMalformedLists) {
    EXPECT_THROW(parse_term_list(""), FormatError);
    EXPECT_THROW(parse_term_list("0 1 2\n"), FormatError);
    EXPECT_THROW(parse_term_list("0 2\n"), FormatError);
    EXPECT_THROW(parse_term_list("0 1 2 3 1\n"), FormatError);
    EXPECT_THROW(parse_term_list("0 0 1\n"), FormatError);
    EXPECT_THROW(parse_term_list("0 1\n0 1\n"), FormatError);
    EXPECT_THROW(parse_term_list("[[0], 1, 2]"), FormatError);
    EXPECT_THROW(parse_term_list("{\"(0,)\": 0.5}"), FormatError);
}

TEST(Import, RejectsNonHeavyHexStructure) {
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 2);
    auto terms = inst.terms();
    // Drop one linear term.
    auto missing = terms;
    missing.erase(missing.begin());
    EXPECT_THROW(instance_from_terms(missing, "x"), FormatError);
    // A cubic term on a path the graph does not center.
    auto extra = terms;
    extra.push_back({{0, 1, 14}, 3, 1});
    EXPECT_THROW(instance_from_terms(extra, "x"), FormatError);
    // A triangle of quadratic terms is not bipartite.
    std::vector<Term> tri = {{{0, 0, 0}, 1, 1}, {{1, 0, 0}, 1, 1}, {{2, 0, 0}, 1, 1},
                             {{0, 1, 0}, 2, 1}, {{1, 2, 0}, 2, 1}, {{0, 2, 0}, 2, 1}};
    EXPECT_THROW(instance_from_terms(tri, "x"), FormatError);
}

}  // namespace
}  // namespace hexq
