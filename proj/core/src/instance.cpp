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

#include "hexq/instance.hpp"

#include <fstream>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/rng.hpp"

namespace hexq {

namespace {

constexpr uint64_t kLinearKind = 1;
constexpr uint64_t kQuadraticKind = 2;
constexpr uint64_t kCubicKind = 3;

std::vector<int8_t> draw(size_t count, CoefficientMode mode, uint64_t seed, uint64_t kind) {
    std::vector<int8_t> out(count);
    for (size_t k = 0; k < count; k++) {
        switch (mode) {
            case CoefficientMode::all_positive:
                out[k] = 1;
                break;
            case CoefficientMode::all_negative:
                out[k] = -1;
                break;
            default:
                out[k] = (keyed_u64(seed, kind, k) >> 63) ? int8_t{1} : int8_t{-1};
                break;
        }
    }
    return out;
}

void check_pm1(const std::vector<int8_t> &values, const char *what) {
    for (auto v : values) {
        if (v != 1 && v != -1) {
            throw InvalidArgument(std::string(what) + " coefficient " + std::to_string(v) + " is not +-1");
        }
    }
}

std::vector<int8_t> read_coefficients(const nlohmann::json &j) {
    std::vector<int8_t> out;
    for (const auto &v : j) {
        out.push_back(static_cast<int8_t>(v.get<int>()));
    }
    return out;
}

}  // namespace

std::string to_string(CoefficientMode mode) {
    switch (mode) {
        case CoefficientMode::random_pm1:
            return "random_pm1";
        case CoefficientMode::all_positive:
            return "all_positive";
        case CoefficientMode::all_negative:
            return "all_negative";
        case CoefficientMode::imported:
            return "imported";
    }
    return "unknown";
}

CoefficientMode parse_coefficient_mode(std::string_view text) {
    if (text == "random_pm1" || text == "random") return CoefficientMode::random_pm1;
    if (text == "all_positive" || text == "positive") return CoefficientMode::all_positive;
    if (text == "all_negative" || text == "negative") return CoefficientMode::all_negative;
    if (text == "imported") return CoefficientMode::imported;
    throw InvalidArgument("unknown coefficient mode '" + std::string(text) + "'");
}

std::vector<Term> IsingInstance::terms() const {
    std::vector<Term> out;
    out.reserve(term_count());
    for (int v = 0; v < node_count(); v++) {
        out.push_back({{v, 0, 0}, 1, d_lin[v]});
    }
    auto edges = graph.edges();
    for (size_t k = 0; k < edges.size(); k++) {
        out.push_back({{edges[k].u, edges[k].v, 0}, 2, d_quad[k]});
    }
    auto cubic = graph.cubic();
    for (size_t k = 0; k < cubic.size(); k++) {
        out.push_back({{cubic[k].i, cubic[k].w, cubic[k].k}, 3, d_cubic[k]});
    }
    return out;
}

std::string default_instance_id(const std::string &layout, CoefficientMode mode, uint64_t seed) {
    return layout + "-" + to_string(mode) + "-s" + std::to_string(seed);
}

IsingInstance generate_instance(const HeavyHexGraph &graph, CoefficientMode mode, uint64_t seed) {
    if (mode == CoefficientMode::imported) {
        throw InvalidArgument("imported instances cannot be generated; load them from a file");
    }
    return IsingInstance{
        graph,
        draw(graph.node_count(), mode, seed, kLinearKind),
        draw(graph.edges().size(), mode, seed, kQuadraticKind),
        draw(graph.cubic().size(), mode, seed, kCubicKind),
        mode,
        seed,
        default_instance_id(graph.name(), mode, seed)};
}

IsingInstance make_instance(
    HeavyHexGraph graph,
    std::vector<int8_t> d_lin,
    std::vector<int8_t> d_quad,
    std::vector<int8_t> d_cubic,
    CoefficientMode mode,
    uint64_t seed,
    std::string id) {
    if (d_lin.size() != static_cast<size_t>(graph.node_count()) || d_quad.size() != graph.edges().size() ||
        d_cubic.size() != graph.cubic().size()) {
        throw InvalidArgument("coefficient arrays do not match the graph's node, edge, and cubic counts");
    }
    check_pm1(d_lin, "linear");
    check_pm1(d_quad, "quadratic");
    check_pm1(d_cubic, "cubic");
    if (id.empty()) {
        id = default_instance_id(graph.name(), mode, seed);
    }
    return IsingInstance{
        std::move(graph), std::move(d_lin), std::move(d_quad), std::move(d_cubic), mode, seed, std::move(id)};
}

int64_t energy(const IsingInstance &instance, std::span<const int8_t> spins) {
    if (spins.size() != static_cast<size_t>(instance.node_count())) {
        throw InvalidArgument(
            "spin configuration has length " + std::to_string(spins.size()) + ", instance has " +
            std::to_string(instance.node_count()) + " nodes");
    }
    int64_t total = 0;
    for (size_t v = 0; v < spins.size(); v++) {
        total += instance.d_lin[v] * spins[v];
    }
    auto edges = instance.graph.edges();
    for (size_t k = 0; k < edges.size(); k++) {
        total += instance.d_quad[k] * spins[edges[k].u] * spins[edges[k].v];
    }
    auto cubic = instance.graph.cubic();
    for (size_t k = 0; k < cubic.size(); k++) {
        total += instance.d_cubic[k] * spins[cubic[k].i] * spins[cubic[k].w] * spins[cubic[k].k];
    }
    return total;
}

SpinConfig spins_from_index(uint64_t index, int n) {
    SpinConfig z(n);
    for (int j = 0; j < n; j++) {
        z[j] = ((index >> j) & 1) ? int8_t{1} : int8_t{-1};
    }
    return z;
}

nlohmann::json instance_to_json(const IsingInstance &instance) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : instance.graph.edges()) {
        edges.push_back({e.u, e.v});
    }
    nlohmann::json cubic = nlohmann::json::array();
    for (const auto &t : instance.graph.cubic()) {
        cubic.push_back({t.i, t.w, t.k});
    }
    auto ints = [](const std::vector<int8_t> &v) {
        nlohmann::json a = nlohmann::json::array();
        for (auto x : v) {
            a.push_back(static_cast<int>(x));
        }
        return a;
    };
    return {
        {"version", 1},
        {"id", instance.id},
        {"layout", instance.graph.name()},
        {"n", instance.node_count()},
        {"edges", std::move(edges)},
        {"cubic", std::move(cubic)},
        {"d_lin", ints(instance.d_lin)},
        {"d_quad", ints(instance.d_quad)},
        {"d_cubic", ints(instance.d_cubic)},
        {"seed", instance.seed},
        {"mode", to_string(instance.mode)},
    };
}

IsingInstance instance_from_json(const nlohmann::json &j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw FormatError("unsupported instance version " + j.at("version").dump());
        }
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto &e : j.at("edges")) {
            edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        }
        std::vector<CubicTriple> cubic;
        for (const auto &t : j.at("cubic")) {
            cubic.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
        }
        // Coefficient arrays follow the file's edge order, which from_edges
        // preserves, but i/k of a triple may be swapped by normalization.
        auto graph = HeavyHexGraph::from_edges(n, std::move(edges), j.at("layout").get<std::string>(), cubic);
        std::string id = j.contains("id") ? j.at("id").get<std::string>() : std::string();
        return make_instance(
            std::move(graph),
            read_coefficients(j.at("d_lin")),
            read_coefficients(j.at("d_quad")),
            read_coefficients(j.at("d_cubic")),
            parse_coefficient_mode(j.at("mode").get<std::string>()),
            j.at("seed").get<uint64_t>(),
            std::move(id));
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed instance: ") + ex.what());
    }
}

void save_instance(const IsingInstance &instance, const std::filesystem::path &path) {
    write_json_file(instance_to_json(instance), path);
}

IsingInstance load_instance(const std::filesystem::path &path) {
    return instance_from_json(read_json_file(path));
}

nlohmann::json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingInput("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error &ex) {
        throw FormatError(path.string() + ": " + ex.what());
    }
}

void write_json_file(const nlohmann::json &j, const std::filesystem::path &path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgument("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

}  // namespace hexq
