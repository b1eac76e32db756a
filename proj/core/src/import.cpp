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

#include "hexq/import.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "hexq/error.hpp"

namespace hexq {

namespace {

Term term_from(std::vector<int> nodes, int coeff) {
    if (nodes.empty() || nodes.size() > 3) {
        throw FormatError("terms must have 1 to 3 nodes");
    }
    for (int v : nodes) {
        if (v < 0) throw FormatError("negative node index in term list");
    }
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
        throw FormatError("term repeats a node");
    }
    Term t;
    std::copy(nodes.begin(), nodes.end(), t.nodes.begin());
    t.order = static_cast<int>(nodes.size());
    t.coeff = coeff;
    return t;
}

int coefficient(const nlohmann::json &value) {
    if (!value.is_number()) {
        throw FormatError("term coefficient is not a number");
    }
    double d = value.get<double>();
    if (d != 1.0 && d != -1.0) {
        throw FormatError("term coefficient must be +1 or -1");
    }
    return static_cast<int>(d);
}

std::vector<int> nodes_from_key(const std::string &key) {
    static const std::regex number(R"(-?\d+)");
    std::vector<int> nodes;
    for (auto it = std::sregex_iterator(key.begin(), key.end(), number); it != std::sregex_iterator(); ++it) {
        nodes.push_back(std::stoi(it->str()));
    }
    return nodes;
}

std::vector<Term> parse_json_terms(const nlohmann::json &j) {
    std::vector<Term> out;
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            out.push_back(term_from(nodes_from_key(key), coefficient(value)));
        }
    } else if (j.is_array()) {
        for (const auto &entry : j) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array()) {
                throw FormatError("term list entries must be [[nodes...], coeff]");
            }
            out.push_back(term_from(entry[0].get<std::vector<int>>(), coefficient(entry[1])));
        }
    } else {
        throw FormatError("term list JSON must be an object or an array");
    }
    return out;
}

std::vector<Term> parse_text_terms(std::string_view text) {
    std::vector<Term> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line.erase(std::find(line.begin(), line.end(), '#'), line.end());
        std::istringstream fields(line);
        std::vector<double> values;
        double x;
        while (fields >> x) {
            values.push_back(x);
        }
        if (!fields.eof()) {
            throw FormatError("unparsable term line '" + line + "'");
        }
        if (values.empty()) {
            continue;
        }
        if (values.size() < 2) {
            throw FormatError("term line needs nodes and a coefficient");
        }
        std::vector<int> nodes;
        for (size_t i = 0; i + 1 < values.size(); i++) {
            if (values[i] != static_cast<int>(values[i])) throw FormatError("node index is not an integer");
            nodes.push_back(static_cast<int>(values[i]));
        }
        out.push_back(term_from(nodes, coefficient(values.back())));
    }
    return out;
}

}  // namespace

std::vector<Term> parse_term_list(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    std::vector<Term> terms;
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception &ex) {
            throw FormatError(std::string("term list is not valid JSON: ") + ex.what());
        }
        terms = parse_json_terms(j);
    } else {
        terms = parse_text_terms(text);
    }
    if (terms.empty()) {
        throw FormatError("term list is empty");
    }
    std::map<std::vector<int>, int> seen;
    for (const auto &t : terms) {
        std::vector<int> key(t.nodes.begin(), t.nodes.begin() + t.order);
        if (seen.count(key)) {
            throw FormatError("term list repeats a monomial");
        }
        seen[key] = t.coeff;
    }
    return terms;
}

IsingInstance instance_from_terms(const std::vector<Term> &terms, std::string id, std::string layout) {
    int n = 0;
    std::vector<Edge> edges;
    for (const auto &t : terms) {
        n = std::max(n, t.nodes[t.order - 1] + 1);
        if (t.order == 2) {
            edges.push_back({t.nodes[0], t.nodes[1]});
        }
    }
    HeavyHexGraph graph = [&]() {
        try {
            return HeavyHexGraph::from_edges(n, edges, layout);
        } catch (const InvalidArgument &ex) {
            throw FormatError(std::string("imported terms do not form a heavy-hex graph: ") + ex.what());
        }
    }();

    std::map<std::vector<int>, int> coeff;
    for (const auto &t : terms) {
        coeff[std::vector<int>(t.nodes.begin(), t.nodes.begin() + t.order)] = t.coeff;
    }
    auto take = [&](std::vector<int> key, const char *what) {
        std::sort(key.begin(), key.end());
        auto it = coeff.find(key);
        if (it == coeff.end()) {
            throw FormatError(std::string("imported terms lack a ") + what + " term the graph requires");
        }
        int8_t c = static_cast<int8_t>(it->second);
        coeff.erase(it);
        return c;
    };
    std::vector<int8_t> d_lin, d_quad, d_cubic;
    for (int v = 0; v < n; v++) {
        d_lin.push_back(take({v}, "linear"));
    }
    for (const auto &e : graph.edges()) {
        d_quad.push_back(take({e.u, e.v}, "quadratic"));
    }
    for (const auto &c : graph.cubic()) {
        d_cubic.push_back(take({c.i, c.w, c.k}, "cubic"));
    }
    if (!coeff.empty()) {
        throw FormatError("imported terms include monomials outside the heavy-hex structure");
    }
    return make_instance(
        std::move(graph), std::move(d_lin), std::move(d_quad), std::move(d_cubic), CoefficientMode::imported, 0,
        std::move(id));
}

IsingInstance import_instance_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingInput("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            auto j = nlohmann::json::parse(text);
            if (j.contains("d_lin")) {
                return instance_from_json(j);
            }
        } catch (const nlohmann::json::parse_error &ex) {
            throw FormatError(path.string() + ": " + ex.what());
        }
    }
    return instance_from_terms(parse_term_list(text), path.stem().string());
}

}  // namespace hexq
