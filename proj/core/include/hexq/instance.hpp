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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/graph.hpp"

namespace hexq {

/// How the +-1 coefficients were chosen. `imported` marks coefficients read
/// from an external file; such instances cannot be regenerated from a seed.
enum class CoefficientMode { random_pm1, all_positive, all_negative, imported };

std::string to_string(CoefficientMode mode);
CoefficientMode parse_coefficient_mode(std::string_view text);

/// Spins in {+1, -1}, one per node.
using SpinConfig = std::vector<int8_t>;

/// One monomial d * z_a [* z_b [* z_c]].
struct Term {
    std::array<int, 3> nodes{};
    int order = 0;
    int coeff = 0;
};

/// Heavy-hex Ising model with linear, quadratic (per edge) and cubic (per
/// degree-2 V2 center) terms. Coefficient arrays are aligned with
/// graph.edges() and graph.cubic().
struct IsingInstance {
    HeavyHexGraph graph;
    std::vector<int8_t> d_lin;
    std::vector<int8_t> d_quad;
    std::vector<int8_t> d_cubic;
    CoefficientMode mode = CoefficientMode::random_pm1;
    uint64_t seed = 0;
    std::string id;

    int node_count() const noexcept {
        return graph.node_count();
    }
    int term_count() const noexcept {
        return static_cast<int>(d_lin.size() + d_quad.size() + d_cubic.size());
    }
    /// All monomials: linear terms by node, then quadratic by edge, then cubic.
    std::vector<Term> terms() const;

    bool operator==(const IsingInstance &other) const {
        return graph == other.graph && d_lin == other.d_lin && d_quad == other.d_quad &&
               d_cubic == other.d_cubic && mode == other.mode && seed == other.seed;
    }
};

/// Draws coefficients. In random mode every coefficient is keyed by
/// (seed, term kind, term index), so the result does not depend on draw order.
IsingInstance generate_instance(const HeavyHexGraph &graph, CoefficientMode mode, uint64_t seed);

/// Builds an instance from explicit coefficients (validated to be +-1 and to
/// match the graph's term counts).
IsingInstance make_instance(
    HeavyHexGraph graph,
    std::vector<int8_t> d_lin,
    std::vector<int8_t> d_quad,
    std::vector<int8_t> d_cubic,
    CoefficientMode mode,
    uint64_t seed,
    std::string id = "");

std::string default_instance_id(const std::string &layout, CoefficientMode mode, uint64_t seed);

/// Cost C(z) = sum d_i z_i + sum d_ij z_i z_j + sum d_iwk z_i z_w z_k.
int64_t energy(const IsingInstance &instance, std::span<const int8_t> spins);

/// Spin of node j for computational basis index b: bit 1 -> +1, bit 0 -> -1.
SpinConfig spins_from_index(uint64_t index, int n);

/// Instance JSON: {"layout", "n", "edges", "cubic", "d_lin", "d_quad",
/// "d_cubic", "seed", "mode", "id"}.
nlohmann::json instance_to_json(const IsingInstance &instance);
IsingInstance instance_from_json(const nlohmann::json &j);

void save_instance(const IsingInstance &instance, const std::filesystem::path &path);
IsingInstance load_instance(const std::filesystem::path &path);

/// Reads a JSON file, mapping a missing file to MissingInput and syntax
/// errors to FormatError.
nlohmann::json read_json_file(const std::filesystem::path &path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const nlohmann::json &j, const std::filesystem::path &path);

}  // namespace hexq
