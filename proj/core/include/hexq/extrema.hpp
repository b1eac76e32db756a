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
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hexq/instance.hpp"

namespace hexq {

enum class ExtremaMethod { brute_force, heuristic, imported };

std::string to_string(ExtremaMethod method);
ExtremaMethod parse_extrema_method(std::string_view text);

/// Minimum and maximum of C(z). gs_degeneracy == 0 means "unknown".
struct Extrema {
    int64_t c_min = 0;
    int64_t c_max = 0;
    uint64_t gs_degeneracy = 0;
    ExtremaMethod method = ExtremaMethod::brute_force;

    /// True when c_min is certified (exhaustive search or external import).
    bool exact() const noexcept {
        return method != ExtremaMethod::heuristic;
    }
    bool operator==(const Extrema &) const = default;
};

struct BruteForceOptions {
    int max_nodes = 30;
    int jobs = 1;
};

/// Exhaustive enumeration with Gray-code incremental updates.
Extrema brute_force_extrema(const IsingInstance &instance, const BruteForceOptions &options = {});

struct AnnealParams {
    int restarts = 64;
    /// Sweeps per restart; 0 selects 1000 * n.
    int64_t sweeps_per_restart = 0;
    double t_hot = 10.0;
    double t_cold = 0.05;
    uint64_t seed = 0;
    int jobs = 1;
};

/// Simulated annealing on C and on -C with a geometric temperature schedule.
/// Reports method == heuristic and gs_degeneracy == 0.
Extrema anneal_extrema(const IsingInstance &instance, const AnnealParams &params = {});

/// (c_max - e) / (c_max - c_min). Throws when c_max == c_min.
double approximation_ratio(const Extrema &extrema, double e);

nlohmann::json extrema_to_json(const Extrema &extrema);
Extrema extrema_from_json(const nlohmann::json &j);

}  // namespace hexq
