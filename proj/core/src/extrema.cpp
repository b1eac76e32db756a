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

#include "hexq/extrema.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>

#include "hexq/error.hpp"
#include "incidence.hpp"
#include "hexq/parallel.hpp"
#include "hexq/rng.hpp"

namespace hexq {

namespace {

using detail::Incidence;

struct Partial {
    int64_t c_min = std::numeric_limits<int64_t>::max();
    int64_t c_max = std::numeric_limits<int64_t>::min();
    uint64_t degeneracy = 0;
};

}  // namespace

std::string to_string(ExtremaMethod method) {
    switch (method) {
        case ExtremaMethod::brute_force:
            return "brute_force";
        case ExtremaMethod::heuristic:
            return "heuristic";
        case ExtremaMethod::imported:
            return "imported";
    }
    return "unknown";
}

ExtremaMethod parse_extrema_method(std::string_view text) {
    if (text == "brute_force") return ExtremaMethod::brute_force;
    if (text == "heuristic") return ExtremaMethod::heuristic;
    if (text == "imported") return ExtremaMethod::imported;
    throw InvalidArgument("unknown extrema method '" + std::string(text) + "'");
}

Extrema brute_force_extrema(const IsingInstance &instance, const BruteForceOptions &options) {
    const int n = instance.node_count();
    if (n > options.max_nodes || n > 62) {
        throw CapacityError(
            "brute force limited to " + std::to_string(options.max_nodes) + " spins; instance has " +
            std::to_string(n));
    }
    Incidence inc(instance);

    // The top `split_bits` bits select a chunk; each chunk walks the low bits
    // in Gray-code order.
    int split_bits = std::min(n, options.jobs > 1 ? 6 : 0);
    int low_bits = n - split_bits;
    uint64_t chunks = uint64_t{1} << split_bits;
    std::vector<Partial> partials(chunks);

    parallel_for(chunks, options.jobs, [&](size_t chunk) {
        uint64_t base = static_cast<uint64_t>(chunk) << low_bits;
        SpinConfig z = spins_from_index(base, n);
        int64_t e = energy(instance, z);
        Partial part;
        auto record = [&](int64_t value) {
            if (value < part.c_min) {
                part.c_min = value;
                part.degeneracy = 1;
            } else if (value == part.c_min) {
                part.degeneracy++;
            }
            part.c_max = std::max(part.c_max, value);
        };
        record(e);
        uint64_t steps = uint64_t{1} << low_bits;
        for (uint64_t g = 1; g < steps; g++) {
            int j = std::countr_zero(g);
            e -= 2 * z[j] * inc.field(j, z.data());
            z[j] = static_cast<int8_t>(-z[j]);
            record(e);
        }
        partials[chunk] = part;
    });

    Extrema out;
    out.method = ExtremaMethod::brute_force;
    out.c_min = std::numeric_limits<int64_t>::max();
    out.c_max = std::numeric_limits<int64_t>::min();
    for (const auto &p : partials) {
        if (p.c_min < out.c_min) {
            out.c_min = p.c_min;
            out.gs_degeneracy = p.degeneracy;
        } else if (p.c_min == out.c_min) {
            out.gs_degeneracy += p.degeneracy;
        }
        out.c_max = std::max(out.c_max, p.c_max);
    }
    return out;
}

Extrema anneal_extrema(const IsingInstance &instance, const AnnealParams &params) {
    const int n = instance.node_count();
    if (params.restarts < 1) {
        throw InvalidArgument("annealing needs at least one restart");
    }
    if (!(params.t_hot > params.t_cold && params.t_cold > 0)) {
        throw InvalidArgument("annealing needs t_hot > t_cold > 0");
    }
    const int64_t sweeps = params.sweeps_per_restart > 0 ? params.sweeps_per_restart : int64_t{1000} * n;
    Incidence inc(instance);

    // Task 2r anneals C, task 2r+1 anneals -C; each has its own keyed stream.
    std::vector<int64_t> best(2 * static_cast<size_t>(params.restarts));
    parallel_for(best.size(), params.jobs, [&](size_t task) {
        int sign = (task % 2 == 0) ? 1 : -1;
        Rng rng(params.seed, 0x5a, task);
        SpinConfig z(n);
        for (auto &s : z) {
            s = (rng.next_u64() >> 63) ? int8_t{1} : int8_t{-1};
        }
        int64_t e = sign * energy(instance, z);
        int64_t best_e = e;
        double ratio = sweeps > 1 ? std::pow(params.t_cold / params.t_hot, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;
        double t = params.t_hot;
        for (int64_t sweep = 0; sweep < sweeps; sweep++) {
            double beta = 1.0 / t;
            for (int j = 0; j < n; j++) {
                int64_t delta = -2 * sign * z[j] * inc.field(j, z.data());
                if (delta <= 0 || rng.uniform() < std::exp(-beta * static_cast<double>(delta))) {
                    z[j] = static_cast<int8_t>(-z[j]);
                    e += delta;
                    best_e = std::min(best_e, e);
                }
            }
            t *= ratio;
        }
        best[task] = sign * best_e;
    });

    Extrema out;
    out.method = ExtremaMethod::heuristic;
    out.gs_degeneracy = 0;
    out.c_min = std::numeric_limits<int64_t>::max();
    out.c_max = std::numeric_limits<int64_t>::min();
    for (size_t task = 0; task < best.size(); task++) {
        if (task % 2 == 0) {
            out.c_min = std::min(out.c_min, best[task]);
        } else {
            out.c_max = std::max(out.c_max, best[task]);
        }
    }
    return out;
}

double approximation_ratio(const Extrema &extrema, double e) {
    if (extrema.c_max <= extrema.c_min) {
        throw InvalidArgument("approximation ratio undefined for c_max <= c_min");
    }
    return (static_cast<double>(extrema.c_max) - e) / static_cast<double>(extrema.c_max - extrema.c_min);
}

nlohmann::json extrema_to_json(const Extrema &extrema) {
    return {
        {"c_min", extrema.c_min},
        {"c_max", extrema.c_max},
        {"gs_degeneracy", extrema.gs_degeneracy},
        {"method", to_string(extrema.method)},
    };
}

Extrema extrema_from_json(const nlohmann::json &j) {
    try {
        Extrema e;
        e.c_min = j.at("c_min").get<int64_t>();
        e.c_max = j.at("c_max").get<int64_t>();
        e.gs_degeneracy = j.value("gs_degeneracy", uint64_t{0});
        e.method = parse_extrema_method(j.at("method").get<std::string>());
        if (e.c_min > e.c_max) {
            throw FormatError("extrema with c_min > c_max");
        }
        return e;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed extrema: ") + ex.what());
    }
}

}  // namespace hexq
