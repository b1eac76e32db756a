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

#include "hexq/error.hpp"
#include "hexq/extrema.hpp"
#include "oracles.hpp"

namespace hexq {
namespace {

Extrema enumerate(const IsingInstance &inst) {
    auto costs = oracle::naive_costs(inst);
    auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    Extrema e{*lo, *hi, 0, ExtremaMethod::brute_force};
    e.gs_degeneracy = std::count(costs.begin(), costs.end(), *lo);
    return e;
}

TEST(BruteForce, MatchesPlainEnumeration) {
    for (uint64_t seed = 0; seed < 12; seed++) {
        auto inst = oracle::random_fragment_instance(8 + int(seed % 8), seed);
        EXPECT_EQ(brute_force_extrema(inst), enumerate(inst)) << "seed " << seed;
    }
    auto g16 = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 4);
    EXPECT_EQ(brute_force_extrema(g16), enumerate(g16));
}

TEST(BruteForce, WorkerCountDoesNotChangeResult) {
    auto inst = generate_instance(build_heavy_hex("parametric:1x2"), CoefficientMode::random_pm1, 8);
    EXPECT_EQ(brute_force_extrema(inst, {30, 1}), brute_force_extrema(inst, {30, 4}));
}

TEST(BruteForce, AllPositiveMaximum) {
    // All coefficients +1: the all-up configuration attains the maximum.
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::all_positive, 0);
    auto e = brute_force_extrema(inst);
    EXPECT_EQ(e.c_max, inst.term_count());
    EXPECT_EQ(e.gs_degeneracy, enumerate(inst).gs_degeneracy);
}

TEST(BruteForce, RefusesAboveCap) {
    auto inst = generate_instance(build_heavy_hex("falcon27"), CoefficientMode::random_pm1, 1);
    EXPECT_THROW(brute_force_extrema(inst, {20, 1}), CapacityError);
}

TEST(Anneal, FindsExactExtremaOnSmallInstances) {
    for (uint64_t seed = 1; seed <= 3; seed++) {
        auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, seed);
        auto exact = brute_force_extrema(inst);
        AnnealParams params;
        params.restarts = 8;
        params.sweeps_per_restart = 2000;
        params.seed = seed;
        auto sa = anneal_extrema(inst, params);
        EXPECT_EQ(sa.c_min, exact.c_min);
        EXPECT_EQ(sa.c_max, exact.c_max);
        EXPECT_EQ(sa.method, ExtremaMethod::heuristic);
        EXPECT_FALSE(sa.exact());
        EXPECT_EQ(sa.gs_degeneracy, 0u);
    }
}

TEST(Anneal, DeterministicPerSeed) {
    auto inst = generate_instance(build_heavy_hex("eagle127"), CoefficientMode::random_pm1, 2);
    AnnealParams params;
    params.restarts = 4;
    params.sweeps_per_restart = 500;
    auto a = anneal_extrema(inst, params);
    params.jobs = 3;
    auto b = anneal_extrema(inst, params);
    EXPECT_EQ(a, b);
}

TEST(Anneal, RejectsBadSchedule) {
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 1);
    AnnealParams params;
    params.restarts = 0;
    EXPECT_THROW(anneal_extrema(inst, params), InvalidArgument);
    params.restarts = 1;
    params.t_cold = 20;
    EXPECT_THROW(anneal_extrema(inst, params), InvalidArgument);
}

TEST(ApproximationRatio, Endpoints) {
    Extrema e{-10, 30, 1, ExtremaMethod::brute_force};
    EXPECT_DOUBLE_EQ(approximation_ratio(e, -10), 1.0);
    EXPECT_DOUBLE_EQ(approximation_ratio(e, 30), 0.0);
    EXPECT_DOUBLE_EQ(approximation_ratio(e, 10), 0.5);
    EXPECT_THROW(approximation_ratio(Extrema{3, 3, 1, ExtremaMethod::brute_force}, 3), InvalidArgument);
}

TEST(Extrema, JsonRoundTrip) {
    Extrema e{-194, 210, 0, ExtremaMethod::imported};
    EXPECT_EQ(extrema_from_json(extrema_to_json(e)), e);
    auto bad = extrema_to_json(e);
    bad["c_min"] = 500;
    EXPECT_THROW(extrema_from_json(bad), FormatError);
}

}  // namespace
}  // namespace hexq
