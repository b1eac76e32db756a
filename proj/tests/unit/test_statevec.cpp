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

#include <numbers>

#include "hexq/error.hpp"
#include "hexq/statevec.hpp"
#include "oracles.hpp"

namespace hexq {
namespace {

constexpr double kPi = std::numbers::pi;

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    double tv = 0;
    for (size_t i = 0; i < a.size(); i++) tv += std::abs(a[i] - b[i]);
    return tv / 2;
}

TEST(CostVector, MatchesNaiveCosts) {
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 2);
    auto cost = cost_vector(inst);
    auto naive = oracle::naive_costs(inst);
    ASSERT_EQ(cost.size(), naive.size());
    for (size_t b = 0; b < naive.size(); b++) {
        ASSERT_EQ(cost.values[b], naive[b]) << b;
    }
    EXPECT_EQ(cost.min_value, *std::min_element(naive.begin(), naive.end()));
    EXPECT_EQ(cost.max_value, *std::max_element(naive.begin(), naive.end()));
}

TEST(CostVector, CapEnforced) {
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 2);
    EXPECT_THROW(cost_vector(inst, 12), CapacityError);
}

TEST(QaoaState, MatchesDenseMatrices) {
    Rng rng(17);
    for (int trial = 0; trial < 12; trial++) {
        auto inst = oracle::random_fragment_instance(4 + trial % 5, 100 + trial);
        auto angles = oracle::random_angles(1 + trial % 3, rng);
        auto fast = qaoa_state(inst, angles);
        auto dense = oracle::dense_qaoa(inst, angles);
        for (size_t b = 0; b < fast.size(); b++) {
            ASSERT_NEAR(std::abs(fast.amplitudes()[b] - dense[b]), 0, 1e-12) << "trial " << trial << " index " << b;
        }
    }
}

TEST(QaoaState, UnitNorm) {
    Rng rng(4);
    auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, 9);
    auto s = qaoa_state(inst, oracle::random_angles(6, rng));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(QaoaState, ZeroAnglesGiveZeroMean) {
    // Every +-1 monomial averages to zero over the uniform distribution.
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto inst = oracle::random_fragment_instance(8 + int(seed % 9), seed);
        auto cost = cost_vector(inst);
        EXPECT_NEAR(expectation(qaoa_state(cost, {{0.0}, {0.0}}), cost), 0.0, 1e-10);
    }
}

TEST(QaoaState, PiShiftsLeaveDistributionUnchanged) {
    Rng rng(23);
    for (int trial = 0; trial < 10; trial++) {
        auto inst = oracle::random_fragment_instance(6 + trial % 5, 300 + trial);
        auto cost = cost_vector(inst);
        int p = 1 + trial % 5;
        auto angles = oracle::random_angles(p, rng);
        auto base = qaoa_state(cost, angles).probabilities();
        int j = static_cast<int>(rng.below(p));
        auto g = angles;
        g.gammas[j] += kPi;
        auto b = angles;
        b.betas[j] += kPi;
        EXPECT_LT(total_variation(base, qaoa_state(cost, g).probabilities()), 1e-10);
        EXPECT_LT(total_variation(base, qaoa_state(cost, b).probabilities()), 1e-10);
        auto flipped = angles;
        for (auto &x : flipped.betas) x = -x;
        for (auto &x : flipped.gammas) x = -x;
        EXPECT_NEAR(expectation(qaoa_state(cost, flipped), cost), expectation(qaoa_state(cost, angles), cost), 1e-10);
    }
}

TEST(Gradient, MatchesCentralDifferences) {
    Rng rng(31);
    for (int trial = 0; trial < 8; trial++) {
        auto inst = oracle::random_fragment_instance(5 + trial % 6, 400 + trial);
        auto cost = cost_vector(inst);
        auto angles = oracle::random_angles(1 + trial % 5, rng);
        auto g = gradient(cost, angles);
        EXPECT_NEAR(g.value, expectation(qaoa_state(cost, angles), cost), 1e-12);
        auto x = angles.packed();
        auto grad = g.packed();
        const double h = 1e-5;
        for (size_t k = 0; k < x.size(); k++) {
            auto plus = x, minus = x;
            plus[k] += h;
            minus[k] -= h;
            double fd = (expectation(qaoa_state(cost, QaoaAngles::unpack(plus)), cost) -
                         expectation(qaoa_state(cost, QaoaAngles::unpack(minus)), cost)) /
                        (2 * h);
            EXPECT_NEAR(grad[k], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "trial " << trial << " k " << k;
        }
    }
}

TEST(Gradient, EmptyScheduleHasNoDerivatives) {
    auto inst = oracle::random_fragment_instance(6, 1);
    auto g = gradient(cost_vector(inst), {});
    EXPECT_TRUE(g.d_beta.empty());
    EXPECT_NEAR(g.value, 0, 1e-12);
}

TEST(Sample, ChiSquareAgainstBornRule) {
    Rng rng(5);
    auto inst = oracle::random_fragment_instance(4, 77);
    auto state = qaoa_state(inst, oracle::random_angles(2, rng));
    auto probs = state.probabilities();
    const int shots = 40000;
    auto set = sample(state, shots, 12345);
    EXPECT_EQ(set.shots, shots);
    double chi2 = 0;
    int dof = -1;
    for (size_t b = 0; b < probs.size(); b++) {
        double expected = probs[b] * shots;
        if (expected < 5) continue;
        double seen = set.counts.count(b) ? set.counts.at(b) : 0;
        chi2 += (seen - expected) * (seen - expected) / expected;
        dof++;
    }
    ASSERT_GT(dof, 3);
    // Generous bound: far in the tail for at most 15 degrees of freedom.
    EXPECT_LT(chi2, 50.0);
}

TEST(Sample, DeterministicPerSeedAndHistogramConsistent) {
    auto inst = oracle::random_fragment_instance(6, 3);
    auto cost = cost_vector(inst);
    auto state = qaoa_state(cost, {{0.4}, {0.3}});
    auto a = sample(state, 1000, 9);
    auto b = sample(state, 1000, 9);
    EXPECT_EQ(a.counts, b.counts);
    int total = 0;
    for (const auto &[e, c] : a.energy_histogram(cost)) total += c;
    EXPECT_EQ(total, 1000);
    auto j = histogram_to_json(a.energy_histogram(cost));
    EXPECT_TRUE(j.is_object());
}

}  // namespace
}  // namespace hexq
