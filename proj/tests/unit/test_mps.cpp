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
#include <numbers>
#include <set>

#include "hexq/error.hpp"
#include "hexq/mps.hpp"
#include "hexq/statevec.hpp"
#include "oracles.hpp"

namespace hexq {
namespace {

IsingInstance device_instance(const char *layout, uint64_t seed) {
    return generate_instance(build_heavy_hex(layout), CoefficientMode::random_pm1, seed);
}

TEST(Terms, EveryMonomialExactlyOnce) {
    for (const auto &name : device_layout_names()) {
        auto inst = generate_instance(build_heavy_hex(name), CoefficientMode::random_pm1, 1);
        auto factors = collect_terms(inst);
        EXPECT_NO_THROW(check_term_coverage(inst, factors)) << name;
        size_t terms = 0;
        for (const auto &f : factors) {
            terms += f.terms.size();
            EXPECT_GE(f.qubits.size(), 1u);
            EXPECT_LE(f.qubits.size(), 3u);
            EXPECT_TRUE(std::is_sorted(f.qubits.begin(), f.qubits.end()));
        }
        EXPECT_EQ(int(terms), inst.term_count());
    }
}

TEST(Terms, TamperedFactorsRejected) {
    auto inst = device_instance("guadalupe16", 2);
    auto factors = collect_terms(inst);
    auto dropped = factors;
    dropped.front().terms.pop_back();
    EXPECT_THROW(check_term_coverage(inst, dropped), InvalidArgument);
    auto doubled = factors;
    doubled.push_back(factors.front());
    EXPECT_THROW(check_term_coverage(inst, doubled), InvalidArgument);
}

TEST(Terms, FactorValuesMatchTerms) {
    auto inst = device_instance("falcon27", 3);
    for (const auto &f : collect_terms(inst)) {
        auto values = f.values();
        ASSERT_EQ(values.size(), size_t{1} << f.qubits.size());
        for (size_t a = 0; a < values.size(); a++) {
            int want = 0;
            for (const auto &t : f.terms) {
                int m = t.coeff;
                for (int q = 0; q < t.order; q++) {
                    size_t pos = std::find(f.qubits.begin(), f.qubits.end(), t.nodes[q]) - f.qubits.begin();
                    m *= ((a >> pos) & 1) ? 1 : -1;
                }
                want += m;
            }
            EXPECT_EQ(values[a], want);
        }
    }
}

TEST(Mpo, ReconstructsDiagonalForRandomGamma) {
    auto inst = device_instance("guadalupe16", 4);
    auto factors = collect_terms(inst);
    auto order = choose_qubit_order(inst.graph, factors);
    Rng rng(8);
    int checked = 0;
    for (int trial = 0; trial < 100; trial++) {
        double gamma = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const auto &f = factors[trial % factors.size()];
        auto mpo = three_qubit_mpo(f, gamma, order);
        EXPECT_LE(mpo.max_bond(), 2);
        auto diag = mpo.diagonal();
        auto values = f.values();
        const int width = mpo.last_site - mpo.first_site + 1;
        ASSERT_EQ(diag.size(), size_t{1} << width);
        double err = 0;
        for (size_t idx = 0; idx < diag.size(); idx++) {
            size_t a = 0;
            for (size_t t = 0; t < f.qubits.size(); t++) {
                int site = order.site_of[f.qubits[t]] - mpo.first_site;
                a |= ((idx >> site) & 1) << t;
            }
            err = std::max(err, std::abs(diag[idx] - std::exp(oracle::cplx(0, -gamma * values[a]))));
        }
        EXPECT_LT(err, 1e-12);
        checked++;
    }
    EXPECT_EQ(checked, 100);
}

TEST(Mpo, EntryAgreesWithDiagonal) {
    auto inst = device_instance("guadalupe16", 6);
    auto factors = collect_terms(inst);
    auto order = choose_qubit_order(inst.graph, factors);
    auto mpo = three_qubit_mpo(factors.back(), 0.7, order);
    auto diag = mpo.diagonal();
    std::vector<uint8_t> bits(mpo.sites.size());
    for (size_t idx = 0; idx < diag.size(); idx++) {
        for (size_t t = 0; t < bits.size(); t++) bits[t] = (idx >> t) & 1;
        EXPECT_EQ(mpo.entry(bits), diag[idx]);
    }
    EXPECT_THROW(mpo.entry(std::vector<uint8_t>(bits.size() + 1)), InvalidArgument);
}

TEST(Mpo, ZeroGammaIsBondOne) {
    auto inst = device_instance("guadalupe16", 4);
    auto factors = collect_terms(inst);
    auto mpo = three_qubit_mpo(factors.front(), 0.0, QubitOrder::identity(16));
    EXPECT_EQ(mpo.max_bond(), 1);
}

TEST(Layers, TouchingAllowedOverlapForbidden) {
    std::vector<SiteInterval> iv = {{0, 2}, {2, 4}, {1, 3}, {4, 6}, {5, 5}, {0, 6}};
    auto layers = layer_partition(iv);
    std::set<int> seen;
    for (const auto &layer : layers) {
        for (size_t a = 0; a < layer.size(); a++) {
            EXPECT_TRUE(seen.insert(layer[a]).second);
            for (size_t b = a + 1; b < layer.size(); b++) {
                const auto &x = iv[layer[a]];
                const auto &y = iv[layer[b]];
                EXPECT_TRUE(x.first >= y.last || y.first >= x.last) << layer[a] << " vs " << layer[b];
            }
        }
    }
    EXPECT_EQ(seen.size(), iv.size());
    // [0,2] and [2,4] touch and share the first layer.
    EXPECT_EQ(layers.front(), (std::vector<int>{0, 1, 3}));
}

TEST(Order, RcmIsPermutationAndChoiceNoWorse) {
    for (const auto &name : device_layout_names()) {
        auto g = build_heavy_hex(name);
        auto inst = generate_instance(g, CoefficientMode::random_pm1, 0);
        auto factors = collect_terms(inst);
        auto rcm = reverse_cuthill_mckee(g);
        std::vector<int> sorted = rcm.node_at;
        std::sort(sorted.begin(), sorted.end());
        for (int v = 0; v < g.node_count(); v++) {
            ASSERT_EQ(sorted[v], v);
            EXPECT_EQ(rcm.node_at[rcm.site_of[v]], v);
        }
        auto chosen = choose_qubit_order(g, factors);
        double best = std::min(average_span(factors, rcm), average_span(factors, QubitOrder::identity(g.node_count())));
        EXPECT_DOUBLE_EQ(average_span(factors, chosen), best);
    }
    EXPECT_THROW(QubitOrder::from_sequence({0, 0, 1}, "bad"), InvalidArgument);
}

TEST(ProductStates, AllUpGivesAllPlusOneEnergy) {
    // Bit 1 is spin +1, so |1...1> carries the energy of the all-(+1) configuration.
    auto inst = device_instance("falcon27", 6);
    const int n = inst.node_count();
    std::vector<std::array<Amplitude, 2>> up(n, {Amplitude(0), Amplitude(1)});
    auto order = QubitOrder::identity(n);
    EXPECT_NEAR(mps_expectation(MpsState::product(up), inst, order), double(energy(inst, SpinConfig(n, 1))), 1e-12);
    std::vector<std::array<Amplitude, 2>> down(n, {Amplitude(1), Amplitude(0)});
    EXPECT_NEAR(mps_expectation(MpsState::product(down), inst, order), double(energy(inst, SpinConfig(n, -1))), 1e-12);
    EXPECT_NEAR(mps_expectation(MpsState::plus_state(n), inst, order), 0.0, 1e-12);
}

TEST(Evolve, MatchesStatevectorAtLargeChi) {
    Rng rng(12);
    for (int trial = 0; trial < 4; trial++) {
        auto inst = trial % 2 ? device_instance("guadalupe16", 30 + trial) : oracle::random_fragment_instance(12, 40 + trial);
        auto angles = oracle::random_angles(2 + trial, rng);
        auto cost = cost_vector(inst);
        auto sv = qaoa_state(cost, angles);
        auto r = evolve_mps(inst, angles, {256, 1e-14, std::nullopt});
        EXPECT_NEAR(mps_expectation(r.state, inst, r.order), expectation(sv, cost), 1e-9);
        auto dense = r.state.to_dense(r.order);
        EXPECT_GT(oracle::fidelity(dense, sv.amplitudes()), 1 - 1e-10);
        EXPECT_LT(r.ledger.total_discarded_weight(), 1e-12);
        EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
    }
}

TEST(Evolve, OrderDoesNotChangeExactResult) {
    auto inst = device_instance("guadalupe16", 50);
    QaoaAngles a{{0.3, 0.5}, {0.2, -0.4}};
    auto def = evolve_mps(inst, a, {256, 1e-14, std::nullopt});
    auto id = evolve_mps(inst, a, {256, 1e-14, QubitOrder::identity(16)});
    EXPECT_NEAR(mps_expectation(def.state, inst, def.order), mps_expectation(id.state, inst, id.order), 1e-10);
}

TEST(Evolve, TruncationIsBoundedAndRecorded) {
    auto inst = device_instance("guadalupe16", 51);
    QaoaAngles a{{0.3, 0.5, 0.4}, {0.6, -0.4, 0.7}};
    auto r = evolve_mps(inst, a, {4, 1e-12, std::nullopt});
    EXPECT_LE(r.state.max_bond_dimension(), 4);
    EXPECT_GT(r.ledger.total_discarded_weight(), 0.0);
    EXPECT_FALSE(r.ledger.norms_before_renormalization.empty());
    for (const auto &e : r.ledger.entries) {
        EXPECT_GE(e.discarded_weight, 0.0);
        EXPECT_LE(e.discarded_weight, 1.0);
    }
    EXPECT_EQ(r.ledger.to_csv().substr(0, 27), "layer,bond,discarded_weight");
    EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
    EXPECT_THROW(evolve_mps(inst, a, {0, 1e-12, std::nullopt}), InvalidArgument);
}

TEST(Evolve, ErrorShrinksWithChi) {
    auto inst = device_instance("guadalupe16", 52);
    auto cost = cost_vector(inst);
    QaoaAngles a{{0.3, 0.5, 0.4, 0.2}, {0.6, -0.4, 0.7, 0.3}};
    double ref = expectation(qaoa_state(cost, a), cost);
    auto err = [&](int chi) {
        auto r = evolve_mps(inst, a, {chi, 1e-14, std::nullopt});
        return std::abs(mps_expectation(r.state, inst, r.order) - ref);
    };
    EXPECT_LT(err(64), err(4) + 1e-12);
    EXPECT_LT(err(256), 1e-9);
}

TEST(Sampling, ChiSquareAgainstDense) {
    auto inst = oracle::random_fragment_instance(5, 60);
    QaoaAngles a{{0.7, 0.2}, {0.3, 0.9}};
    auto r = evolve_mps(inst, a, {64, 1e-14, std::nullopt});
    auto dense = r.state.to_dense(r.order);
    const int shots = 40000;
    auto s = sample_mps(r.state, r.order, shots, 3);
    double chi2 = 0;
    int cells = 0;
    for (size_t b = 0; b < dense.size(); b++) {
        double expected = std::norm(dense[b]) * shots;
        if (expected < 5) continue;
        double seen = s.counts.count(b) ? s.counts.at(b) : 0;
        chi2 += (seen - expected) * (seen - expected) / expected;
        cells++;
    }
    ASSERT_GT(cells, 4);
    EXPECT_LT(chi2, 3.0 * cells + 30);
    EXPECT_EQ(sample_mps(r.state, r.order, 500, 3).counts, sample_mps(r.state, r.order, 500, 3).counts);
}

TEST(DeltaE, Definition) {
    EXPECT_DOUBLE_EQ(delta_e(-10.0, -9.5), 0.05);
    EXPECT_THROW(delta_e(0.0, 1.0), InvalidArgument);
}

}  // namespace
}  // namespace hexq
