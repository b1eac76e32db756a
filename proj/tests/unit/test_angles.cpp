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
#include <fstream>
#include <numbers>
#include <sstream>

#include "hexq/angles.hpp"
#include "hexq/error.hpp"
#include "hexq/statevec.hpp"
#include "oracles.hpp"

namespace hexq {
namespace {

constexpr double kPi = std::numbers::pi;

std::string read_golden(const std::string &name) {
    std::ifstream in(std::filesystem::path(HEXQ_GOLDEN_DIR) / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AngleEnsemble small_ensemble() {
    AngleEnsemble e;
    ScheduleSource a{"toy-a", 16, CoefficientMode::random_pm1};
    ScheduleSource b{"toy-b", 12, CoefficientMode::all_negative};
    e.add({a, {{0.5}, {-0.25}}, -7.5, 0.625});
    e.add({a, {{0.5, 0.375}, {-0.25, -0.5}}, -9.0, 0.6875});
    e.add({b, {{1.25}, {0.125}}, -3.0, 0.5});
    return e;
}

TEST(Canonicalize, PreservesDistribution) {
    Rng rng(2);
    for (int trial = 0; trial < 10; trial++) {
        auto inst = oracle::random_fragment_instance(6 + trial % 4, 500 + trial);
        auto cost = cost_vector(inst);
        QaoaAngles a;
        for (int j = 0; j < 1 + trial % 4; j++) {
            a.betas.push_back(rng.uniform(-20, 20));
            a.gammas.push_back(rng.uniform(-20, 20));
        }
        auto c = canonicalize(a);
        auto p0 = qaoa_state(cost, a).probabilities();
        auto p1 = qaoa_state(cost, c).probabilities();
        double tv = 0;
        for (size_t k = 0; k < p0.size(); k++) tv += std::abs(p0[k] - p1[k]);
        EXPECT_LT(tv / 2, 1e-10);
        for (double x : c.betas) {
            EXPECT_GT(x, -kPi / 2);
            EXPECT_LE(x, kPi / 2);
        }
        for (double x : c.gammas) {
            EXPECT_GT(x, -kPi / 2);
            EXPECT_LE(x, kPi / 2);
        }
        EXPECT_EQ(canonicalize(c), c);
    }
}

TEST(Canonicalize, SignRule) {
    auto c = canonicalize(QaoaAngles{{-0.3, 0.2}, {0.1, 0.4}});
    EXPECT_DOUBLE_EQ(c.betas[0], 0.3);
    EXPECT_DOUBLE_EQ(c.gammas[1], -0.4);
    // Zero betas: the first gamma decides.
    auto z = canonicalize(QaoaAngles{{0.0}, {-0.7}});
    EXPECT_DOUBLE_EQ(z.gammas[0], 0.7);
    // In-range values are left alone.
    auto same = canonicalize(QaoaAngles{{0.25}, {-1.5}});
    EXPECT_EQ(same, (QaoaAngles{{0.25}, {-1.5}}));
}

TEST(Ensemble, LookupAndSeries) {
    auto e = small_ensemble();
    EXPECT_EQ(e.sources(), (std::vector<std::string>{"toy-a", "toy-b"}));
    EXPECT_EQ(e.max_p("toy-a"), 2);
    EXPECT_EQ(e.max_p("missing"), 0);
    EXPECT_TRUE(e.contains("toy-b", 1));
    EXPECT_THROW(e.at("toy-b", 2), MissingInput);
    auto s = e.series("toy-a");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[1].p(), 2);
    EXPECT_NO_THROW(e.check_contiguous());
}

TEST(Ensemble, GapIsFormatError) {
    AngleEnsemble e;
    e.add({{"gappy", 4, CoefficientMode::random_pm1}, {{0.1, 0.2}, {0.3, 0.4}}, -1, 0.5});
    EXPECT_THROW(e.check_contiguous(), FormatError);
    EXPECT_THROW(ensemble_from_json(ensemble_to_json(e)), FormatError);
}

TEST(Ensemble, GoldenJson) {
    auto text = ensemble_to_json(small_ensemble()).dump(2) + "\n";
    EXPECT_EQ(text, read_golden("ensemble_v1.json"));
    EXPECT_EQ(ensemble_from_json(nlohmann::json::parse(read_golden("ensemble_v1.json"))), small_ensemble());
}

TEST(Ensemble, RejectsBadDocuments) {
    EXPECT_THROW(ensemble_from_json(nlohmann::json::array()), FormatError);
    auto j = ensemble_to_json(small_ensemble());
    j["version"] = 2;
    EXPECT_THROW(ensemble_from_json(j), FormatError);
    auto k = ensemble_to_json(small_ensemble());
    k["ensemble"][0]["betas"].push_back(0.1);
    EXPECT_THROW(ensemble_from_json(k), FormatError);
}

TEST(Ensemble, SaveLoad) {
    auto path = std::filesystem::temp_directory_path() / "hexq_test_ensemble.json";
    save_ensemble(small_ensemble(), path);
    EXPECT_EQ(load_ensemble(path), small_ensemble());
    std::filesystem::remove(path);
}

TEST(Summary, CsvColumns) {
    auto csv = summary_to_csv(schedule_summary(small_ensemble()));
    EXPECT_EQ(csv,
              "source,p,beta_1,beta_p,gamma_1,gamma_p,beta_range,gamma_range\n"
              "toy-a,1,0.5,0.5,-0.25,-0.25,0,0\n"
              "toy-a,2,0.5,0.375,-0.25,-0.5,0.125,0.25\n"
              "toy-b,1,1.25,1.25,0.125,0.125,0,0\n");
}

}  // namespace
}  // namespace hexq
