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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "hexq/angles.hpp"
#include "hexq/optimizer.hpp"
#include "hexq/transfer.hpp"
#include "manifest.hpp"

namespace hexq::cli {

struct TargetSpec {
    std::string layout;
    std::string mode;
    uint64_t seed = 0;
    bool operator==(const TargetSpec &) const = default;
};

struct MpsValidateConfig {
    bool enabled = false;
    std::vector<int> chi = {16, 32, 64};
    double cutoff = 1e-12;
    /// 0 validates every trained depth.
    int max_p = 0;
};

struct EmitConfig {
    bool enabled = true;
    /// 0 selects the deepest trained schedule.
    int p = 0;
    std::string basis = "cx";
    uint64_t coloring_seed = 0;
};

/// One experiment: train on every source, transfer to every target under
/// every backend, then aggregate.
struct ExperimentConfig {
    int version = 1;
    std::string output_dir = "hexq_out";
    std::string layout = "guadalupe16";
    std::string mode = "random_pm1";
    std::vector<uint64_t> sources = {1};
    std::vector<TargetSpec> targets = {{"guadalupe16", "random_pm1", 2}, {"guadalupe16", "random_pm1", 3}};
    TrainConfig train;
    std::vector<std::string> backends = {"statevec"};
    int shots = 1000;
    uint64_t sample_seed = 0;
    SolveOptions solver;
    MpsValidateConfig mps_validate;
    EmitConfig emit;
};

nlohmann::json experiment_config_to_json(const ExperimentConfig &config);
/// Missing keys take defaults; unknown keys and bad values throw InvalidArgument.
ExperimentConfig experiment_config_from_json(const nlohmann::json &j);

void write_report_tables(
    const std::vector<TransferReport> &reports,
    const std::optional<AngleEnsemble> &ensemble,
    const std::filesystem::path &dir,
    Manifest &manifest);

void run_experiment(const ExperimentConfig &config, const Context &ctx, const std::filesystem::path &config_path);

}  // namespace hexq::cli
