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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/angles.hpp"
#include "hexq/circuit.hpp"
#include "hexq/extrema.hpp"
#include "hexq/instance.hpp"
#include "hexq/transfer.hpp"

namespace CLI {
class App;
}

namespace hexq::cli {

struct Context {
    int jobs = 1;
    bool quiet = false;
    /// Arguments after the program name, recorded in manifests.
    std::vector<std::string> argv;
};

void register_commands(CLI::App &app, Context &ctx);

struct SolveOptions {
    /// "auto" (brute force up to max_nodes, else annealing), "brute_force"
    /// or "anneal".
    std::string method = "auto";
    int max_nodes = 30;
    AnnealParams anneal;
};

nlohmann::json solve_options_to_json(const SolveOptions &options);
SolveOptions solve_options_from_json(const nlohmann::json &j);
Extrema solve(const IsingInstance &instance, const SolveOptions &options, int jobs);

ScheduleSource source_of(const IsingInstance &instance);

struct MpsValidationRow {
    std::string source;
    std::string target;
    int p = 0;
    int chi = 0;
    double e_ref = 0;
    double e_mps = 0;
    double delta_e = 0;
    double discarded_weight = 0;
    int max_bond = 0;
};

/// Reference energy from the statevector when the target fits, otherwise
/// from the largest chi in the sweep.
std::vector<MpsValidationRow> mps_validate(
    const std::vector<AngleSchedule> &series,
    const IsingInstance &target,
    std::vector<int> chis,
    double cutoff,
    int jobs,
    std::vector<std::string> *ledgers = nullptr);
std::string mps_validation_csv(const std::vector<MpsValidationRow> &rows);

/// Per-target AR-vs-p table: target,source,backend,p,ar,dip.
std::string ar_table_csv(const std::vector<TransferReport> &reports);
/// One row per report: source,target,backend,n,p_max,ar_1,ar_final,qaoa_volume.
std::string volume_table_csv(const std::vector<TransferReport> &reports);

Circuit make_circuit(const IsingInstance &instance, const QaoaAngles &angles, uint64_t coloring_seed, const std::string &basis);

}  // namespace hexq::cli
