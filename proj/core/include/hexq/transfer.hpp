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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/angles.hpp"
#include "hexq/extrema.hpp"
#include "hexq/instance.hpp"
#include "hexq/qaoa_angles.hpp"

namespace hexq {

/// Simulator used to evaluate fixed schedules.
struct Backend {
    enum class Kind { statevec, mps };
    Kind kind = Kind::statevec;
    int chi_max = 0;
    double cutoff = 1e-12;

    static Backend statevec() {
        return {};
    }
    static Backend mps(int chi_max, double cutoff = 1e-12);
    /// "statevec" or "mps:<chi>".
    static Backend parse(std::string_view text);
    std::string name() const;
    bool operator==(const Backend &) const = default;
};

/// <H_C> of the QAOA state on `instance`.
double evaluate_expectation(const IsingInstance &instance, const QaoaAngles &angles, const Backend &backend);

struct TransferRow {
    int p = 0;
    double expectation = 0;
    double ar = 0;
    bool dip = false;
    std::optional<double> gs_prob;
    bool operator==(const TransferRow &) const = default;
};

struct TransferReport {
    std::string source_id;
    std::string target_id;
    int n = 0;
    Backend backend;
    std::vector<TransferRow> rows;
    int64_t qaoa_volume = 0;
    std::vector<double> ar_series() const;
    bool operator==(const TransferReport &) const = default;
};

/// dip[p] is set iff ar[p] < ar[p - 1]; never at the first entry.
std::vector<bool> dip_flags(std::span<const double> ar);
/// n * p*, where p* is the largest depth such that AR strictly increases over
/// 1..p*. A series that never improves on p = 1 still gives n * 1; an empty
/// series gives 0.
int64_t qaoa_volume(int n, std::span<const double> ar);
int64_t qaoa_volume(const TransferReport &report);

struct TransferOptions {
    Backend backend;
    /// Shots per depth for the ground-state rate; 0 disables sampling.
    int shots = 0;
    uint64_t seed = 0;
    int jobs = 1;
};

/// Evaluates the schedules (p = 1..p_max of one source) as fixed angles on
/// the target.
TransferReport evaluate_transfer(
    const std::vector<AngleSchedule> &series,
    const IsingInstance &target,
    const Extrema &extrema,
    const TransferOptions &options);

/// Fraction of `shots` samples whose energy equals c_min. Refuses heuristic
/// extrema with InvalidArgument.
double gs_probability(
    const IsingInstance &instance,
    const QaoaAngles &angles,
    const Extrema &extrema,
    int shots,
    const Backend &backend,
    uint64_t seed);
/// Exact ground-state weight of the statevector (n <= 28).
double gs_probability_exact(const IsingInstance &instance, const QaoaAngles &angles, const Extrema &extrema);

nlohmann::json report_to_json(const TransferReport &report);
TransferReport report_from_json(const nlohmann::json &j);
/// Header: source,target,backend,p,expectation,ar,dip,gs_prob. gs_prob is empty when
/// not sampled.
std::string report_to_csv(const TransferReport &report, bool header = true);
std::string transfer_csv_header();

}  // namespace hexq
