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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/extrema.hpp"
#include "hexq/qaoa_angles.hpp"
#include "hexq/rng.hpp"
#include "hexq/statevec.hpp"

namespace hexq {

/// Search direction used inside each local descent.
enum class DescentDirection { steepest, lbfgs };

struct TrainConfig {
    int max_p = 10;
    /// Required decrease of <H_C> over the previous p before a step is accepted.
    double improvement_threshold = 1e-6;
    int basin_hops_per_p = 1;
    int max_retries_per_p = 10;
    /// Initial trial step of the backtracking line search.
    double gd_step = 0.1;
    /// Descent stops once the gradient norm falls below this.
    double gd_tolerance = 1e-6;
    int gd_max_iters = 1000;
    DescentDirection direction = DescentDirection::lbfgs;
    /// Standard deviation of the basin-hopping perturbation, in radians.
    double hop_scale = 0.3;
    /// Training halts once <H_C> - c_min <= stop_energy_gap.
    double stop_energy_gap = 0.01;
    uint64_t seed = 0;
    int jobs = 1;
};

nlohmann::json train_config_to_json(const TrainConfig &config);
/// Missing keys keep their defaults; unknown keys are rejected.
TrainConfig train_config_from_json(const nlohmann::json &j);

/// f(x) with its gradient written into grad (same length as x).
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LocalMinimum {
    std::vector<double> x;
    double value = 0;
    int iterations = 0;
};

/// Descent with Armijo backtracking from x0.
LocalMinimum gradient_descent(const Objective &objective, std::vector<double> x0, const TrainConfig &config);

/// Local descent, then basin_hops_per_p rounds of Gaussian perturbation and
/// re-descent; a hop is accepted only if it lowers the objective.
LocalMinimum basin_hop(const Objective &objective, std::vector<double> init, const TrainConfig &config, Rng &rng);

/// <H_C>(beta, gamma) and its gradient, packed as in QaoaAngles::packed().
/// Holds a reference to cost, which must outlive the returned callable.
Objective qaoa_objective(const CostVector &cost);
Objective qaoa_objective(CostVector &&) = delete;

struct TrainedAngles {
    QaoaAngles angles;
    double expectation = 0;
};

/// p = 1 training from a uniformly random (beta, gamma) in [0, 2pi)^2.
TrainedAngles train_p1(const CostVector &cost, const TrainConfig &config);

/// Warm start for p + 1: layers 1..p copied, the new layer duplicated from
/// layer 1 when p == 1 and linearly extrapolated from the last two otherwise.
QaoaAngles extend_schedule(const QaoaAngles &previous);

struct TrainStep {
    int p = 0;
    QaoaAngles angles;
    double expectation = 0;
    double ar = 0;
    /// Fresh random restarts needed beyond the warm start.
    int retries = 0;
    double wall_seconds = 0;
};

enum class TrainStatus { completed, reached_ground, retries_exhausted };

std::string to_string(TrainStatus status);

struct TrainTrace {
    std::vector<TrainStep> steps;
    TrainStatus status = TrainStatus::completed;
    /// Set when status == retries_exhausted.
    int failed_p = 0;
    double failed_best = 0;
};

/// Incremental training for p = 1..max_p. Every accepted step lowers <H_C>
/// by more than improvement_threshold; otherwise up to max_retries_per_p
/// fresh random starts are tried before the trace halts.
TrainTrace train_incremental(const CostVector &cost, const Extrema &extrema, const TrainConfig &config);

/// Timings are machine dependent and omitted unless requested.
nlohmann::json trace_to_json(const TrainTrace &trace, bool include_timings = false);
TrainTrace trace_from_json(const nlohmann::json &j);

}  // namespace hexq
