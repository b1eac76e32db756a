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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/instance.hpp"
#include "hexq/optimizer.hpp"
#include "hexq/qaoa_angles.hpp"

namespace hexq {

/// Instance a schedule was trained on.
struct ScheduleSource {
    std::string instance_id;
    int n = 0;
    CoefficientMode mode = CoefficientMode::random_pm1;
    bool operator==(const ScheduleSource &) const = default;
};

struct AngleSchedule {
    ScheduleSource source;
    QaoaAngles angles;
    double expectation = 0;
    double ar = 0;
    int p() const noexcept {
        return angles.p();
    }
    bool operator==(const AngleSchedule &) const = default;
};

/// Representative of the angles under gamma_j -> gamma_j + pi,
/// beta_j -> beta_j + pi and the global sign flip. Every angle lands in
/// (-pi/2, pi/2]; the sign is fixed so that the first nonzero beta (or,
/// failing that, the first nonzero gamma) is positive. The measurement
/// distribution is unchanged.
QaoaAngles canonicalize(const QaoaAngles &angles);
AngleSchedule canonicalize(const AngleSchedule &schedule);

/// Schedules keyed by (source instance id, p). For every source the stored
/// depths must form 1..p_max.
class AngleEnsemble {
   public:
    using Key = std::pair<std::string, int>;

    /// Inserts or replaces. Throws InvalidArgument on an empty or ragged
    /// schedule.
    void add(AngleSchedule schedule);
    /// Adds every accepted step of a training trace.
    void add_trace(const ScheduleSource &source, const TrainTrace &trace);

    const AngleSchedule &at(const std::string &source_id, int p) const;
    bool contains(const std::string &source_id, int p) const;
    std::vector<std::string> sources() const;
    /// Schedules for p = 1..p_max of one source. Throws when depths are missing.
    std::vector<AngleSchedule> series(const std::string &source_id) const;
    int max_p(const std::string &source_id) const;
    /// Throws FormatError if any source has a gap in its depths.
    void check_contiguous() const;

    size_t size() const noexcept {
        return entries_.size();
    }
    const std::map<Key, AngleSchedule> &entries() const noexcept {
        return entries_;
    }
    bool operator==(const AngleEnsemble &) const = default;

   private:
    std::map<Key, AngleSchedule> entries_;
};

nlohmann::json schedule_to_json(const AngleSchedule &schedule);
AngleSchedule schedule_from_json(const nlohmann::json &j);
/// {"version": 1, "ensemble": [schedule, ...]} ordered by (source id, p).
nlohmann::json ensemble_to_json(const AngleEnsemble &ensemble);
AngleEnsemble ensemble_from_json(const nlohmann::json &j);
void save_ensemble(const AngleEnsemble &ensemble, const std::filesystem::path &path);
AngleEnsemble load_ensemble(const std::filesystem::path &path);

struct ScheduleSummaryRow {
    std::string source_id;
    int p = 0;
    double beta_first = 0;
    double beta_last = 0;
    double gamma_first = 0;
    double gamma_last = 0;
    double beta_range = 0;
    double gamma_range = 0;
};

/// Endpoint and range statistics per (source, p), computed on the angles as
/// stored; canonicalize first for presentation.
std::vector<ScheduleSummaryRow> schedule_summary(const AngleEnsemble &ensemble);
/// Header: source,p,beta_1,beta_p,gamma_1,gamma_p,beta_range,gamma_range.
std::string summary_to_csv(const std::vector<ScheduleSummaryRow> &rows);

}  // namespace hexq
