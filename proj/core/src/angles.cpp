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

#include "hexq/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/format.hpp"

namespace hexq {

namespace {

constexpr double kPi = std::numbers::pi;

// Reduce modulo pi into (-pi/2, pi/2]. Values already inside are returned
// untouched so that the operation is idempotent bit for bit.
double reduce(double x) {
    const double half = kPi / 2;
    if (x > -half && x <= half) {
        return x;
    }
    double r = x - kPi * std::round(x / kPi);
    if (r <= -half) {
        r += kPi;
    } else if (r > half) {
        r -= kPi;
    }
    return r;
}

// -1 if the first nonzero entry is negative, +1 otherwise, 0 if all zero.
int leading_sign(const std::vector<double> &v) {
    for (double x : v) {
        if (x != 0) {
            return x < 0 ? -1 : 1;
        }
    }
    return 0;
}

void check_schedule(const AngleSchedule &s) {
    if (s.angles.p() < 1 || s.angles.betas.size() != s.angles.gammas.size()) {
        throw InvalidArgument("angle schedule needs matching betas and gammas with p >= 1");
    }
    if (s.source.instance_id.empty()) {
        throw InvalidArgument("angle schedule has no source instance id");
    }
}

}  // namespace

QaoaAngles canonicalize(const QaoaAngles &angles) {
    QaoaAngles out = angles;
    for (auto &b : out.betas) b = reduce(b);
    for (auto &g : out.gammas) g = reduce(g);
    int sign = leading_sign(out.betas);
    if (sign == 0) {
        sign = leading_sign(out.gammas);
    }
    if (sign < 0) {
        for (auto &b : out.betas) b = reduce(-b);
        for (auto &g : out.gammas) g = reduce(-g);
    }
    return out;
}

AngleSchedule canonicalize(const AngleSchedule &schedule) {
    AngleSchedule out = schedule;
    out.angles = canonicalize(schedule.angles);
    return out;
}

void AngleEnsemble::add(AngleSchedule schedule) {
    check_schedule(schedule);
    Key key{schedule.source.instance_id, schedule.p()};
    entries_.insert_or_assign(std::move(key), std::move(schedule));
}

void AngleEnsemble::add_trace(const ScheduleSource &source, const TrainTrace &trace) {
    for (const auto &step : trace.steps) {
        add({source, step.angles, step.expectation, step.ar});
    }
}

const AngleSchedule &AngleEnsemble::at(const std::string &source_id, int p) const {
    auto it = entries_.find({source_id, p});
    if (it == entries_.end()) {
        throw MissingInput("no schedule for source '" + source_id + "' at p=" + std::to_string(p));
    }
    return it->second;
}

bool AngleEnsemble::contains(const std::string &source_id, int p) const {
    return entries_.count({source_id, p}) > 0;
}

std::vector<std::string> AngleEnsemble::sources() const {
    std::vector<std::string> out;
    for (const auto &[key, _] : entries_) {
        if (out.empty() || out.back() != key.first) {
            out.push_back(key.first);
        }
    }
    return out;
}

int AngleEnsemble::max_p(const std::string &source_id) const {
    int best = 0;
    for (auto it = entries_.lower_bound({source_id, 0}); it != entries_.end() && it->first.first == source_id; ++it) {
        best = std::max(best, it->first.second);
    }
    return best;
}

std::vector<AngleSchedule> AngleEnsemble::series(const std::string &source_id) const {
    int top = max_p(source_id);
    if (top == 0) {
        throw MissingInput("no schedules for source '" + source_id + "'");
    }
    std::vector<AngleSchedule> out;
    for (int p = 1; p <= top; p++) {
        out.push_back(at(source_id, p));
    }
    return out;
}

void AngleEnsemble::check_contiguous() const {
    std::map<std::string, int> count;
    for (const auto &[key, _] : entries_) {
        count[key.first]++;
    }
    for (const auto &[source, c] : count) {
        if (max_p(source) != c || !contains(source, 1)) {
            throw FormatError("schedules for source '" + source + "' do not cover p = 1.." + std::to_string(max_p(source)));
        }
    }
}

nlohmann::json schedule_to_json(const AngleSchedule &s) {
    return {
        {"source", {{"instance_id", s.source.instance_id}, {"n", s.source.n}, {"mode", to_string(s.source.mode)}}},
        {"p", s.p()},
        {"betas", s.angles.betas},
        {"gammas", s.angles.gammas},
        {"expectation", s.expectation},
        {"ar", s.ar},
    };
}

AngleSchedule schedule_from_json(const nlohmann::json &j) {
    AngleSchedule s;
    try {
        const auto &src = j.at("source");
        s.source.instance_id = src.at("instance_id").get<std::string>();
        s.source.n = src.at("n").get<int>();
        s.source.mode = parse_coefficient_mode(src.at("mode").get<std::string>());
        s.angles.betas = j.at("betas").get<std::vector<double>>();
        s.angles.gammas = j.at("gammas").get<std::vector<double>>();
        s.expectation = j.at("expectation").get<double>();
        s.ar = j.at("ar").get<double>();
        if (j.at("p").get<int>() != s.angles.p()) {
            throw FormatError("schedule p does not match the number of angles");
        }
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed angle schedule: ") + ex.what());
    } catch (const InvalidArgument &ex) {
        throw FormatError(std::string("malformed angle schedule: ") + ex.what());
    }
    if (s.angles.p() < 1 || s.angles.betas.size() != s.angles.gammas.size()) {
        throw FormatError("angle schedule needs matching betas and gammas with p >= 1");
    }
    return s;
}

nlohmann::json ensemble_to_json(const AngleEnsemble &ensemble) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[_, s] : ensemble.entries()) {
        rows.push_back(schedule_to_json(s));
    }
    return {{"version", 1}, {"ensemble", std::move(rows)}};
}

AngleEnsemble ensemble_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("version") || !j.contains("ensemble")) {
        throw FormatError("not an angle ensemble file");
    }
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != 1) {
        throw FormatError("unsupported angle ensemble version " + j.at("version").dump());
    }
    if (!j.at("ensemble").is_array()) {
        throw FormatError("angle ensemble entries must be an array");
    }
    AngleEnsemble out;
    for (const auto &row : j.at("ensemble")) {
        out.add(schedule_from_json(row));
    }
    out.check_contiguous();
    return out;
}

void save_ensemble(const AngleEnsemble &ensemble, const std::filesystem::path &path) {
    write_json_file(ensemble_to_json(ensemble), path);
}

AngleEnsemble load_ensemble(const std::filesystem::path &path) {
    return ensemble_from_json(read_json_file(path));
}

std::vector<ScheduleSummaryRow> schedule_summary(const AngleEnsemble &ensemble) {
    std::vector<ScheduleSummaryRow> rows;
    for (const auto &[key, s] : ensemble.entries()) {
        const auto &b = s.angles.betas;
        const auto &g = s.angles.gammas;
        auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
        auto [gmin, gmax] = std::minmax_element(g.begin(), g.end());
        rows.push_back({key.first, key.second, b.front(), b.back(), g.front(), g.back(), *bmax - *bmin, *gmax - *gmin});
    }
    return rows;
}

std::string summary_to_csv(const std::vector<ScheduleSummaryRow> &rows) {
    std::ostringstream out;
    out << "source,p,beta_1,beta_p,gamma_1,gamma_p,beta_range,gamma_range\n";
    for (const auto &r : rows) {
        out << r.source_id << ',' << r.p << ',' << format_real(r.beta_first) << ',' << format_real(r.beta_last) << ','
            << format_real(r.gamma_first) << ',' << format_real(r.gamma_last) << ',' << format_real(r.beta_range)
            << ',' << format_real(r.gamma_range) << '\n';
    }
    return out.str();
}

}  // namespace hexq
