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

#include "hexq/transfer.hpp"

#include <charconv>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/format.hpp"
#include "hexq/mps.hpp"
#include "hexq/parallel.hpp"
#include "hexq/rng.hpp"
#include "hexq/statevec.hpp"

namespace hexq {

namespace {

void require_exact(const Extrema &extrema) {
    if (!extrema.exact()) {
        throw InvalidArgument("ground-state rates need exact extrema; heuristic minima could mislabel ground states");
    }
}

uint64_t depth_seed(uint64_t seed, int p) {
    return keyed_u64(seed, 0x65, static_cast<uint64_t>(p));
}

}  // namespace

Backend Backend::mps(int chi_max, double cutoff) {
    if (chi_max < 1) {
        throw InvalidArgument("mps backend needs chi >= 1");
    }
    return {Kind::mps, chi_max, cutoff};
}

Backend Backend::parse(std::string_view text) {
    if (text == "statevec") {
        return statevec();
    }
    if (text.starts_with("mps:")) {
        auto digits = text.substr(4);
        int chi = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), chi);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) {
            return mps(chi);
        }
    }
    throw InvalidArgument("unknown backend '" + std::string(text) + "'; expected statevec or mps:<chi>");
}

std::string Backend::name() const {
    return kind == Kind::statevec ? "statevec" : "mps:" + std::to_string(chi_max);
}

double evaluate_expectation(const IsingInstance &instance, const QaoaAngles &angles, const Backend &backend) {
    if (backend.kind == Backend::Kind::statevec) {
        CostVector cost = cost_vector(instance);
        return expectation(qaoa_state(cost, angles), cost);
    }
    MpsResult r = evolve_mps(instance, angles, {backend.chi_max, backend.cutoff, std::nullopt});
    return mps_expectation(r.state, instance, r.order);
}

std::vector<double> TransferReport::ar_series() const {
    std::vector<double> out;
    for (const auto &r : rows) {
        out.push_back(r.ar);
    }
    return out;
}

std::vector<bool> dip_flags(std::span<const double> ar) {
    std::vector<bool> out(ar.size(), false);
    for (size_t i = 1; i < ar.size(); i++) {
        out[i] = ar[i] < ar[i - 1];
    }
    return out;
}

int64_t qaoa_volume(int n, std::span<const double> ar) {
    if (ar.empty()) {
        return 0;
    }
    size_t p_star = 1;
    while (p_star < ar.size() && ar[p_star] > ar[p_star - 1]) {
        p_star++;
    }
    return static_cast<int64_t>(n) * static_cast<int64_t>(p_star);
}

int64_t qaoa_volume(const TransferReport &report) {
    auto ar = report.ar_series();
    return qaoa_volume(report.n, ar);
}

TransferReport evaluate_transfer(
    const std::vector<AngleSchedule> &series,
    const IsingInstance &target,
    const Extrema &extrema,
    const TransferOptions &options) {
    if (series.empty()) {
        throw MissingInput("no schedules to transfer");
    }
    for (size_t i = 0; i < series.size(); i++) {
        if (series[i].p() != static_cast<int>(i) + 1) {
            throw InvalidArgument("schedule series must hold p = 1..p_max in order");
        }
    }
    if (extrema.c_max <= extrema.c_min) {
        throw InvalidArgument("target extrema are degenerate (c_max <= c_min)");
    }
    if (options.shots > 0) {
        require_exact(extrema);
    }

    TransferReport report;
    report.source_id = series.front().source.instance_id;
    report.target_id = target.id;
    report.n = target.node_count();
    report.backend = options.backend;
    report.rows.resize(series.size());

    std::optional<CostVector> cost;
    if (options.backend.kind == Backend::Kind::statevec) {
        cost = cost_vector(target);
    }
    parallel_for(series.size(), options.jobs, [&](size_t i) {
        const QaoaAngles &angles = series[i].angles;
        TransferRow &row = report.rows[i];
        row.p = series[i].p();
        uint64_t seed = depth_seed(options.seed, row.p);
        if (cost) {
            StateVector state = qaoa_state(*cost, angles);
            row.expectation = expectation(state, *cost);
            if (options.shots > 0) {
                SampleSet s = sample(state, options.shots, seed);
                int hits = 0;
                for (const auto &[index, count] : s.counts) {
                    if (cost->values[index] == extrema.c_min) hits += count;
                }
                row.gs_prob = static_cast<double>(hits) / options.shots;
            }
        } else {
            MpsResult r = evolve_mps(target, angles, {options.backend.chi_max, options.backend.cutoff, std::nullopt});
            row.expectation = mps_expectation(r.state, target, r.order);
            if (options.shots > 0) {
                SampleSet s = sample_mps(r.state, r.order, options.shots, seed);
                int hits = 0;
                for (const auto &[index, count] : s.counts) {
                    if (energy(target, spins_from_index(index, report.n)) == extrema.c_min) hits += count;
                }
                row.gs_prob = static_cast<double>(hits) / options.shots;
            }
        }
        row.ar = approximation_ratio(extrema, row.expectation);
    });

    auto ar = report.ar_series();
    auto dips = dip_flags(ar);
    for (size_t i = 0; i < report.rows.size(); i++) {
        report.rows[i].dip = dips[i];
    }
    report.qaoa_volume = qaoa_volume(report.n, ar);
    return report;
}

double gs_probability(
    const IsingInstance &instance,
    const QaoaAngles &angles,
    const Extrema &extrema,
    int shots,
    const Backend &backend,
    uint64_t seed) {
    require_exact(extrema);
    if (shots < 1) {
        throw InvalidArgument("shots must be positive");
    }
    if (angles.p() < 1) {
        throw InvalidArgument("schedule must have p >= 1");
    }
    const int n = instance.node_count();
    SampleSet s;
    if (backend.kind == Backend::Kind::statevec) {
        s = sample(qaoa_state(instance, angles), shots, seed);
    } else {
        MpsResult r = evolve_mps(instance, angles, {backend.chi_max, backend.cutoff, std::nullopt});
        s = sample_mps(r.state, r.order, shots, seed);
    }
    int hits = 0;
    for (const auto &[index, count] : s.counts) {
        if (energy(instance, spins_from_index(index, n)) == extrema.c_min) hits += count;
    }
    return static_cast<double>(hits) / shots;
}

double gs_probability_exact(const IsingInstance &instance, const QaoaAngles &angles, const Extrema &extrema) {
    require_exact(extrema);
    CostVector cost = cost_vector(instance);
    StateVector state = qaoa_state(cost, angles);
    double total = 0;
    auto amps = state.amplitudes();
    for (size_t b = 0; b < amps.size(); b++) {
        if (cost.values[b] == extrema.c_min) total += std::norm(amps[b]);
    }
    return total;
}

nlohmann::json report_to_json(const TransferReport &report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : report.rows) {
        nlohmann::json row = {{"p", r.p}, {"expectation", r.expectation}, {"ar", r.ar}, {"dip", r.dip}};
        row["gs_prob"] = r.gs_prob ? nlohmann::json(*r.gs_prob) : nlohmann::json(nullptr);
        rows.push_back(std::move(row));
    }
    return {
        {"version", 1},
        {"source", report.source_id},
        {"target", report.target_id},
        {"n", report.n},
        {"backend", report.backend.name()},
        {"rows", std::move(rows)},
        {"qaoa_volume", report.qaoa_volume},
    };
}

TransferReport report_from_json(const nlohmann::json &j) {
    try {
        if (j.at("version").get<int>() != 1) {
            throw FormatError("unsupported transfer report version");
        }
        TransferReport r;
        r.source_id = j.at("source").get<std::string>();
        r.target_id = j.at("target").get<std::string>();
        r.n = j.at("n").get<int>();
        r.backend = Backend::parse(j.at("backend").get<std::string>());
        for (const auto &row : j.at("rows")) {
            TransferRow t;
            t.p = row.at("p").get<int>();
            t.expectation = row.at("expectation").get<double>();
            t.ar = row.at("ar").get<double>();
            t.dip = row.at("dip").get<bool>();
            if (!row.at("gs_prob").is_null()) t.gs_prob = row.at("gs_prob").get<double>();
            r.rows.push_back(t);
        }
        r.qaoa_volume = j.at("qaoa_volume").get<int64_t>();
        return r;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed transfer report: ") + ex.what());
    } catch (const InvalidArgument &ex) {
        throw FormatError(std::string("malformed transfer report: ") + ex.what());
    }
}

std::string transfer_csv_header() {
    return "source,target,backend,p,expectation,ar,dip,gs_prob\n";
}

std::string report_to_csv(const TransferReport &report, bool header) {
    std::ostringstream out;
    if (header) {
        out << transfer_csv_header();
    }
    for (const auto &r : report.rows) {
        out << report.source_id << ',' << report.target_id << ',' << report.backend.name() << ',' << r.p << ','
            << format_real(r.expectation) << ',' << format_real(r.ar) << ',' << (r.dip ? 1 : 0) << ',' << (r.gs_prob ? format_real(*r.gs_prob) : "")
            << '\n';
    }
    return out.str();
}

}  // namespace hexq
