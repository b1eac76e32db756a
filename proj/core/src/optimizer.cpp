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

#include "hexq/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>

#include "hexq/error.hpp"

namespace hexq {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 50;
constexpr size_t kLbfgsMemory = 8;

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Two-loop recursion: returns -H g for the implicit inverse Hessian H.
std::vector<double> lbfgs_direction(
    const std::vector<double> &g,
    const std::deque<std::vector<double>> &s_hist,
    const std::deque<std::vector<double>> &y_hist) {
    std::vector<double> q = g;
    size_t m = s_hist.size();
    std::vector<double> alpha(m), rho(m);
    for (size_t k = m; k-- > 0;) {
        rho[k] = 1.0 / dot(y_hist[k], s_hist[k]);
        alpha[k] = rho[k] * dot(s_hist[k], q);
        for (size_t i = 0; i < q.size(); i++) {
            q[i] -= alpha[k] * y_hist[k][i];
        }
    }
    if (m > 0) {
        double scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
        for (auto &v : q) {
            v *= scale;
        }
    }
    for (size_t k = 0; k < m; k++) {
        double beta = rho[k] * dot(y_hist[k], q);
        for (size_t i = 0; i < q.size(); i++) {
            q[i] += s_hist[k][i] * (alpha[k] - beta);
        }
    }
    for (auto &v : q) {
        v = -v;
    }
    return q;
}

void check_config(const TrainConfig &c) {
    if (c.max_p < 1) throw InvalidArgument("max_p must be >= 1");
    if (!(c.gd_tolerance > 0)) throw InvalidArgument("gd_tolerance must be positive");
    if (!(c.gd_step > 0)) throw InvalidArgument("gd_step must be positive");
    if (c.gd_max_iters < 1) throw InvalidArgument("gd_max_iters must be >= 1");
    if (c.basin_hops_per_p < 0) throw InvalidArgument("basin_hops_per_p must be >= 0");
    if (c.max_retries_per_p < 0) throw InvalidArgument("max_retries_per_p must be >= 0");
    if (!(c.improvement_threshold >= 0)) throw InvalidArgument("improvement_threshold must be >= 0");
    if (!(c.hop_scale >= 0)) throw InvalidArgument("hop_scale must be >= 0");
}

std::string to_string(DescentDirection d) {
    return d == DescentDirection::steepest ? "steepest" : "lbfgs";
}

DescentDirection parse_direction(const std::string &s) {
    if (s == "steepest") return DescentDirection::steepest;
    if (s == "lbfgs") return DescentDirection::lbfgs;
    throw InvalidArgument("unknown descent direction '" + s + "'");
}

std::vector<double> uniform_angles(size_t count, Rng &rng) {
    std::vector<double> x(count);
    for (auto &v : x) {
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return x;
}

// Keyed streams: kind = p, index = attempt.
Rng stream_for(const TrainConfig &config, int p, int attempt) {
    return Rng(config.seed, 0x7000 + static_cast<uint64_t>(p), static_cast<uint64_t>(attempt));
}

}  // namespace

nlohmann::json train_config_to_json(const TrainConfig &c) {
    return {
        {"max_p", c.max_p},
        {"improvement_threshold", c.improvement_threshold},
        {"basin_hops_per_p", c.basin_hops_per_p},
        {"max_retries_per_p", c.max_retries_per_p},
        {"gd_step", c.gd_step},
        {"gd_tolerance", c.gd_tolerance},
        {"gd_max_iters", c.gd_max_iters},
        {"direction", to_string(c.direction)},
        {"hop_scale", c.hop_scale},
        {"stop_energy_gap", c.stop_energy_gap},
        {"seed", c.seed},
    };
}

TrainConfig train_config_from_json(const nlohmann::json &j) {
    static const std::set<std::string> known = {
        "max_p", "improvement_threshold", "basin_hops_per_p", "max_retries_per_p", "gd_step", "gd_tolerance",
        "gd_max_iters", "direction", "hop_scale", "stop_energy_gap", "seed", "jobs"};
    if (!j.is_object()) {
        throw InvalidArgument("train config must be an object");
    }
    for (const auto &[key, _] : j.items()) {
        if (!known.count(key)) {
            throw InvalidArgument("unknown train config key '" + key + "'");
        }
    }
    TrainConfig c;
    try {
        c.max_p = j.value("max_p", c.max_p);
        c.improvement_threshold = j.value("improvement_threshold", c.improvement_threshold);
        c.basin_hops_per_p = j.value("basin_hops_per_p", c.basin_hops_per_p);
        c.max_retries_per_p = j.value("max_retries_per_p", c.max_retries_per_p);
        c.gd_step = j.value("gd_step", c.gd_step);
        c.gd_tolerance = j.value("gd_tolerance", c.gd_tolerance);
        c.gd_max_iters = j.value("gd_max_iters", c.gd_max_iters);
        if (j.contains("direction")) c.direction = parse_direction(j.at("direction").get<std::string>());
        c.hop_scale = j.value("hop_scale", c.hop_scale);
        c.stop_energy_gap = j.value("stop_energy_gap", c.stop_energy_gap);
        c.seed = j.value("seed", c.seed);
        c.jobs = j.value("jobs", c.jobs);
    } catch (const nlohmann::json::exception &ex) {
        throw InvalidArgument(std::string("bad train config value: ") + ex.what());
    }
    check_config(c);
    return c;
}

LocalMinimum gradient_descent(const Objective &objective, std::vector<double> x0, const TrainConfig &config) {
    const size_t dim = x0.size();
    LocalMinimum out;
    out.x = std::move(x0);
    std::vector<double> g(dim), g_new(dim), x_new(dim);
    out.value = objective(out.x, g);
    std::deque<std::vector<double>> s_hist, y_hist;
    double step = config.gd_step;

    for (out.iterations = 0; out.iterations < config.gd_max_iters; out.iterations++) {
        double gnorm = std::sqrt(dot(g, g));
        if (gnorm < config.gd_tolerance) {
            break;
        }
        std::vector<double> d;
        double t;
        if (config.direction == DescentDirection::lbfgs) {
            d = lbfgs_direction(g, s_hist, y_hist);
            if (dot(d, g) >= 0) {
                s_hist.clear();
                y_hist.clear();
                d = lbfgs_direction(g, s_hist, y_hist);
            }
            t = s_hist.empty() ? config.gd_step / std::max(gnorm, 1.0) : 1.0;
        } else {
            d.resize(dim);
            for (size_t i = 0; i < dim; i++) {
                d[i] = -g[i];
            }
            t = step;
        }
        double slope = dot(g, d);
        bool accepted = false;
        double f_new = 0;
        for (int bt = 0; bt < kMaxBacktracks; bt++) {
            for (size_t i = 0; i < dim; i++) {
                x_new[i] = out.x[i] + t * d[i];
            }
            f_new = objective(x_new, g_new);
            if (f_new <= out.value + kArmijo * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // No decrease along a descent direction at machine precision.
            break;
        }
        if (config.direction == DescentDirection::lbfgs) {
            std::vector<double> s(dim), y(dim);
            for (size_t i = 0; i < dim; i++) {
                s[i] = x_new[i] - out.x[i];
                y[i] = g_new[i] - g[i];
            }
            if (dot(s, y) > 1e-16 * std::sqrt(dot(s, s) * dot(y, y))) {
                s_hist.push_back(std::move(s));
                y_hist.push_back(std::move(y));
                if (s_hist.size() > kLbfgsMemory) {
                    s_hist.pop_front();
                    y_hist.pop_front();
                }
            }
        } else {
            step = 2.0 * t;
        }
        double decrease = out.value - f_new;
        out.x.swap(x_new);
        g.swap(g_new);
        out.value = f_new;
        if (decrease <= 1e-15 * std::max(1.0, std::abs(out.value))) {
            out.iterations++;
            break;
        }
    }
    return out;
}

LocalMinimum basin_hop(const Objective &objective, std::vector<double> init, const TrainConfig &config, Rng &rng) {
    LocalMinimum best = gradient_descent(objective, std::move(init), config);
    for (int hop = 0; hop < config.basin_hops_per_p; hop++) {
        std::vector<double> trial = best.x;
        for (auto &v : trial) {
            v += config.hop_scale * rng.normal();
        }
        LocalMinimum candidate = gradient_descent(objective, std::move(trial), config);
        if (candidate.value < best.value) {
            candidate.iterations += best.iterations;
            best = std::move(candidate);
        } else {
            best.iterations += candidate.iterations;
        }
    }
    return best;
}

Objective qaoa_objective(const CostVector &cost) {
    return [&cost](std::span<const double> x, std::span<double> grad) {
        QaoaAngles angles = QaoaAngles::unpack(std::vector<double>(x.begin(), x.end()));
        ValueAndGradient vg = gradient(cost, angles);
        if (!grad.empty()) {
            auto packed = vg.packed();
            std::copy(packed.begin(), packed.end(), grad.begin());
        }
        return vg.value;
    };
}

TrainedAngles train_p1(const CostVector &cost, const TrainConfig &config) {
    check_config(config);
    Rng rng = stream_for(config, 1, 0);
    auto init = uniform_angles(2, rng);
    LocalMinimum m = basin_hop(qaoa_objective(cost), std::move(init), config, rng);
    return {QaoaAngles::unpack(m.x), m.value};
}

QaoaAngles extend_schedule(const QaoaAngles &previous) {
    if (previous.p() < 1 || previous.betas.size() != previous.gammas.size()) {
        throw InvalidArgument("cannot extend an empty or malformed schedule");
    }
    QaoaAngles next = previous;
    int p = previous.p();
    if (p == 1) {
        next.betas.push_back(previous.betas[0]);
        next.gammas.push_back(previous.gammas[0]);
    } else {
        next.betas.push_back(2.0 * previous.betas[p - 1] - previous.betas[p - 2]);
        next.gammas.push_back(2.0 * previous.gammas[p - 1] - previous.gammas[p - 2]);
    }
    return next;
}

std::string to_string(TrainStatus status) {
    switch (status) {
        case TrainStatus::completed:
            return "completed";
        case TrainStatus::reached_ground:
            return "reached_ground";
        case TrainStatus::retries_exhausted:
            return "retries_exhausted";
    }
    return "unknown";
}

TrainTrace train_incremental(const CostVector &cost, const Extrema &extrema, const TrainConfig &config) {
    check_config(config);
    using clock = std::chrono::steady_clock;
    TrainTrace trace;
    auto objective = qaoa_objective(cost);
    auto ar_of = [&](double e) {
        return extrema.c_max > extrema.c_min ? approximation_ratio(extrema, e) : 1.0;
    };
    auto near_ground = [&](double e) {
        return e - static_cast<double>(extrema.c_min) <= config.stop_energy_gap;
    };

    auto start = clock::now();
    TrainedAngles first = train_p1(cost, config);
    trace.steps.push_back(
        {1, first.angles, first.expectation, ar_of(first.expectation), 0,
         std::chrono::duration<double>(clock::now() - start).count()});
    if (near_ground(first.expectation)) {
        trace.status = TrainStatus::reached_ground;
        return trace;
    }

    for (int p = 2; p <= config.max_p; p++) {
        start = clock::now();
        const TrainStep &prev = trace.steps.back();
        bool accepted = false;
        double best_seen = std::numeric_limits<double>::infinity();
        for (int attempt = 0; attempt <= config.max_retries_per_p; attempt++) {
            Rng rng = stream_for(config, p, attempt);
            std::vector<double> init =
                attempt == 0 ? extend_schedule(prev.angles).packed() : uniform_angles(2 * static_cast<size_t>(p), rng);
            LocalMinimum m = basin_hop(objective, std::move(init), config, rng);
            best_seen = std::min(best_seen, m.value);
            if (m.value < prev.expectation - config.improvement_threshold) {
                trace.steps.push_back(
                    {p, QaoaAngles::unpack(m.x), m.value, ar_of(m.value), attempt,
                     std::chrono::duration<double>(clock::now() - start).count()});
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            trace.status = TrainStatus::retries_exhausted;
            trace.failed_p = p;
            trace.failed_best = best_seen;
            return trace;
        }
        if (near_ground(trace.steps.back().expectation)) {
            trace.status = TrainStatus::reached_ground;
            return trace;
        }
    }
    trace.status = TrainStatus::completed;
    return trace;
}

nlohmann::json trace_to_json(const TrainTrace &trace, bool include_timings) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto &s : trace.steps) {
        nlohmann::json row = {
            {"p", s.p},
            {"betas", s.angles.betas},
            {"gammas", s.angles.gammas},
            {"expectation", s.expectation},
            {"ar", s.ar},
            {"retries", s.retries},
        };
        if (include_timings) {
            row["wall_seconds"] = s.wall_seconds;
        }
        steps.push_back(std::move(row));
    }
    nlohmann::json j = {
        {"version", 1},
        {"status", to_string(trace.status)},
        {"steps", std::move(steps)},
    };
    if (trace.status == TrainStatus::retries_exhausted) {
        j["failed_p"] = trace.failed_p;
        j["failed_best"] = trace.failed_best;
    }
    return j;
}

TrainTrace trace_from_json(const nlohmann::json &j) {
    try {
        if (j.at("version").get<int>() != 1) {
            throw FormatError("unsupported trace version");
        }
        TrainTrace trace;
        std::string status = j.at("status").get<std::string>();
        if (status == "completed") {
            trace.status = TrainStatus::completed;
        } else if (status == "reached_ground") {
            trace.status = TrainStatus::reached_ground;
        } else if (status == "retries_exhausted") {
            trace.status = TrainStatus::retries_exhausted;
            trace.failed_p = j.at("failed_p").get<int>();
            trace.failed_best = j.at("failed_best").get<double>();
        } else {
            throw FormatError("unknown trace status '" + status + "'");
        }
        for (const auto &row : j.at("steps")) {
            TrainStep s;
            s.p = row.at("p").get<int>();
            s.angles.betas = row.at("betas").get<std::vector<double>>();
            s.angles.gammas = row.at("gammas").get<std::vector<double>>();
            s.expectation = row.at("expectation").get<double>();
            s.ar = row.at("ar").get<double>();
            s.retries = row.at("retries").get<int>();
            s.wall_seconds = row.value("wall_seconds", 0.0);
            trace.steps.push_back(std::move(s));
        }
        return trace;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed trace: ") + ex.what());
    }
}

}  // namespace hexq
