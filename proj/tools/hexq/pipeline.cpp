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

#include "pipeline.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/graph.hpp"
#include "hexq/instance.hpp"
#include "hexq/statevec.hpp"

namespace hexq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) {
        throw InvalidArgument(where + " must be an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw InvalidArgument("unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read_into(const json &j, const char *key, T &out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Solved {
    IsingInstance instance;
    Extrema extrema;
};

}  // namespace

json experiment_config_to_json(const ExperimentConfig &c) {
    json targets = json::array();
    for (const auto &t : c.targets) {
        targets.push_back({{"layout", t.layout}, {"mode", t.mode}, {"seed", t.seed}});
    }
    json train = train_config_to_json(c.train);
    train.erase("jobs");
    return {
        {"version", c.version},
        {"output_dir", c.output_dir},
        {"layout", c.layout},
        {"mode", c.mode},
        {"sources", c.sources},
        {"targets", targets},
        {"train", train},
        {"backends", c.backends},
        {"shots", c.shots},
        {"sample_seed", c.sample_seed},
        {"solver", solve_options_to_json(c.solver)},
        {"mps_validate",
         {{"enabled", c.mps_validate.enabled},
          {"chi", c.mps_validate.chi},
          {"cutoff", c.mps_validate.cutoff},
          {"max_p", c.mps_validate.max_p}}},
        {"emit_circuit",
         {{"enabled", c.emit.enabled},
          {"p", c.emit.p},
          {"basis", c.emit.basis},
          {"coloring_seed", c.emit.coloring_seed}}},
    };
}

ExperimentConfig experiment_config_from_json(const json &j) {
    ExperimentConfig c;
    check_keys(j,
               {"version", "output_dir", "layout", "mode", "seed", "sources", "targets", "train", "backends", "shots",
                "sample_seed", "solver", "mps_validate", "emit_circuit"},
               "config");
    try {
        read_into(j, "version", c.version);
        read_into(j, "output_dir", c.output_dir);
        read_into(j, "layout", c.layout);
        read_into(j, "mode", c.mode);
        if (j.contains("seed") && !j.contains("sources")) {
            c.sources = {j.at("seed").get<uint64_t>()};
        }
        read_into(j, "sources", c.sources);
        if (j.contains("targets")) {
            c.targets.clear();
            for (const auto &t : j.at("targets")) {
                check_keys(t, {"layout", "mode", "seed"}, "targets entry");
                c.targets.push_back({t.value("layout", c.layout), t.value("mode", c.mode), t.at("seed").get<uint64_t>()});
            }
        }
        if (j.contains("train")) {
            c.train = train_config_from_json(j.at("train"));
        }
        read_into(j, "backends", c.backends);
        read_into(j, "shots", c.shots);
        read_into(j, "sample_seed", c.sample_seed);
        if (j.contains("solver")) {
            check_keys(j.at("solver"), {"method", "brute_force_max_nodes", "anneal"}, "solver");
            c.solver = solve_options_from_json(j.at("solver"));
        }
        if (j.contains("mps_validate")) {
            const auto &v = j.at("mps_validate");
            check_keys(v, {"enabled", "chi", "cutoff", "max_p"}, "mps_validate");
            read_into(v, "enabled", c.mps_validate.enabled);
            read_into(v, "chi", c.mps_validate.chi);
            read_into(v, "cutoff", c.mps_validate.cutoff);
            read_into(v, "max_p", c.mps_validate.max_p);
        }
        if (j.contains("emit_circuit")) {
            const auto &e = j.at("emit_circuit");
            check_keys(e, {"enabled", "p", "basis", "coloring_seed"}, "emit_circuit");
            read_into(e, "enabled", c.emit.enabled);
            read_into(e, "p", c.emit.p);
            read_into(e, "basis", c.emit.basis);
            read_into(e, "coloring_seed", c.emit.coloring_seed);
        }
    } catch (const json::exception &ex) {
        throw InvalidArgument(std::string("bad config: ") + ex.what());
    }
    if (c.version != 1) throw InvalidArgument("unsupported config version " + std::to_string(c.version));
    if (c.output_dir.empty()) throw InvalidArgument("output_dir must not be empty");
    if (c.sources.empty()) throw InvalidArgument("at least one source seed is required");
    if (c.shots < 0) throw InvalidArgument("shots must be >= 0");
    if (c.backends.empty()) throw InvalidArgument("at least one backend is required");
    for (const auto &b : c.backends) Backend::parse(b);
    LayoutSpec::parse(c.layout);
    parse_coefficient_mode(c.mode);
    for (const auto &t : c.targets) {
        LayoutSpec::parse(t.layout);
        parse_coefficient_mode(t.mode);
    }
    if (c.emit.basis != "cx" && c.emit.basis != "cz") throw InvalidArgument("emit_circuit.basis must be cx or cz");
    if (c.emit.p < 0) throw InvalidArgument("emit_circuit.p must be >= 0");
    for (int chi : c.mps_validate.chi) {
        if (chi < 1) throw InvalidArgument("mps_validate.chi entries must be >= 1");
    }
    return c;
}

void write_report_tables(
    const std::vector<TransferReport> &reports,
    const std::optional<AngleEnsemble> &ensemble,
    const fs::path &dir,
    Manifest &manifest) {
    fs::path ar = dir / "ar_vs_p.csv";
    fs::path volume = dir / "qaoa_volume.csv";
    write_text_file(ar, ar_table_csv(reports));
    write_text_file(volume, volume_table_csv(reports));
    manifest.add_output(ar);
    manifest.add_output(volume);
    if (ensemble) {
        fs::path schedules = dir / "schedules.csv";
        AngleEnsemble canonical;
        for (const auto &[key, s] : ensemble->entries()) canonical.add(canonicalize(s));
        write_text_file(schedules, summary_to_csv(schedule_summary(canonical)));
        manifest.add_output(schedules);
    }
}

void run_experiment(const ExperimentConfig &cfg, const Context &ctx, const fs::path &config_path) {
    auto say = [&](const std::string &text) {
        if (!ctx.quiet) std::cerr << text << "\n";
    };
    const fs::path out = cfg.output_dir;
    Manifest m("run", ctx.argv, experiment_config_to_json(cfg));
    m.add_input(config_path);

    std::map<std::string, Solved> solved;
    auto obtain = [&](const std::string &layout, const std::string &mode, uint64_t seed) -> const Solved & {
        CoefficientMode cm = parse_coefficient_mode(mode);
        std::string id = default_instance_id(LayoutSpec::parse(layout).name(), cm, seed);
        auto it = solved.find(id);
        if (it != solved.end()) return it->second;
        IsingInstance inst = generate_instance(build_heavy_hex(layout), cm, seed);
        inst.id = id;
        auto t0 = std::chrono::steady_clock::now();
        Extrema ex = solve(inst, cfg.solver, ctx.jobs);
        m.add_timing("solve/" + id, seconds_since(t0));
        fs::path ipath = out / "instances" / (safe_name(id) + ".json");
        fs::path epath = out / "extrema" / (safe_name(id) + ".json");
        save_instance(inst, ipath);
        write_json_file(extrema_to_json(ex), epath);
        m.add_output(ipath);
        m.add_output(epath);
        say(id + ": c_min=" + std::to_string(ex.c_min) + " c_max=" + std::to_string(ex.c_max));
        return solved.emplace(id, Solved{std::move(inst), ex}).first->second;
    };

    TrainConfig tc = cfg.train;
    tc.jobs = ctx.jobs;
    AngleEnsemble ensemble;
    std::vector<std::string> source_ids;
    for (uint64_t seed : cfg.sources) {
        const Solved &s = obtain(cfg.layout, cfg.mode, seed);
        auto t0 = std::chrono::steady_clock::now();
        TrainTrace trace = train_incremental(cost_vector(s.instance), s.extrema, tc);
        m.add_timing("train/" + s.instance.id, seconds_since(t0));
        fs::path tpath = out / "traces" / (safe_name(s.instance.id) + ".json");
        write_json_file(trace_to_json(trace), tpath);
        m.add_output(tpath);
        ensemble.add_trace(source_of(s.instance), trace);
        source_ids.push_back(s.instance.id);
        say(s.instance.id + ": trained to p=" + std::to_string(trace.steps.size()) + " (" + to_string(trace.status) + ")");
    }
    fs::path angles = out / "angles.json";
    save_ensemble(ensemble, angles);
    m.add_output(angles);

    std::vector<const Solved *> targets;
    for (const auto &t : cfg.targets) {
        targets.push_back(&obtain(t.layout, t.mode, t.seed));
    }

    std::vector<TransferReport> reports;
    std::string combined = transfer_csv_header();
    for (const auto &source_id : source_ids) {
        if (!ensemble.max_p(source_id)) continue;
        auto series = ensemble.series(source_id);
        for (const Solved *target : targets) {
            for (const auto &backend_name : cfg.backends) {
                TransferOptions opts{Backend::parse(backend_name), target->extrema.exact() ? cfg.shots : 0,
                                     cfg.sample_seed, ctx.jobs};
                auto t0 = std::chrono::steady_clock::now();
                TransferReport rep = evaluate_transfer(series, target->instance, target->extrema, opts);
                std::string stem = safe_name(source_id) + "__" + safe_name(target->instance.id) + "__" +
                                   safe_name(rep.backend.name());
                m.add_timing("transfer/" + stem, seconds_since(t0));
                fs::path jpath = out / "transfer" / (stem + ".json");
                fs::path cpath = out / "transfer" / (stem + ".csv");
                write_json_file(report_to_json(rep), jpath);
                write_text_file(cpath, report_to_csv(rep));
                m.add_output(jpath);
                m.add_output(cpath);
                combined += report_to_csv(rep, false);
                say(stem + ": qaoa_volume=" + std::to_string(rep.qaoa_volume));
                reports.push_back(std::move(rep));
            }
        }
    }
    fs::path all = out / "transfer.csv";
    write_text_file(all, combined);
    m.add_output(all);
    write_report_tables(reports, ensemble, out / "report", m);

    if (cfg.mps_validate.enabled) {
        for (const auto &source_id : source_ids) {
            auto series = ensemble.series(source_id);
            if (cfg.mps_validate.max_p > 0 && static_cast<int>(series.size()) > cfg.mps_validate.max_p) {
                series.resize(cfg.mps_validate.max_p);
            }
            if (series.empty()) continue;
            for (const Solved *target : targets) {
                auto t0 = std::chrono::steady_clock::now();
                auto rows = mps_validate(series, target->instance, cfg.mps_validate.chi, cfg.mps_validate.cutoff, ctx.jobs);
                std::string stem = safe_name(source_id) + "__" + safe_name(target->instance.id);
                m.add_timing("mps/" + stem, seconds_since(t0));
                fs::path vpath = out / "mps_validation" / (stem + ".csv");
                write_text_file(vpath, mps_validation_csv(rows));
                m.add_output(vpath);
            }
        }
    }

    if (cfg.emit.enabled) {
        for (const auto &source_id : source_ids) {
            int trained = ensemble.max_p(source_id);
            int p = cfg.emit.p == 0 ? trained : cfg.emit.p;
            if (p > trained) {
                throw MissingInput("emit_circuit.p=" + std::to_string(p) + " exceeds trained depth of " + source_id);
            }
            QaoaAngles a = p > 0 ? ensemble.at(source_id, p).angles : QaoaAngles{};
            Circuit c = make_circuit(solved.at(source_id).instance, a, cfg.emit.coloring_seed, cfg.emit.basis);
            std::string stem = safe_name(source_id) + "_p" + std::to_string(p) + "_" + cfg.emit.basis;
            fs::path qpath = out / "circuits" / (stem + ".qasm");
            fs::path cpath = out / "circuits" / (stem + ".counts.json");
            write_text_file(qpath, emit_qasm(c));
            json counts = gate_counts_to_json(gate_counts(c));
            counts["two_qubit_depth_per_layer"] = two_qubit_depths(c);
            write_json_file(counts, cpath);
            m.add_output(qpath);
            m.add_output(cpath);
        }
    }
    m.write(out / "manifest.json");
    say("wrote " + (out / "manifest.json").string());
}

}  // namespace hexq::cli
