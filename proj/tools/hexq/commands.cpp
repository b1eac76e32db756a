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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hexq/error.hpp"
#include "hexq/format.hpp"
#include "hexq/graph.hpp"
#include "hexq/import.hpp"
#include "hexq/mps.hpp"
#include "hexq/optimizer.hpp"
#include "hexq/parallel.hpp"
#include "hexq/statevec.hpp"
#include "manifest.hpp"
#include "pipeline.hpp"

namespace hexq::cli {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path manifest_for(const fs::path &output, const std::string &override_path) {
    if (!override_path.empty()) {
        return override_path;
    }
    return fs::path(output.string() + ".manifest.json");
}

void say(const Context &ctx, const std::string &text) {
    if (!ctx.quiet) {
        std::cerr << text << "\n";
    }
}

std::vector<AngleSchedule> load_series(const std::vector<std::string> &paths, const std::string &source, Manifest &m) {
    AngleEnsemble merged;
    for (const auto &p : paths) {
        fs::path resolved = resolve_input(p);
        m.add_input(resolved);
        AngleEnsemble loaded = load_ensemble(resolved);
        for (const auto &[key, s] : loaded.entries()) {
            merged.add(s);
        }
    }
    auto sources = merged.sources();
    if (sources.empty()) {
        throw MissingInput("angle ensemble is empty");
    }
    std::string chosen = source.empty() ? sources.front() : source;
    if (source.empty() && sources.size() > 1) {
        throw InvalidArgument("ensemble holds several sources; pick one with --source");
    }
    return merged.series(chosen);
}

IsingInstance load_instance_input(const std::string &path, Manifest &m) {
    fs::path resolved = resolve_input(path);
    m.add_input(resolved);
    return load_instance(resolved);
}

Extrema load_extrema_input(const std::string &path, Manifest &m) {
    fs::path resolved = resolve_input(path);
    m.add_input(resolved);
    return extrema_from_json(read_json_file(resolved));
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception &) {
            throw InvalidArgument("expected a comma separated integer list, got '" + text + "'");
        }
    }
    return out;
}

}  // namespace

nlohmann::json solve_options_to_json(const SolveOptions &o) {
    return {
        {"method", o.method},
        {"brute_force_max_nodes", o.max_nodes},
        {"anneal",
         {{"restarts", o.anneal.restarts},
          {"sweeps_per_restart", o.anneal.sweeps_per_restart},
          {"t_hot", o.anneal.t_hot},
          {"t_cold", o.anneal.t_cold},
          {"seed", o.anneal.seed}}},
    };
}

SolveOptions solve_options_from_json(const nlohmann::json &j) {
    SolveOptions o;
    try {
        o.method = j.value("method", o.method);
        o.max_nodes = j.value("brute_force_max_nodes", o.max_nodes);
        if (j.contains("anneal")) {
            const auto &a = j.at("anneal");
            o.anneal.restarts = a.value("restarts", o.anneal.restarts);
            o.anneal.sweeps_per_restart = a.value("sweeps_per_restart", o.anneal.sweeps_per_restart);
            o.anneal.t_hot = a.value("t_hot", o.anneal.t_hot);
            o.anneal.t_cold = a.value("t_cold", o.anneal.t_cold);
            o.anneal.seed = a.value("seed", o.anneal.seed);
        }
    } catch (const nlohmann::json::exception &ex) {
        throw InvalidArgument(std::string("bad solver config: ") + ex.what());
    }
    if (o.method != "auto" && o.method != "brute_force" && o.method != "anneal") {
        throw InvalidArgument("solver method must be auto, brute_force or anneal");
    }
    return o;
}

Extrema solve(const IsingInstance &instance, const SolveOptions &options, int jobs) {
    bool brute = options.method == "brute_force" ||
                 (options.method == "auto" && instance.node_count() <= options.max_nodes);
    if (brute) {
        return brute_force_extrema(instance, {options.max_nodes, jobs});
    }
    AnnealParams params = options.anneal;
    params.jobs = jobs;
    return anneal_extrema(instance, params);
}

ScheduleSource source_of(const IsingInstance &instance) {
    return {instance.id, instance.node_count(), instance.mode};
}

std::vector<MpsValidationRow> mps_validate(
    const std::vector<AngleSchedule> &series,
    const IsingInstance &target,
    std::vector<int> chis,
    double cutoff,
    int jobs,
    std::vector<std::string> *ledgers) {
    if (chis.empty()) {
        throw InvalidArgument("mps validation needs at least one chi");
    }
    for (int chi : chis) {
        if (chi < 1) throw InvalidArgument("chi must be >= 1");
    }
    std::sort(chis.begin(), chis.end());
    chis.erase(std::unique(chis.begin(), chis.end()), chis.end());
    const bool exact_ref = target.node_count() <= kDefaultQubitCap;
    std::optional<CostVector> cost;
    if (exact_ref) {
        cost = cost_vector(target);
    }
    const size_t cells = series.size() * chis.size();
    std::vector<MpsValidationRow> rows(cells);
    std::vector<std::string> ledger_text(cells);
    parallel_for(cells, jobs, [&](size_t c) {
        const auto &s = series[c / chis.size()];
        int chi = chis[c % chis.size()];
        MpsResult r = evolve_mps(target, s.angles, {chi, cutoff, std::nullopt});
        auto &row = rows[c];
        row.source = s.source.instance_id;
        row.target = target.id;
        row.p = s.p();
        row.chi = chi;
        row.e_mps = mps_expectation(r.state, target, r.order);
        row.discarded_weight = r.ledger.total_discarded_weight();
        row.max_bond = r.state.max_bond_dimension();
        ledger_text[c] = r.ledger.to_csv();
    });
    for (size_t c = 0; c < cells; c++) {
        size_t p_index = c / chis.size();
        double ref = exact_ref ? expectation(qaoa_state(*cost, series[p_index].angles), *cost)
                               : rows[p_index * chis.size() + chis.size() - 1].e_mps;
        rows[c].e_ref = ref;
        rows[c].delta_e = ref != 0 ? delta_e(ref, rows[c].e_mps) : std::abs(rows[c].e_mps);
    }
    if (ledgers) {
        *ledgers = std::move(ledger_text);
    }
    return rows;
}

std::string mps_validation_csv(const std::vector<MpsValidationRow> &rows) {
    std::ostringstream out;
    out << "source,target,p,chi,e_ref,e_mps,delta_e,discarded_weight,max_bond\n";
    for (const auto &r : rows) {
        out << r.source << ',' << r.target << ',' << r.p << ',' << r.chi << ',' << format_real(r.e_ref) << ','
            << format_real(r.e_mps) << ',' << format_real(r.delta_e) << ',' << format_real(r.discarded_weight) << ','
            << r.max_bond << '\n';
    }
    return out.str();
}

std::string ar_table_csv(const std::vector<TransferReport> &reports) {
    std::vector<const TransferReport *> sorted;
    for (const auto &r : reports) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) {
        return std::tie(a->target_id, a->source_id) < std::tie(b->target_id, b->source_id);
    });
    std::ostringstream out;
    out << "target,source,backend,p,ar,dip\n";
    for (const auto *r : sorted) {
        for (const auto &row : r->rows) {
            out << r->target_id << ',' << r->source_id << ',' << r->backend.name() << ',' << row.p << ','
                << format_real(row.ar) << ',' << (row.dip ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::string volume_table_csv(const std::vector<TransferReport> &reports) {
    std::ostringstream out;
    out << "source,target,backend,n,p_max,ar_1,ar_final,qaoa_volume\n";
    for (const auto &r : reports) {
        if (r.rows.empty()) continue;
        out << r.source_id << ',' << r.target_id << ',' << r.backend.name() << ',' << r.n << ',' << r.rows.size() << ','
            << format_real(r.rows.front().ar) << ',' << format_real(r.rows.back().ar) << ',' << qaoa_volume(r) << '\n';
    }
    return out.str();
}

Circuit make_circuit(const IsingInstance &instance, const QaoaAngles &angles, uint64_t coloring_seed, const std::string &basis) {
    if (basis != "cx" && basis != "cz") {
        throw InvalidArgument("basis must be cx or cz");
    }
    Circuit c = build_circuit(instance, angles, edge_coloring(instance.graph, coloring_seed));
    return basis == "cz" ? lower_to_cz(c) : c;
}

namespace {

void add_generate(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string layout = "guadalupe16", layout_file, mode = "random_pm1", id, output, manifest;
        uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("generate", "Generate a random heavy-hex Ising instance");
    cmd->add_option("--layout", o->layout, "Device layout or parametric:RxC")->capture_default_str();
    cmd->add_option("--layout-file", o->layout_file, "Coupling-map JSON file (overrides --layout)");
    cmd->add_option("--mode", o->mode, "random_pm1, all_positive or all_negative")->capture_default_str();
    cmd->add_option("--seed", o->seed, "Coefficient seed")->capture_default_str();
    cmd->add_option("--id", o->id, "Instance id (default: layout-mode-sSEED)");
    cmd->add_option("-o,--output", o->output, "Instance JSON path")->required();
    cmd->add_option("--manifest", o->manifest, "Manifest path (default: OUTPUT.manifest.json)");
    cmd->callback([o, &ctx] {
        nlohmann::json cfg = {{"layout", o->layout}, {"layout_file", o->layout_file}, {"mode", o->mode},
                              {"seed", o->seed}, {"id", o->id}};
        Manifest m("generate", ctx.argv, cfg);
        HeavyHexGraph g = [&] {
            if (o->layout_file.empty()) return build_heavy_hex(o->layout);
            fs::path p = resolve_input(o->layout_file);
            m.add_input(p);
            return layout_from_json(read_json_file(p));
        }();
        IsingInstance inst = generate_instance(g, parse_coefficient_mode(o->mode), o->seed);
        if (!o->id.empty()) inst.id = o->id;
        save_instance(inst, o->output);
        m.add_output(o->output);
        m.write(manifest_for(o->output, o->manifest));
        say(ctx, "wrote " + o->output + " (" + inst.id + ", n=" + std::to_string(inst.node_count()) + ")");
    });
}

void add_solve(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string instance, output, manifest;
        SolveOptions solve;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("solve", "Compute c_min and c_max of an instance");
    cmd->add_option("-i,--instance", o->instance, "Instance JSON")->required();
    cmd->add_option("--method", o->solve.method, "auto, brute_force or anneal")->capture_default_str();
    cmd->add_option("--max-nodes", o->solve.max_nodes, "Brute-force size cap")->capture_default_str();
    cmd->add_option("--restarts", o->solve.anneal.restarts, "Annealing restarts")->capture_default_str();
    cmd->add_option("--sweeps", o->solve.anneal.sweeps_per_restart, "Sweeps per restart (0: 1000 n)")
        ->capture_default_str();
    cmd->add_option("--sa-seed", o->solve.anneal.seed, "Annealing seed")->capture_default_str();
    cmd->add_option("-o,--output", o->output, "Extrema JSON path")->required();
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        SolveOptions opts = solve_options_from_json(solve_options_to_json(o->solve));
        Manifest m("solve", ctx.argv, solve_options_to_json(opts));
        IsingInstance inst = load_instance_input(o->instance, m);
        auto t0 = std::chrono::steady_clock::now();
        Extrema e = solve(inst, opts, ctx.jobs);
        m.add_timing("solve", seconds_since(t0));
        write_json_file(extrema_to_json(e), o->output);
        m.add_output(o->output);
        m.write(manifest_for(o->output, o->manifest));
        say(ctx, "c_min=" + std::to_string(e.c_min) + " c_max=" + std::to_string(e.c_max) + " (" + to_string(e.method) + ")");
    });
}

void add_train(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string instance, extrema, config, output, ensemble, manifest;
        std::optional<int> max_p, retries, hops;
        std::optional<uint64_t> seed;
        std::optional<std::string> direction;
        bool timings = false;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("train", "Train angle schedules for p = 1..max_p");
    cmd->add_option("-i,--instance", o->instance, "Instance JSON")->required();
    cmd->add_option("-e,--extrema", o->extrema, "Extrema JSON")->required();
    cmd->add_option("-c,--config", o->config, "Training config JSON");
    cmd->add_option("--max-p", o->max_p, "Deepest p");
    cmd->add_option("--seed", o->seed, "Training seed");
    cmd->add_option("--retries", o->retries, "Fresh random restarts per p");
    cmd->add_option("--hops", o->hops, "Basin-hopping rounds per p");
    cmd->add_option("--direction", o->direction, "lbfgs or steepest");
    cmd->add_flag("--timings", o->timings, "Include wall times in the trace");
    cmd->add_option("-o,--output", o->output, "Trace JSON path")->required();
    cmd->add_option("--ensemble", o->ensemble, "Also write the accepted schedules as an ensemble");
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        nlohmann::json raw = nlohmann::json::object();
        if (!o->config.empty()) raw = read_json_file(resolve_input(o->config));
        if (o->max_p) raw["max_p"] = *o->max_p;
        if (o->seed) raw["seed"] = *o->seed;
        if (o->retries) raw["max_retries_per_p"] = *o->retries;
        if (o->hops) raw["basin_hops_per_p"] = *o->hops;
        if (o->direction) raw["direction"] = *o->direction;
        TrainConfig cfg = train_config_from_json(raw);
        cfg.jobs = ctx.jobs;
        Manifest m("train", ctx.argv, train_config_to_json(cfg));
        if (!o->config.empty()) m.add_input(resolve_input(o->config));
        IsingInstance inst = load_instance_input(o->instance, m);
        Extrema ex = load_extrema_input(o->extrema, m);
        auto t0 = std::chrono::steady_clock::now();
        TrainTrace trace = train_incremental(cost_vector(inst), ex, cfg);
        m.add_timing("train", seconds_since(t0));
        for (const auto &s : trace.steps) m.add_timing("p" + std::to_string(s.p), s.wall_seconds);
        write_json_file(trace_to_json(trace, o->timings), o->output);
        m.add_output(o->output);
        if (!o->ensemble.empty()) {
            AngleEnsemble ens;
            ens.add_trace(source_of(inst), trace);
            save_ensemble(ens, o->ensemble);
            m.add_output(o->ensemble);
        }
        m.write(manifest_for(o->output, o->manifest));
        say(ctx, "trained to p=" + std::to_string(trace.steps.size()) + " (" + to_string(trace.status) + ")");
    });
}

void add_transfer(CLI::App &app, Context &ctx) {
    struct Opts {
        std::vector<std::string> ensembles;
        std::string source, target, extrema, backend = "statevec", output_dir, manifest;
        int shots = 1000;
        uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("transfer", "Evaluate fixed schedules on a target instance");
    cmd->add_option("-a,--ensemble", o->ensembles, "Ensemble JSON (repeatable)")->required();
    cmd->add_option("--source", o->source, "Source id inside the ensemble");
    cmd->add_option("-t,--target", o->target, "Target instance JSON")->required();
    cmd->add_option("-e,--extrema", o->extrema, "Target extrema JSON")->required();
    cmd->add_option("--backend", o->backend, "statevec or mps:<chi>")->capture_default_str();
    cmd->add_option("--shots", o->shots, "Samples per p for the ground-state rate (0: skip)")->capture_default_str();
    cmd->add_option("--sample-seed", o->seed, "Sampling seed")->capture_default_str();
    cmd->add_option("-o,--output-dir", o->output_dir, "Directory for report JSON and CSV")->required();
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        TransferOptions opts{Backend::parse(o->backend), o->shots, o->seed, ctx.jobs};
        if (opts.shots < 0) throw InvalidArgument("shots must be >= 0");
        nlohmann::json cfg = {{"source", o->source}, {"backend", opts.backend.name()}, {"shots", o->shots},
                              {"sample_seed", o->seed}};
        Manifest m("transfer", ctx.argv, cfg);
        auto series = load_series(o->ensembles, o->source, m);
        IsingInstance target = load_instance_input(o->target, m);
        Extrema ex = load_extrema_input(o->extrema, m);
        if (opts.shots > 0 && !ex.exact()) {
            say(ctx, "extrema are heuristic; skipping ground-state sampling");
            opts.shots = 0;
        }
        auto t0 = std::chrono::steady_clock::now();
        TransferReport rep = evaluate_transfer(series, target, ex, opts);
        m.add_timing("transfer", seconds_since(t0));
        std::string stem = safe_name(rep.source_id) + "__" + safe_name(rep.target_id) + "__" + safe_name(rep.backend.name());
        fs::path json_path = fs::path(o->output_dir) / (stem + ".json");
        fs::path csv_path = fs::path(o->output_dir) / (stem + ".csv");
        write_json_file(report_to_json(rep), json_path);
        write_text_file(csv_path, report_to_csv(rep));
        m.add_output(json_path);
        m.add_output(csv_path);
        m.write(o->manifest.empty() ? fs::path(o->output_dir) / (stem + ".manifest.json") : fs::path(o->manifest));
        say(ctx, "qaoa_volume=" + std::to_string(rep.qaoa_volume) + ", wrote " + json_path.string());
    });
}

void add_mps_validate(CLI::App &app, Context &ctx) {
    struct Opts {
        std::vector<std::string> ensembles;
        std::string source, instance, chis = "16,32,64", output_dir, manifest;
        double cutoff = 1e-12;
        int max_p = 0;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("mps-validate", "Compare MPS energies against a reference over a chi sweep");
    cmd->add_option("-a,--ensemble", o->ensembles, "Ensemble JSON (repeatable)")->required();
    cmd->add_option("--source", o->source, "Source id inside the ensemble");
    cmd->add_option("-i,--instance", o->instance, "Target instance JSON")->required();
    cmd->add_option("--chi", o->chis, "Comma separated bond dimensions")->capture_default_str();
    cmd->add_option("--cutoff", o->cutoff, "Relative singular value cutoff")->capture_default_str();
    cmd->add_option("--max-p", o->max_p, "Only schedules up to this p (0: all)")->capture_default_str();
    cmd->add_option("-o,--output-dir", o->output_dir, "Output directory")->required();
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        auto chis = parse_int_list(o->chis);
        nlohmann::json cfg = {{"source", o->source}, {"chi", chis}, {"cutoff", o->cutoff}, {"max_p", o->max_p}};
        Manifest m("mps-validate", ctx.argv, cfg);
        auto series = load_series(o->ensembles, o->source, m);
        if (o->max_p > 0 && static_cast<int>(series.size()) > o->max_p) series.resize(o->max_p);
        IsingInstance target = load_instance_input(o->instance, m);
        auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> ledgers;
        auto rows = mps_validate(series, target, chis, o->cutoff, ctx.jobs, &ledgers);
        m.add_timing("mps", seconds_since(t0));
        fs::path dir = o->output_dir;
        fs::path table = dir / "mps_validation.csv";
        write_text_file(table, mps_validation_csv(rows));
        m.add_output(table);
        for (size_t c = 0; c < rows.size(); c++) {
            fs::path ledger = dir / "ledgers" /
                              ("p" + std::to_string(rows[c].p) + "_chi" + std::to_string(rows[c].chi) + ".csv");
            write_text_file(ledger, ledgers[c]);
            m.add_output(ledger);
        }
        m.write(o->manifest.empty() ? dir / "mps_validation.manifest.json" : fs::path(o->manifest));
        say(ctx, "wrote " + table.string());
    });
}

void add_emit_circuit(CLI::App &app, Context &ctx) {
    struct Opts {
        std::vector<std::string> ensembles;
        std::string source, instance, basis = "cx", output, counts, manifest;
        int p = 1;
        uint64_t coloring_seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("emit-circuit", "Write the QAOA circuit of one schedule as OpenQASM 2.0");
    cmd->add_option("-a,--ensemble", o->ensembles, "Ensemble JSON (repeatable)")->required();
    cmd->add_option("--source", o->source, "Source id inside the ensemble");
    cmd->add_option("-i,--instance", o->instance, "Instance JSON")->required();
    cmd->add_option("-p,--p", o->p, "Depth (0: preparation and measurement only)")->capture_default_str();
    cmd->add_option("--basis", o->basis, "Entangler basis: cx or cz")->capture_default_str();
    cmd->add_option("--coloring-seed", o->coloring_seed, "Edge coloring seed")->capture_default_str();
    cmd->add_option("-o,--output", o->output, "QASM path")->required();
    cmd->add_option("--counts", o->counts, "Gate count JSON path");
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        nlohmann::json cfg = {{"source", o->source}, {"p", o->p}, {"basis", o->basis}, {"coloring_seed", o->coloring_seed}};
        Manifest m("emit-circuit", ctx.argv, cfg);
        if (o->p < 0) throw InvalidArgument("p must be >= 0");
        IsingInstance inst = load_instance_input(o->instance, m);
        QaoaAngles angles;
        auto series = load_series(o->ensembles, o->source, m);
        if (o->p > 0) {
            if (o->p > static_cast<int>(series.size())) {
                throw MissingInput("ensemble has no schedule at p=" + std::to_string(o->p));
            }
            angles = series[o->p - 1].angles;
        }
        Circuit c = make_circuit(inst, angles, o->coloring_seed, o->basis);
        write_text_file(o->output, emit_qasm(c));
        m.add_output(o->output);
        if (!o->counts.empty()) {
            nlohmann::json j = gate_counts_to_json(gate_counts(c));
            j["two_qubit_depth_per_layer"] = two_qubit_depths(c);
            write_json_file(j, o->counts);
            m.add_output(o->counts);
        }
        m.write(manifest_for(o->output, o->manifest));
        say(ctx, "two-qubit gates: " + std::to_string(gate_counts(c).two_qubit));
    });
}

void add_report(CLI::App &app, Context &ctx) {
    struct Opts {
        std::vector<std::string> reports, ensembles;
        std::string output_dir, manifest;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("report", "Aggregate transfer reports into AR-vs-p and QAOA-volume tables");
    cmd->add_option("-r,--reports", o->reports, "Transfer report JSON files or directories")->required();
    cmd->add_option("-a,--ensemble", o->ensembles, "Ensembles to summarize (canonicalized)");
    cmd->add_option("-o,--output-dir", o->output_dir, "Output directory")->required();
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        Manifest m("report", ctx.argv, nlohmann::json::object());
        std::vector<fs::path> files;
        for (const auto &r : o->reports) {
            fs::path p = resolve_input(r);
            if (fs::is_directory(p)) {
                for (const auto &entry : fs::directory_iterator(p)) {
                    auto name = entry.path().filename().string();
                    if (entry.path().extension() == ".json" && name.find(".manifest.") == std::string::npos) {
                        files.push_back(entry.path());
                    }
                }
            } else {
                files.push_back(p);
            }
        }
        std::sort(files.begin(), files.end());
        std::vector<TransferReport> reports;
        for (const auto &f : files) {
            m.add_input(f);
            reports.push_back(report_from_json(read_json_file(f)));
        }
        std::optional<AngleEnsemble> ensemble;
        if (!o->ensembles.empty()) {
            ensemble.emplace();
            for (const auto &path : o->ensembles) {
                fs::path resolved = resolve_input(path);
                m.add_input(resolved);
                AngleEnsemble loaded = load_ensemble(resolved);
                for (const auto &[key, s] : loaded.entries()) ensemble->add(s);
            }
        }
        write_report_tables(reports, ensemble, o->output_dir, m);
        m.write(o->manifest.empty() ? fs::path(o->output_dir) / "report.manifest.json" : fs::path(o->manifest));
        say(ctx, "aggregated " + std::to_string(reports.size()) + " reports");
    });
}

void add_layout(CLI::App &app, Context &ctx) {
    auto *cmd = app.add_subcommand("layout", "List or export coupling maps");
    cmd->require_subcommand(1);
    auto *list = cmd->add_subcommand("list", "Print the built-in device layouts");
    list->callback([] {
        for (const auto &name : device_layout_names()) {
            auto g = build_heavy_hex(name);
            std::cout << name << " nodes=" << g.node_count() << " edges=" << g.edges().size()
                      << " cubic=" << g.cubic().size() << "\n";
        }
    });
    struct Opts {
        std::string layout, output;
    };
    auto o = std::make_shared<Opts>();
    auto *exp = cmd->add_subcommand("export", "Write a coupling map as JSON");
    exp->add_option("--layout", o->layout, "Layout name")->required();
    exp->add_option("-o,--output", o->output, "Output path")->required();
    exp->callback([o, &ctx] {
        write_json_file(layout_to_json(build_heavy_hex(o->layout)), o->output);
        say(ctx, "wrote " + o->output);
    });
}

void add_import(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string input, id, output, extrema, manifest;
        std::optional<int64_t> c_min, c_max;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("import", "Convert an external instance file to the native format");
    cmd->add_option("--input", o->input, "Term list or native instance file")->required();
    cmd->add_option("--id", o->id, "Instance id (default: file stem)");
    cmd->add_option("--c-min", o->c_min, "Known minimum energy");
    cmd->add_option("--c-max", o->c_max, "Known maximum energy");
    cmd->add_option("-o,--output", o->output, "Instance JSON path")->required();
    cmd->add_option("--extrema-out", o->extrema, "Write the given extrema (method=imported)");
    cmd->add_option("--manifest", o->manifest, "Manifest path");
    cmd->callback([o, &ctx] {
        Manifest m("import", ctx.argv, {{"id", o->id}});
        fs::path in = resolve_input(o->input);
        m.add_input(in);
        IsingInstance inst = import_instance_file(in);
        if (!o->id.empty()) inst.id = o->id;
        save_instance(inst, o->output);
        m.add_output(o->output);
        if (!o->extrema.empty()) {
            if (!o->c_min || !o->c_max) throw InvalidArgument("--extrema-out needs --c-min and --c-max");
            Extrema e{*o->c_min, *o->c_max, 0, ExtremaMethod::imported};
            write_json_file(extrema_to_json(e), o->extrema);
            m.add_output(o->extrema);
        }
        m.write(manifest_for(o->output, o->manifest));
        say(ctx, "imported " + inst.id + " (n=" + std::to_string(inst.node_count()) + ")");
    });
}

void add_defaults(CLI::App &app) {
    auto *cmd = app.add_subcommand("defaults", "Print the default experiment config");
    cmd->callback([] { std::cout << experiment_config_to_json(ExperimentConfig{}).dump(2) << "\n"; });
}

void add_run(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string config, output_dir;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("run", "Run generate, solve, train, transfer, report and emit from one config");
    cmd->add_option("-c,--config", o->config, "Experiment config JSON")->required();
    cmd->add_option("-o,--output-dir", o->output_dir, "Override output_dir from the config");
    cmd->callback([o, &ctx] {
        fs::path path = resolve_input(o->config);
        ExperimentConfig cfg = experiment_config_from_json(read_json_file(path));
        if (!o->output_dir.empty()) cfg.output_dir = o->output_dir;
        run_experiment(cfg, ctx, path);
    });
}

void add_replay(CLI::App &app, Context &ctx) {
    struct Opts {
        std::string manifest;
        bool here = false;
    };
    auto o = std::make_shared<Opts>();
    auto *cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    cmd->add_option("manifest", o->manifest, "Manifest JSON")->required();
    cmd->add_flag("--here", o->here, "Run in the current directory instead of the recorded one");
    cmd->callback([o, &ctx] {
        nlohmann::json j = read_json_file(resolve_input(o->manifest));
        if (j.value("format", "") != "hexq-manifest") throw FormatError("not a hexq manifest");
        auto argv = j.at("argv").get<std::vector<std::string>>();
        if (!argv.empty() && argv.front() == "replay") throw InvalidArgument("refusing to replay a replay");
        std::optional<fs::path> previous;
        if (!o->here) {
            previous = fs::current_path();
            fs::current_path(j.at("cwd").get<std::string>());
        }
        CLI::App inner{"hexq"};
        Context inner_ctx;
        inner_ctx.quiet = ctx.quiet;
        inner_ctx.argv = argv;
        inner.add_option("--jobs", inner_ctx.jobs);
        inner.add_flag("--quiet", inner_ctx.quiet);
        register_commands(inner, inner_ctx);
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        try {
            inner.parse(reversed);
        } catch (...) {
            if (previous) fs::current_path(*previous);
            throw;
        }
        if (previous) fs::current_path(*previous);
    });
}

}  // namespace

void register_commands(CLI::App &app, Context &ctx) {
    add_defaults(app);
    add_generate(app, ctx);
    add_solve(app, ctx);
    add_train(app, ctx);
    add_transfer(app, ctx);
    add_mps_validate(app, ctx);
    add_emit_circuit(app, ctx);
    add_report(app, ctx);
    add_layout(app, ctx);
    add_import(app, ctx);
    add_run(app, ctx);
    add_replay(app, ctx);
    app.require_subcommand(1);
}

}  // namespace hexq::cli
