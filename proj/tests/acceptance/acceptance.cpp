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

// Acceptance run: one PASS/FAIL/SKIP line per criterion. Exits non-zero if
// any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hexq/angles.hpp"
#include "hexq/circuit.hpp"
#include "hexq/extrema.hpp"
#include "hexq/import.hpp"
#include "hexq/mps.hpp"
#include "hexq/optimizer.hpp"
#include "hexq/parallel.hpp"
#include "hexq/statevec.hpp"
#include "hexq/transfer.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace hexq;

namespace {

constexpr double kPi = std::numbers::pi;

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

int jobs() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double tv_distance(const std::vector<double> &a, const std::vector<double> &b) {
    double tv = 0;
    for (size_t i = 0; i < a.size(); i++) tv += std::abs(a[i] - b[i]);
    return tv / 2;
}

Outcome uniform_zero_mean() {
    double worst = 0;
    for (uint64_t k = 0; k < 20; k++) {
        auto inst = oracle::random_fragment_instance(8 + int(k % 9), 1000 + k);
        auto cost = cost_vector(inst);
        worst = std::max(worst, std::abs(expectation(qaoa_state(cost, {{0.0}, {0.0}}), cost)));
    }
    return {worst < 1e-10 ? Verdict::pass : Verdict::fail, "max |E| = " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome symmetry_suite() {
    Rng rng(2024);
    double worst_tv = 0, worst_flip = 0;
    for (int c = 0; c < 50; c++) {
        auto inst = oracle::random_fragment_instance(3 + c % 8, 2000 + c);
        auto cost = cost_vector(inst);
        int p = 1 + c % 5;
        auto a = oracle::random_angles(p, rng);
        auto base = qaoa_state(cost, a).probabilities();
        for (int j = 0; j < p; j++) {
            auto g = a;
            g.gammas[j] += kPi;
            auto b = a;
            b.betas[j] += kPi;
            worst_tv = std::max(worst_tv, tv_distance(base, qaoa_state(cost, g).probabilities()));
            worst_tv = std::max(worst_tv, tv_distance(base, qaoa_state(cost, b).probabilities()));
        }
        auto f = a;
        for (auto &x : f.betas) x = -x;
        for (auto &x : f.gammas) x = -x;
        worst_tv = std::max(worst_tv, tv_distance(base, qaoa_state(cost, f).probabilities()));
        worst_flip = std::max(worst_flip,
                              std::abs(expectation(qaoa_state(cost, f), cost) - expectation(qaoa_state(cost, a), cost)));
    }
    bool ok = worst_tv < 1e-10 && worst_flip < 1e-10;
    return {ok ? Verdict::pass : Verdict::fail,
            "max TV = " + fmt("%.2e", worst_tv) + ", max sign-flip |dE| = " + fmt("%.2e", worst_flip) + " (tol 1e-10)"};
}

Outcome gradient_check() {
    Rng rng(77);
    double worst = 0;
    const double h = 1e-5;
    for (int c = 0; c < 25; c++) {
        auto inst = oracle::random_fragment_instance(4 + c % 7, 3000 + c);
        auto cost = cost_vector(inst);
        auto a = oracle::random_angles(1 + c % 5, rng);
        auto g = gradient(cost, a).packed();
        auto x = a.packed();
        double num = 0, den = 0;
        for (size_t k = 0; k < x.size(); k++) {
            auto xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            double fd = (expectation(qaoa_state(cost, QaoaAngles::unpack(xp)), cost) -
                         expectation(qaoa_state(cost, QaoaAngles::unpack(xm)), cost)) /
                        (2 * h);
            num += (g[k] - fd) * (g[k] - fd);
            den += fd * fd;
        }
        worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-300));
    }
    return {worst < 1e-6 ? Verdict::pass : Verdict::fail, "max relative error = " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

struct Trained {
    IsingInstance instance;
    Extrema extrema;
    TrainTrace trace;
};

std::vector<Trained> &training_fixture() {
    static std::vector<Trained> fixture = [] {
        std::vector<Trained> out;
        for (uint64_t seed : {1, 2, 3}) {
            auto inst = generate_instance(build_heavy_hex("guadalupe16"), CoefficientMode::random_pm1, seed);
            auto ex = brute_force_extrema(inst, {30, jobs()});
            TrainConfig cfg;
            cfg.max_p = 10;
            cfg.seed = seed;
            // Three hops per depth instead of the library default of one: with a
            // single hop the 0.2 margin is missed narrowly on some instances.
            cfg.basin_hops_per_p = 3;
            cfg.jobs = jobs();
            out.push_back({inst, ex, train_incremental(cost_vector(inst), ex, cfg)});
        }
        return out;
    }();
    return fixture;
}

Outcome training_quality() {
    auto &fix = training_fixture();
    bool ok = true;
    std::ostringstream d;
    for (const auto &t : fix) {
        const auto &s = t.trace.steps;
        bool monotone = true;
        for (size_t k = 1; k < s.size(); k++) monotone = monotone && s[k].expectation < s[k - 1].expectation;
        bool full = s.size() == 10 || t.trace.status == TrainStatus::reached_ground;
        double ar1 = s.front().ar, arp = s.back().ar;
        bool margin = arp > ar1 + 0.2;
        ok = ok && monotone && full && margin;
        d << t.instance.id << ": p=" << s.size() << " AR(1)=" << fmt("%.3f", ar1) << " AR(" << s.size()
          << ")=" << fmt("%.3f", arp);
        if (s.size() >= 7) d << " AR(7)=" << fmt("%.3f", s[6].ar);
        d << (monotone ? "" : " NOT-MONOTONE") << (full ? "" : " INCOMPLETE") << (margin ? "" : " MARGIN<0.2")
          << "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, d.str()};
}

std::vector<AngleSchedule> series_of(const Trained &t) {
    AngleEnsemble e;
    e.add_trace({t.instance.id, t.instance.node_count(), t.instance.mode}, t.trace);
    return e.series(t.instance.id);
}

Outcome transfer_trend() {
    auto &fix = training_fixture();
    auto series = series_of(fix[0]);
    bool ok = true;
    std::ostringstream d;
    d << "source " << fix[0].instance.id << ": ";
    for (size_t k = 1; k < fix.size(); k++) {
        auto rep = evaluate_transfer(series, fix[k].instance, fix[k].extrema, {Backend::statevec(), 0, 0, jobs()});
        auto ar = rep.ar_series();
        int dips = 0;
        for (const auto &r : rep.rows) dips += r.dip;
        bool up = ar.back() > ar.front();
        ok = ok && up;
        d << "-> " << fix[k].instance.id << " AR(1)=" << fmt("%.3f", ar.front()) << " AR(" << ar.size()
          << ")=" << fmt("%.3f", ar.back()) << " dips=" << dips << "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, d.str()};
}

Outcome mps_equivalence() {
    auto &fix = training_fixture();
    struct Cell {
        const IsingInstance *target;
        QaoaAngles angles;
    };
    std::vector<Cell> cells;
    // Trained schedules of the first instance on the second, then longer
    // random schedules up to p = 20 on the third.
    for (const auto &s : series_of(fix[0])) cells.push_back({&fix[1].instance, s.angles});
    Rng rng(606);
    for (int p = 20; cells.size() < 20; p--) {
        QaoaAngles a;
        for (int j = 0; j < p; j++) {
            a.betas.push_back(rng.uniform(-0.6, 0.6));
            a.gammas.push_back(rng.uniform(-0.6, 0.6));
        }
        cells.push_back({&fix[2].instance, a});
    }
    std::vector<double> diff(cells.size()), de(cells.size());
    parallel_for(cells.size(), jobs(), [&](size_t c) {
        auto cost = cost_vector(*cells[c].target);
        double sv = expectation(qaoa_state(cost, cells[c].angles), cost);
        auto r = evolve_mps(*cells[c].target, cells[c].angles, {256, 1e-14, std::nullopt});
        double e = mps_expectation(r.state, *cells[c].target, r.order);
        diff[c] = std::abs(e - sv);
        de[c] = delta_e(sv, e);
    });
    double worst = *std::max_element(diff.begin(), diff.end());
    double worst_de = *std::max_element(de.begin(), de.end());
    bool ok = worst < 1e-9 && worst_de < 1e-9;
    return {ok ? Verdict::pass : Verdict::fail,
            std::to_string(cells.size()) + " cells: max |E_mps - E_sv| = " + fmt("%.2e", worst) +
                ", max dE = " + fmt("%.2e", worst_de) + " (tol 1e-9)"};
}

Outcome mpo_exactness() {
    auto inst = generate_instance(build_heavy_hex("heron156"), CoefficientMode::random_pm1, 5);
    auto factors = collect_terms(inst);
    auto order = choose_qubit_order(inst.graph, factors);
    Rng rng(7);
    double worst = 0;
    int max_bond = 0;
    int cubic_factors = 0;
    for (int trial = 0; trial < 100; trial++) {
        const DiagonalFactor *f;
        do {
            f = &factors[rng.below(factors.size())];
        } while (f->qubits.size() != 3);
        cubic_factors++;
        double gamma = rng.uniform(-kPi, kPi);
        auto mpo = three_qubit_mpo(*f, gamma, order);
        max_bond = std::max(max_bond, mpo.max_bond());
        auto values = f->values();
        // Every term assignment, under random values on the pass-through sites.
        std::vector<uint8_t> bits(mpo.sites.size());
        for (int fill = 0; fill < 8; fill++) {
            for (auto &b : bits) b = static_cast<uint8_t>(rng.below(2));
            for (size_t a = 0; a < 8; a++) {
                for (size_t t = 0; t < 3; t++) bits[order.site_of[f->qubits[t]] - mpo.first_site] = (a >> t) & 1;
                worst = std::max(worst, std::abs(mpo.entry(bits) - std::exp(oracle::cplx(0, -gamma * values[a]))));
            }
        }
    }
    bool ok = worst < 1e-12 && max_bond <= 2 && cubic_factors == 100;
    return {ok ? Verdict::pass : Verdict::fail,
            "100 gammas: max reconstruction error = " + fmt("%.2e", worst) + " (tol 1e-12), max bond " +
                std::to_string(max_bond)};
}

Outcome circuit_equivalence() {
    Rng rng(88);
    double worst = 1;
    for (int c = 0; c < 20; c++) {
        auto inst = oracle::random_fragment_instance(4 + c % 7, 4000 + c);
        auto a = oracle::random_angles(1 + c % 4, rng);
        auto circ = build_circuit(inst, a, edge_coloring(inst.graph, c));
        auto sv = qaoa_state(inst, a);
        worst = std::min(worst, oracle::fidelity(oracle::simulate_gates(circ), sv.amplitudes()));
        worst = std::min(worst, oracle::fidelity(oracle::simulate_gates(lower_to_cz(circ)), sv.amplitudes()));
    }
    auto heron = generate_instance(build_heavy_hex("heron156"), CoefficientMode::random_pm1, 1);
    QaoaAngles a{std::vector<double>(49, 0.2), std::vector<double>(49, 0.1)};
    auto circ = lower_to_cz(build_circuit(heron, a, edge_coloring(heron.graph, 0)));
    auto counts = gate_counts(circ);
    auto depths = two_qubit_depths(circ);
    bool depth6 = std::all_of(depths.begin(), depths.end(), [](int d) { return d == 6; }) && depths.size() == 49;
    auto summary = validate_qasm(emit_qasm(circ));
    bool ok = worst > 1 - 1e-10 && counts.two_qubit == 17248 && summary.gate_counts["cz"] == 17248 && depth6;
    return {ok ? Verdict::pass : Verdict::fail,
            "min fidelity = 1 - " + fmt("%.2e", 1 - worst) + " (tol 1e-10); heron156 p=49: " +
                std::to_string(counts.two_qubit) + " CZ (want 17248), per-layer 2q depth " +
                (depth6 ? "6" : "not 6")};
}

Outcome imported_extrema() {
    const char *env = std::getenv("HEXQ_DATA_DIR");
    if (!env) {
        return {Verdict::skip, "published instance files unavailable (set HEXQ_DATA_DIR with published/ inside)"};
    }
    fs::path dir = fs::path(env) / "published";
    std::map<int, int64_t> want = {{127, -194}, {133, -196}, {156, -246}};
    std::map<int, fs::path> files;
    if (fs::is_directory(dir)) {
        for (const auto &e : fs::directory_iterator(dir)) {
            auto name = e.path().filename().string();
            for (const auto &[n, _] : want) {
                if (name.find(std::to_string(n)) != std::string::npos) files[n] = e.path();
            }
        }
    }
    if (files.size() != want.size()) {
        return {Verdict::skip, "published instance files unavailable under " + dir.string()};
    }
    bool ok = true;
    std::ostringstream d;
    for (const auto &[n, path] : files) {
        auto inst = import_instance_file(path);
        AnnealParams params;
        params.jobs = jobs();
        auto ex = anneal_extrema(inst, params);
        ok = ok && inst.node_count() == n && ex.c_min == want[n];
        d << n << " spins: c_min=" << ex.c_min << " (want " << want[n] << "); ";
    }
    return {ok ? Verdict::pass : Verdict::fail, d.str()};
}

#ifdef HEXQ_CLI
int run_cli(const fs::path &cwd, const std::string &args) {
    std::string cmd = "cd '" + cwd.string() + "' && '" HEXQ_CLI "' --quiet " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> primary_outputs(const fs::path &dir) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(dir)) {
        auto ext = e.path().extension();
        if (!e.is_regular_file() || (ext != ".csv" && ext != ".json") ||
            e.path().filename().string().find("manifest") != std::string::npos) {
            continue;
        }
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), dir).string()] = ss.str();
    }
    return out;
}
#endif

Outcome end_to_end_determinism() {
#ifndef HEXQ_CLI
    return {Verdict::skip, "command line tool not built"};
#else
    fs::path work = HEXQ_WORK_DIR;
    fs::remove_all(work);
    fs::create_directories(work);
    std::ofstream(work / "config.json") << R"({
  "output_dir": "run",
  "sources": [1, 2],
  "targets": [{"seed": 3}, {"seed": 4}],
  "train": {"max_p": 4, "seed": 1},
  "backends": ["statevec", "mps:32"],
  "shots": 500,
  "mps_validate": {"enabled": true, "chi": [8, 64], "max_p": 2}
})";
    auto t0 = std::chrono::steady_clock::now();
    if (run_cli(work, "--jobs " + std::to_string(jobs()) + " run -c config.json") != 0) {
        return {Verdict::fail, "pipeline run failed"};
    }
    double first_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto first = primary_outputs(work / "run");
    fs::rename(work / "run/manifest.json", work / "manifest.json");
    fs::remove_all(work / "run");
    t0 = std::chrono::steady_clock::now();
    if (run_cli(work, "replay manifest.json") != 0) {
        return {Verdict::fail, "replay failed"};
    }
    double second_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto second = primary_outputs(work / "run");
    size_t differing = 0;
    for (const auto &[name, text] : first) {
        auto it = second.find(name);
        differing += it == second.end() || it->second != text;
    }
    differing += second.size() - std::min(second.size(), first.size());
    bool ok = differing == 0 && !first.empty() && second_time < 2 * first_time + 1.0;
    return {ok ? Verdict::pass : Verdict::fail,
            std::to_string(first.size()) + " CSV/JSON outputs, " + std::to_string(differing) +
                " differ after replay; replay took " + fmt("%.1f", second_time) + " s vs first run " +
                fmt("%.1f", first_time) + " s"};
#endif
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "uniform-state zero mean", 1, uniform_zero_mean},
        {2, "symmetry suite", 30, symmetry_suite},
        {3, "gradient check", 60, gradient_check},
        {4, "training monotonicity and quality", 3600, training_quality},
        {5, "transfer trend", 600, transfer_trend},
        {6, "MPS-statevector equivalence", 600, mps_equivalence},
        {7, "three-qubit MPO exactness", 5, mpo_exactness},
        {8, "circuit equivalence and counts", 60, circuit_equivalence},
        {9, "imported-instance extrema", 300, imported_extrema},
        {10, "end-to-end determinism", 0, end_to_end_determinism},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &ex) {
            o = {Verdict::fail, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // Criterion 4 pays for the shared training fixture; 5 and 6 reuse it.
        if (o.verdict == Verdict::pass && c.budget_seconds > 0 && secs > c.budget_seconds) {
            o.verdict = Verdict::fail;
            o.detail += " over runtime budget";
        }
        const char *tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", tag, c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.verdict == Verdict::fail;
    }
    return failures == 0 ? 0 : 1;
}
