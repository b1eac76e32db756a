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

#include "hexq/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hexq/error.hpp"
#include "hexq/rng.hpp"
#include "incidence.hpp"

namespace hexq {

namespace {

void check_dimension(const StateVector &state, const CostVector &cost) {
    if (state.size() != cost.size()) {
        throw InvalidArgument(
            "state has " + std::to_string(state.size()) + " amplitudes, cost vector has " +
            std::to_string(cost.size()));
    }
}

void check_angles(const QaoaAngles &angles) {
    if (angles.betas.size() != angles.gammas.size()) {
        throw InvalidArgument("schedule has different numbers of betas and gammas");
    }
}

// Unnormalized Walsh-Hadamard transform; applying it twice scales by 2^n.
void walsh_hadamard(std::span<Amplitude> amps) {
    for (size_t stride = 1; stride < amps.size(); stride <<= 1) {
        for (size_t base = 0; base < amps.size(); base += 2 * stride) {
            for (size_t i = base; i < base + stride; i++) {
                Amplitude a = amps[i];
                Amplitude b = amps[i + stride];
                amps[i] = a + b;
                amps[i + stride] = a - b;
            }
        }
    }
}

// In the Hadamard basis, sum_q X_q is diagonal with eigenvalue n - 2 popcount(b).
// Multiplies by exp(-i beta (n - 2 popcount(b))) / 2^n.
void mixer_diagonal(std::span<Amplitude> amps, int n, double beta) {
    const double scale = 1.0 / static_cast<double>(amps.size());
    std::vector<Amplitude> table(n + 1);
    for (int k = 0; k <= n; k++) {
        table[k] = std::polar(scale, -beta * (n - 2 * k));
    }
    for (size_t b = 0; b < amps.size(); b++) {
        amps[b] *= table[std::popcount(b)];
    }
}

}  // namespace

CostVector cost_vector(const IsingInstance &instance, int max_qubits) {
    const int n = instance.node_count();
    if (n > max_qubits || n > 40) {
        throw CapacityError(
            "statevector limited to " + std::to_string(max_qubits) + " qubits; instance has " + std::to_string(n));
    }
    detail::Incidence inc(instance);
    CostVector cv;
    cv.n = n;
    cv.values.assign(size_t{1} << n, 0);
    SpinConfig z = spins_from_index(0, n);
    int64_t e = energy(instance, z);
    cv.values[0] = static_cast<int32_t>(e);
    uint64_t index = 0;
    for (uint64_t g = 1; g < cv.values.size(); g++) {
        int j = std::countr_zero(g);
        e -= 2 * z[j] * inc.field(j, z.data());
        z[j] = static_cast<int8_t>(-z[j]);
        index ^= uint64_t{1} << j;
        cv.values[index] = static_cast<int32_t>(e);
    }
    auto [lo, hi] = std::minmax_element(cv.values.begin(), cv.values.end());
    cv.min_value = *lo;
    cv.max_value = *hi;
    return cv;
}

StateVector StateVector::uniform(int n) {
    if (n < 1 || n > 40) {
        throw InvalidArgument("qubit count out of range");
    }
    size_t dim = size_t{1} << n;
    return StateVector(n, std::vector<Amplitude>(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

StateVector StateVector::basis(int n, uint64_t index) {
    if (n < 1 || n > 40 || index >= (uint64_t{1} << n)) {
        throw InvalidArgument("basis index out of range");
    }
    std::vector<Amplitude> amps(size_t{1} << n, 0.0);
    amps[index] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (amplitudes.size() < 2 || !std::has_single_bit(amplitudes.size())) {
        throw InvalidArgument("amplitude count must be a power of two >= 2");
    }
    int n = std::countr_zero(amplitudes.size());
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> out(amps_.size());
    for (size_t b = 0; b < amps_.size(); b++) {
        out[b] = std::norm(amps_[b]);
    }
    return out;
}

StateVector initial_state(int n) {
    return StateVector::uniform(n);
}

void apply_phase(StateVector &state, const CostVector &cost, double gamma) {
    check_dimension(state, cost);
    // Costs are small integers, so exp(-i gamma k) is tabulated once per call.
    std::vector<Amplitude> table(static_cast<size_t>(cost.max_value - cost.min_value) + 1);
    for (size_t k = 0; k < table.size(); k++) {
        double c = static_cast<double>(cost.min_value + static_cast<int32_t>(k));
        table[k] = std::polar(1.0, -gamma * c);
    }
    auto amps = state.amplitudes();
    for (size_t b = 0; b < amps.size(); b++) {
        amps[b] *= table[cost.values[b] - cost.min_value];
    }
}

void apply_mixer(StateVector &state, double beta) {
    // exp(-i beta sum_q X_q) = H^n exp(-i beta sum_q Z_q) H^n.
    auto amps = state.amplitudes();
    walsh_hadamard(amps);
    mixer_diagonal(amps, state.qubits(), beta);
    walsh_hadamard(amps);
}

StateVector qaoa_state(const CostVector &cost, const QaoaAngles &angles) {
    check_angles(angles);
    StateVector state = initial_state(cost.n);
    for (int j = 0; j < angles.p(); j++) {
        apply_phase(state, cost, angles.gammas[j]);
        apply_mixer(state, angles.betas[j]);
    }
    return state;
}

StateVector qaoa_state(const IsingInstance &instance, const QaoaAngles &angles) {
    return qaoa_state(cost_vector(instance), angles);
}

double expectation(const StateVector &state, const CostVector &cost) {
    check_dimension(state, cost);
    auto amps = state.amplitudes();
    double total = 0;
    for (size_t b = 0; b < amps.size(); b++) {
        total += std::norm(amps[b]) * cost.values[b];
    }
    return total;
}

std::vector<double> ValueAndGradient::packed() const {
    std::vector<double> x(d_beta);
    x.insert(x.end(), d_gamma.begin(), d_gamma.end());
    return x;
}

ValueAndGradient gradient(const CostVector &cost, const QaoaAngles &angles) {
    check_angles(angles);
    const int p = angles.p();
    StateVector psi = qaoa_state(cost, angles);
    StateVector lambda = psi;
    {
        auto l = lambda.amplitudes();
        for (size_t b = 0; b < l.size(); b++) {
            l[b] *= static_cast<double>(cost.values[b]);
        }
    }
    ValueAndGradient out;
    out.d_beta.assign(p, 0.0);
    out.d_gamma.assign(p, 0.0);
    {
        auto a = psi.amplitudes();
        auto l = lambda.amplitudes();
        double v = 0;
        for (size_t b = 0; b < a.size(); b++) {
            v += std::real(std::conj(a[b]) * l[b]);
        }
        out.value = v;
    }
    // dE/dtheta = 2 Re <lambda| -i G |psi> = 2 Im <lambda|G|psi>, with psi and
    // lambda both taken right after the gate generated by G.
    for (int j = p - 1; j >= 0; j--) {
        {
            // Both states go to the Hadamard basis, where H_M is diagonal; the
            // inner product picks up the 2^n of the unnormalized transforms.
            auto a = psi.amplitudes();
            auto l = lambda.amplitudes();
            walsh_hadamard(a);
            walsh_hadamard(l);
            Amplitude acc = 0;
            for (size_t b = 0; b < a.size(); b++) {
                acc += std::conj(l[b]) * a[b] * static_cast<double>(cost.n - 2 * std::popcount(b));
            }
            out.d_beta[j] = 2.0 * std::imag(acc) / static_cast<double>(a.size());
            mixer_diagonal(a, cost.n, -angles.betas[j]);
            mixer_diagonal(l, cost.n, -angles.betas[j]);
            walsh_hadamard(a);
            walsh_hadamard(l);
        }
        {
            auto a = psi.amplitudes();
            auto l = lambda.amplitudes();
            Amplitude acc = 0;
            for (size_t b = 0; b < a.size(); b++) {
                acc += std::conj(l[b]) * a[b] * static_cast<double>(cost.values[b]);
            }
            out.d_gamma[j] = 2.0 * std::imag(acc);
        }
        if (j > 0) {
            apply_phase(psi, cost, -angles.gammas[j]);
            apply_phase(lambda, cost, -angles.gammas[j]);
        }
    }
    return out;
}

std::map<int64_t, int> SampleSet::energy_histogram(const CostVector &cost) const {
    std::map<int64_t, int> out;
    for (const auto &[index, count] : counts) {
        out[cost.values.at(index)] += count;
    }
    return out;
}

SampleSet sample(const StateVector &state, int shots, uint64_t seed) {
    if (shots < 0) {
        throw InvalidArgument("shot count must be nonnegative");
    }
    auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double running = 0;
    for (size_t b = 0; b < amps.size(); b++) {
        running += std::norm(amps[b]);
        cumulative[b] = running;
    }
    SampleSet out;
    out.shots = shots;
    out.seed = seed;
    Rng rng(seed, 0x5e, 0);
    for (int s = 0; s < shots; s++) {
        double u = rng.uniform() * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        size_t index = std::min<size_t>(static_cast<size_t>(it - cumulative.begin()), amps.size() - 1);
        out.counts[index]++;
    }
    return out;
}

nlohmann::json histogram_to_json(const std::map<int64_t, int> &histogram) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[e, count] : histogram) {
        j[std::to_string(e)] = count;
    }
    return j;
}

}  // namespace hexq
