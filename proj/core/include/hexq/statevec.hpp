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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexq/instance.hpp"
#include "hexq/qaoa_angles.hpp"

namespace hexq {

using Amplitude = std::complex<double>;

/// C(z) for every computational basis index. Qubit j is bit j of the index;
/// bit 1 means spin +1.
struct CostVector {
    int n = 0;
    std::vector<int32_t> values;
    int32_t min_value = 0;
    int32_t max_value = 0;

    size_t size() const noexcept {
        return values.size();
    }
};

constexpr int kDefaultQubitCap = 28;

CostVector cost_vector(const IsingInstance &instance, int max_qubits = kDefaultQubitCap);

/// Dense state of n qubits (2^n double-precision amplitudes).
class StateVector {
   public:
    /// |+>^n.
    static StateVector uniform(int n);
    static StateVector basis(int n, uint64_t index);
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    int qubits() const noexcept {
        return n_;
    }
    size_t size() const noexcept {
        return amps_.size();
    }
    std::span<Amplitude> amplitudes() noexcept {
        return amps_;
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amps_;
    }
    double norm_squared() const;
    std::vector<double> probabilities() const;

   private:
    StateVector(int n, std::vector<Amplitude> amps) : n_(n), amps_(std::move(amps)) {}
    int n_ = 0;
    std::vector<Amplitude> amps_;
};

StateVector initial_state(int n);

/// amplitude_b *= exp(-i gamma C_b).
void apply_phase(StateVector &state, const CostVector &cost, double gamma);

/// Applies exp(-i beta X) to every qubit.
void apply_mixer(StateVector &state, double beta);

/// Layers 1..p of phase then mixer, starting from |+>^n. p = 0 is |+>^n itself.
StateVector qaoa_state(const CostVector &cost, const QaoaAngles &angles);
StateVector qaoa_state(const IsingInstance &instance, const QaoaAngles &angles);

/// sum_b |amp_b|^2 C_b.
double expectation(const StateVector &state, const CostVector &cost);

struct ValueAndGradient {
    double value = 0;
    std::vector<double> d_beta;
    std::vector<double> d_gamma;

    /// Packed as [d_beta..., d_gamma...].
    std::vector<double> packed() const;
};

/// <H_C> and its derivatives with respect to every beta_j and gamma_j, by a
/// reverse sweep over the layers with two state buffers.
ValueAndGradient gradient(const CostVector &cost, const QaoaAngles &angles);

/// Measurement outcomes keyed by basis index.
struct SampleSet {
    int shots = 0;
    uint64_t seed = 0;
    std::map<uint64_t, int> counts;

    std::map<int64_t, int> energy_histogram(const CostVector &cost) const;
};

SampleSet sample(const StateVector &state, int shots, uint64_t seed);

/// {"energy": count, ...} with energies as decimal string keys.
nlohmann::json histogram_to_json(const std::map<int64_t, int> &histogram);

}  // namespace hexq
