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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hexq/instance.hpp"
#include "hexq/qaoa_angles.hpp"
#include "hexq/statevec.hpp"

namespace hexq {

/// A diagonal factor exp(-i gamma C_f) of the phase separator, where C_f is
/// the sum of `terms`, every one supported on `qubits`.
struct DiagonalFactor {
    /// Ascending node ids, 1 to 3 of them.
    std::vector<int> qubits;
    std::vector<Term> terms;
    /// C_f for each assignment of `qubits`; bit t of the index is the bit of
    /// qubits[t] (bit 1 means spin +1).
    std::vector<int> values() const;
};

/// One factor per cubic triple holding its cubic term. Every linear and
/// quadratic term joins the lexicographically first triple (by sorted node
/// ids) that covers it. Edges no triple covers become two-qubit factors and
/// remaining linear terms join the first such edge or stand alone.
std::vector<DiagonalFactor> collect_terms(const IsingInstance &instance);

/// Throws InvalidArgument unless every monomial of the instance appears in
/// exactly one factor and no factor holds a foreign term.
void check_term_coverage(const IsingInstance &instance, const std::vector<DiagonalFactor> &factors);

/// Placement of qubits on the MPS chain.
struct QubitOrder {
    std::vector<int> node_at;
    std::vector<int> site_of;
    std::string method;

    static QubitOrder identity(int n);
    /// Throws InvalidArgument unless node_at is a permutation of 0..n-1.
    static QubitOrder from_sequence(std::vector<int> node_at, std::string method);
    int size() const noexcept {
        return static_cast<int>(node_at.size());
    }
};

/// Mean of (last site - first site) over the multi-qubit factors.
double average_span(const std::vector<DiagonalFactor> &factors, const QubitOrder &order);
/// Reverse Cuthill-McKee ordering of the coupling graph.
QubitOrder reverse_cuthill_mckee(const HeavyHexGraph &graph);
/// Device index order or reverse Cuthill-McKee, whichever has the smaller
/// average factor span (ties keep device order).
QubitOrder choose_qubit_order(const HeavyHexGraph &graph, const std::vector<DiagonalFactor> &factors);

using SiteMatrix = Eigen::MatrixXcd;
/// Site tensor as one (left bond x right bond) matrix per physical value.
using SiteTensor = std::array<SiteMatrix, 2>;

/// Diagonal MPO on the contiguous sites first_site..last_site. Sites that
/// carry no factor qubit are identity pass-throughs.
struct ThreeQubitMpo {
    int first_site = 0;
    int last_site = 0;
    std::vector<SiteTensor> sites;
    int max_bond() const;
    /// Diagonal of the represented operator over the covered sites; bit t of
    /// the index is the physical value at first_site + t. Throws
    /// CapacityError beyond 20 sites.
    std::vector<Amplitude> diagonal() const;
    /// One diagonal element; bits[t] is the physical value at first_site + t.
    Amplitude entry(std::span<const uint8_t> bits) const;
};

/// Sequential SVD of exp(-i gamma C_f) reshaped site by site. Singular
/// values below 1e-14 of the largest are dropped, so gamma = 0 yields bond 1.
ThreeQubitMpo three_qubit_mpo(const DiagonalFactor &factor, double gamma, const QubitOrder &order);

struct SiteInterval {
    int first = 0;
    int last = 0;
};

/// Greedy first-fit in order of increasing start. Two intervals share a
/// layer when one ends at or before the other begins (i >= k' or i' >= k),
/// so neighbours may touch on an endpoint site. Returns factor indices.
std::vector<std::vector<int>> layer_partition(const std::vector<SiteInterval> &intervals);
std::vector<std::vector<int>> layer_partition(const std::vector<DiagonalFactor> &factors, const QubitOrder &order);

struct TruncationEntry {
    int layer = 0;
    /// Bond between sites `bond` and `bond + 1`.
    int bond = 0;
    /// Discarded squared singular values over their total.
    double discarded_weight = 0;
};

struct TruncationLedger {
    std::vector<TruncationEntry> entries;
    /// Squared norm just before each renormalization, one per compression.
    std::vector<double> norms_before_renormalization;
    double total_discarded_weight() const;
    /// Header: layer,bond,discarded_weight.
    std::string to_csv() const;
};

/// Matrix product state on n sites, kept in mixed canonical form around
/// center().
class MpsState {
   public:
    /// |+>^n.
    static MpsState plus_state(int n);
    /// Product state with the given (amplitude of 0, amplitude of 1) per site.
    static MpsState product(std::span<const std::array<Amplitude, 2>> site_states);

    int sites() const noexcept {
        return static_cast<int>(tensors_.size());
    }
    int center() const noexcept {
        return center_;
    }
    const SiteTensor &tensor(int site) const {
        return tensors_.at(site);
    }
    int bond_dimension(int bond) const;
    int max_bond_dimension() const;
    double norm_squared() const;

    /// Single-site unitary; canonical form is preserved.
    void apply_single(int site, const Eigen::Matrix2cd &u);
    void apply_diagonal(int site, Amplitude d0, Amplitude d1);
    /// Exact application; bonds inside the MPO range grow by its bond.
    void apply_mpo(const ThreeQubitMpo &mpo);
    /// Moves the orthogonality center by exact QR steps.
    void move_center(int site);
    /// Re-canonicalizes sites first..last with a QR sweep, then truncates
    /// bonds right to left to at most chi_max and to singular values above
    /// cutoff times the largest. Records every bond in the ledger, then
    /// renormalizes. Requires center() == first on entry; leaves it there.
    void compress(int first, int last, int chi_max, double cutoff, int layer, TruncationLedger &ledger);

    /// Dense amplitudes indexed like StateVector (bit j = node j).
    std::vector<Amplitude> to_dense(const QubitOrder &order) const;

   private:
    std::vector<SiteTensor> tensors_;
    int center_ = 0;
};

struct MpsOptions {
    int chi_max = 64;
    double cutoff = 1e-12;
    /// Defaults to choose_qubit_order().
    std::optional<QubitOrder> order;
};

struct MpsResult {
    MpsState state;
    TruncationLedger ledger;
    QubitOrder order;
    int layers_per_round = 0;
};

/// |+>^n, then per QAOA layer the MPO layers of the phase separator, each
/// followed by compression of the sites it touched, then the mixer as
/// single-site rotations. Throws InvalidArgument if chi_max < 1.
MpsResult evolve_mps(const IsingInstance &instance, const QaoaAngles &angles, const MpsOptions &options = {});

/// <H_C> from local Z-string expectations.
double mps_expectation(const MpsState &state, const IsingInstance &instance, const QubitOrder &order);

/// |(e_ref - e_mps) / e_ref|. Throws InvalidArgument for e_ref == 0.
double delta_e(double e_ref, double e_mps);

/// Sequential sampling from the normalized state.
SampleSet sample_mps(const MpsState &state, const QubitOrder &order, int shots, uint64_t seed);

}  // namespace hexq
