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

#include "hexq/mps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hexq/error.hpp"
#include "hexq/format.hpp"
#include "hexq/rng.hpp"

namespace hexq {

namespace {

using Eigen::Index;

constexpr double kMpoCutoff = 1e-14;

Term make_term(std::initializer_list<int> nodes, int coeff) {
    Term t;
    int j = 0;
    for (int v : nodes) {
        t.nodes[j++] = v;
    }
    t.order = j;
    t.coeff = coeff;
    return t;
}

bool covers(const std::vector<int> &qubits, const Term &t) {
    for (int j = 0; j < t.order; j++) {
        if (!std::binary_search(qubits.begin(), qubits.end(), t.nodes[j])) {
            return false;
        }
    }
    return true;
}

SiteMatrix kron(const SiteMatrix &a, const SiteMatrix &w) {
    SiteMatrix out(a.rows() * w.rows(), a.cols() * w.cols());
    for (Index i = 0; i < a.rows(); i++) {
        for (Index j = 0; j < a.cols(); j++) {
            out.block(i * w.rows(), j * w.cols(), w.rows(), w.cols()) = a(i, j) * w;
        }
    }
    return out;
}

// Thin QR: m = q r with q having min(rows, cols) orthonormal columns.
void thin_qr(const SiteMatrix &m, SiteMatrix &q, SiteMatrix &r) {
    Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<SiteMatrix> qr(m);
    q = qr.householderQ() * SiteMatrix::Identity(m.rows(), k);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

}  // namespace

std::vector<int> DiagonalFactor::values() const {
    size_t q = qubits.size();
    std::vector<int> out(size_t{1} << q, 0);
    for (size_t a = 0; a < out.size(); a++) {
        int total = 0;
        for (const auto &t : terms) {
            int prod = t.coeff;
            for (int j = 0; j < t.order; j++) {
                size_t pos = std::lower_bound(qubits.begin(), qubits.end(), t.nodes[j]) - qubits.begin();
                prod *= ((a >> pos) & 1) ? 1 : -1;
            }
            total += prod;
        }
        out[a] = total;
    }
    return out;
}

std::vector<DiagonalFactor> collect_terms(const IsingInstance &instance) {
    const auto &g = instance.graph;
    std::vector<DiagonalFactor> groups;
    for (size_t c = 0; c < g.cubic().size(); c++) {
        const auto &t = g.cubic()[c];
        DiagonalFactor f;
        f.qubits = {t.i, t.w, t.k};
        std::sort(f.qubits.begin(), f.qubits.end());
        f.terms.push_back(make_term({t.i, t.w, t.k}, instance.d_cubic[c]));
        groups.push_back(std::move(f));
    }
    std::stable_sort(groups.begin(), groups.end(), [](const auto &a, const auto &b) { return a.qubits < b.qubits; });

    auto place = [](std::vector<DiagonalFactor> &pool, const Term &t) {
        for (auto &f : pool) {
            if (covers(f.qubits, t)) {
                f.terms.push_back(t);
                return true;
            }
        }
        return false;
    };

    std::vector<Term> loose_linear;
    std::vector<DiagonalFactor> edge_factors;
    for (int v = 0; v < g.node_count(); v++) {
        Term t = make_term({v}, instance.d_lin[v]);
        if (!place(groups, t)) {
            loose_linear.push_back(t);
        }
    }
    for (size_t e = 0; e < g.edges().size(); e++) {
        const auto &edge = g.edges()[e];
        Term t = make_term({edge.u, edge.v}, instance.d_quad[e]);
        if (!place(groups, t)) {
            edge_factors.push_back({{edge.u, edge.v}, {t}});
        }
    }
    std::vector<DiagonalFactor> singles;
    for (const auto &t : loose_linear) {
        if (!place(edge_factors, t)) {
            singles.push_back({{t.nodes[0]}, {t}});
        }
    }
    groups.insert(groups.end(), edge_factors.begin(), edge_factors.end());
    groups.insert(groups.end(), singles.begin(), singles.end());
    return groups;
}

void check_term_coverage(const IsingInstance &instance, const std::vector<DiagonalFactor> &factors) {
    // Key: sorted node list of the monomial.
    std::map<std::vector<int>, std::pair<int, int>> expected;  // -> (coeff, times seen)
    for (const auto &t : instance.terms()) {
        std::vector<int> key(t.nodes.begin(), t.nodes.begin() + t.order);
        std::sort(key.begin(), key.end());
        expected[key] = {t.coeff, 0};
    }
    for (const auto &f : factors) {
        if (f.qubits.empty() || f.qubits.size() > 3 || !std::is_sorted(f.qubits.begin(), f.qubits.end())) {
            throw InvalidArgument("factor qubits must be 1 to 3 ascending node ids");
        }
        for (const auto &t : f.terms) {
            std::vector<int> key(t.nodes.begin(), t.nodes.begin() + t.order);
            std::sort(key.begin(), key.end());
            auto it = expected.find(key);
            if (it == expected.end() || it->second.first != t.coeff || !covers(f.qubits, t)) {
                throw InvalidArgument("factor holds a term that is not a monomial of the instance");
            }
            if (++it->second.second > 1) {
                throw InvalidArgument("monomial assigned to more than one factor");
            }
        }
    }
    for (const auto &[key, entry] : expected) {
        if (entry.second == 0) {
            throw InvalidArgument("monomial not assigned to any factor");
        }
    }
}

QubitOrder QubitOrder::identity(int n) {
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    return from_sequence(std::move(seq), "device");
}

QubitOrder QubitOrder::from_sequence(std::vector<int> node_at, std::string method) {
    int n = static_cast<int>(node_at.size());
    QubitOrder out;
    out.site_of.assign(n, -1);
    for (int s = 0; s < n; s++) {
        int v = node_at[s];
        if (v < 0 || v >= n || out.site_of[v] != -1) {
            throw InvalidArgument("qubit order is not a permutation");
        }
        out.site_of[v] = s;
    }
    out.node_at = std::move(node_at);
    out.method = std::move(method);
    return out;
}

double average_span(const std::vector<DiagonalFactor> &factors, const QubitOrder &order) {
    double total = 0;
    int count = 0;
    for (const auto &f : factors) {
        if (f.qubits.size() < 2) {
            continue;
        }
        int lo = order.site_of.at(f.qubits[0]), hi = lo;
        for (int q : f.qubits) {
            lo = std::min(lo, order.site_of.at(q));
            hi = std::max(hi, order.site_of.at(q));
        }
        total += hi - lo;
        count++;
    }
    return count ? total / count : 0.0;
}

QubitOrder reverse_cuthill_mckee(const HeavyHexGraph &graph) {
    int n = graph.node_count();
    std::vector<int> seq;
    std::vector<bool> seen(n, false);
    auto by_degree = [&](int a, int b) {
        return graph.degree(a) != graph.degree(b) ? graph.degree(a) < graph.degree(b) : a < b;
    };
    std::vector<int> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    std::sort(starts.begin(), starts.end(), by_degree);
    for (int s : starts) {
        if (seen[s]) {
            continue;
        }
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            seq.push_back(v);
            std::vector<int> next;
            for (int u : graph.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = true;
                    next.push_back(u);
                }
            }
            std::sort(next.begin(), next.end(), by_degree);
            queue.insert(queue.end(), next.begin(), next.end());
        }
    }
    std::reverse(seq.begin(), seq.end());
    return QubitOrder::from_sequence(std::move(seq), "rcm");
}

QubitOrder choose_qubit_order(const HeavyHexGraph &graph, const std::vector<DiagonalFactor> &factors) {
    QubitOrder device = QubitOrder::identity(graph.node_count());
    QubitOrder rcm = reverse_cuthill_mckee(graph);
    return average_span(factors, rcm) < average_span(factors, device) ? rcm : device;
}

int ThreeQubitMpo::max_bond() const {
    Index best = 1;
    for (const auto &s : sites) {
        best = std::max({best, s[0].rows(), s[0].cols()});
    }
    return static_cast<int>(best);
}

std::vector<Amplitude> ThreeQubitMpo::diagonal() const {
    size_t len = sites.size();
    if (len > 20) {
        throw CapacityError("MPO spans more than 20 sites; dense diagonal refused");
    }
    std::vector<Amplitude> out(size_t{1} << len);
    std::vector<uint8_t> bits(len);
    for (size_t a = 0; a < out.size(); a++) {
        for (size_t t = 0; t < len; t++) bits[t] = (a >> t) & 1;
        out[a] = entry(bits);
    }
    return out;
}

Amplitude ThreeQubitMpo::entry(std::span<const uint8_t> bits) const {
    if (bits.size() != sites.size()) {
        throw InvalidArgument("MPO entry needs one bit per covered site");
    }
    SiteMatrix acc = sites[0][bits[0]];
    for (size_t t = 1; t < sites.size(); t++) {
        acc = acc * sites[t][bits[t]];
    }
    return acc(0, 0);
}

ThreeQubitMpo three_qubit_mpo(const DiagonalFactor &factor, double gamma, const QubitOrder &order) {
    const size_t q = factor.qubits.size();
    if (q == 0 || q > 3) {
        throw InvalidArgument("diagonal factor must act on 1 to 3 qubits");
    }
    // Term qubits sorted by site; pos[r] is the factor bit of the r-th one.
    std::vector<std::pair<int, size_t>> by_site;
    for (size_t t = 0; t < q; t++) {
        by_site.push_back({order.site_of.at(factor.qubits[t]), t});
    }
    std::sort(by_site.begin(), by_site.end());

    std::vector<int> values = factor.values();
    const Index dim = Index{1} << q;
    SiteMatrix c(1, dim);
    for (Index a = 0; a < dim; a++) {
        size_t fa = 0;
        for (size_t r = 0; r < q; r++) {
            fa |= static_cast<size_t>((a >> r) & 1) << by_site[r].second;
        }
        c(0, a) = std::polar(1.0, -gamma * values[fa]);
    }

    std::vector<SiteTensor> term_sites(q);
    for (size_t r = 0; r + 1 < q; r++) {
        Index bond = c.rows();
        Index rest = c.cols() / 2;
        SiteMatrix m(bond * 2, rest);
        for (Index alpha = 0; alpha < bond; alpha++) {
            for (Index d = 0; d < 2; d++) {
                for (Index col = 0; col < rest; col++) {
                    m(alpha * 2 + d, col) = c(alpha, d + 2 * col);
                }
            }
        }
        Eigen::JacobiSVD<SiteMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &s = svd.singularValues();
        Index k = 1;
        while (k < s.size() && s(k) > kMpoCutoff * s(0)) {
            k++;
        }
        for (Index d = 0; d < 2; d++) {
            term_sites[r][d].resize(bond, k);
            for (Index alpha = 0; alpha < bond; alpha++) {
                term_sites[r][d].row(alpha) = svd.matrixU().row(alpha * 2 + d).head(k);
            }
        }
        c = s.head(k).asDiagonal() * svd.matrixV().leftCols(k).adjoint();
    }
    for (Index d = 0; d < 2; d++) {
        term_sites[q - 1][d] = c.col(d);
    }

    ThreeQubitMpo mpo;
    mpo.first_site = by_site.front().first;
    mpo.last_site = by_site.back().first;
    for (size_t r = 0; r < q; r++) {
        if (r > 0) {
            Index bond = term_sites[r][0].rows();
            for (int s = by_site[r - 1].first + 1; s < by_site[r].first; s++) {
                SiteMatrix id = SiteMatrix::Identity(bond, bond);
                mpo.sites.push_back({id, id});
            }
        }
        mpo.sites.push_back(term_sites[r]);
    }
    return mpo;
}

std::vector<std::vector<int>> layer_partition(const std::vector<SiteInterval> &intervals) {
    std::vector<int> idx(intervals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (intervals[a].first != intervals[b].first) return intervals[a].first < intervals[b].first;
        return intervals[a].last < intervals[b].last;
    });
    std::vector<std::vector<int>> layers;
    for (int f : idx) {
        const auto &x = intervals[f];
        bool placed = false;
        for (auto &layer : layers) {
            bool fits = std::all_of(layer.begin(), layer.end(), [&](int g) {
                const auto &y = intervals[g];
                return x.first >= y.last || y.first >= x.last;
            });
            if (fits) {
                layer.push_back(f);
                placed = true;
                break;
            }
        }
        if (!placed) {
            layers.push_back({f});
        }
    }
    return layers;
}

std::vector<std::vector<int>> layer_partition(const std::vector<DiagonalFactor> &factors, const QubitOrder &order) {
    std::vector<SiteInterval> intervals;
    for (const auto &f : factors) {
        SiteInterval iv{order.site_of.at(f.qubits[0]), order.site_of.at(f.qubits[0])};
        for (int q : f.qubits) {
            iv.first = std::min(iv.first, order.site_of.at(q));
            iv.last = std::max(iv.last, order.site_of.at(q));
        }
        intervals.push_back(iv);
    }
    return layer_partition(intervals);
}

double TruncationLedger::total_discarded_weight() const {
    double total = 0;
    for (const auto &e : entries) {
        total += e.discarded_weight;
    }
    return total;
}

std::string TruncationLedger::to_csv() const {
    std::ostringstream out;
    out << "layer,bond,discarded_weight\n";
    for (const auto &e : entries) {
        out << e.layer << ',' << e.bond << ',' << format_real(e.discarded_weight) << '\n';
    }
    return out.str();
}

MpsState MpsState::plus_state(int n) {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<std::array<Amplitude, 2>> sites(n, {Amplitude(h), Amplitude(h)});
    return product(sites);
}

MpsState MpsState::product(std::span<const std::array<Amplitude, 2>> site_states) {
    if (site_states.empty()) {
        throw InvalidArgument("MPS needs at least one site");
    }
    MpsState out;
    for (const auto &s : site_states) {
        SiteTensor t;
        t[0] = SiteMatrix::Constant(1, 1, s[0]);
        t[1] = SiteMatrix::Constant(1, 1, s[1]);
        out.tensors_.push_back(std::move(t));
    }
    out.center_ = 0;
    return out;
}

int MpsState::bond_dimension(int bond) const {
    return static_cast<int>(tensors_.at(bond)[0].cols());
}

int MpsState::max_bond_dimension() const {
    Index best = 1;
    for (const auto &t : tensors_) {
        best = std::max(best, t[0].cols());
    }
    return static_cast<int>(best);
}

double MpsState::norm_squared() const {
    SiteMatrix env = SiteMatrix::Ones(1, 1);
    for (const auto &t : tensors_) {
        env = t[0].adjoint() * env * t[0] + t[1].adjoint() * env * t[1];
    }
    return env(0, 0).real();
}

void MpsState::apply_single(int site, const Eigen::Matrix2cd &u) {
    auto &t = tensors_.at(site);
    SiteMatrix a0 = u(0, 0) * t[0] + u(0, 1) * t[1];
    SiteMatrix a1 = u(1, 0) * t[0] + u(1, 1) * t[1];
    t[0] = std::move(a0);
    t[1] = std::move(a1);
}

void MpsState::apply_diagonal(int site, Amplitude d0, Amplitude d1) {
    auto &t = tensors_.at(site);
    t[0] *= d0;
    t[1] *= d1;
}

void MpsState::apply_mpo(const ThreeQubitMpo &mpo) {
    if (mpo.first_site < 0 || mpo.last_site >= sites() ||
        static_cast<int>(mpo.sites.size()) != mpo.last_site - mpo.first_site + 1) {
        throw InvalidArgument("MPO does not fit the chain");
    }
    for (size_t t = 0; t < mpo.sites.size(); t++) {
        auto &a = tensors_[mpo.first_site + t];
        a[0] = kron(a[0], mpo.sites[t][0]);
        a[1] = kron(a[1], mpo.sites[t][1]);
    }
}

void MpsState::move_center(int site) {
    if (site < 0 || site >= sites()) {
        throw InvalidArgument("orthogonality center out of range");
    }
    SiteMatrix q, r;
    while (center_ < site) {
        auto &a = tensors_[center_];
        Index dl = a[0].rows(), dr = a[0].cols();
        SiteMatrix m(2 * dl, dr);
        m << a[0], a[1];
        thin_qr(m, q, r);
        a[0] = q.topRows(dl);
        a[1] = q.bottomRows(dl);
        auto &b = tensors_[center_ + 1];
        b[0] = r * b[0];
        b[1] = r * b[1];
        center_++;
    }
    while (center_ > site) {
        auto &a = tensors_[center_];
        Index dl = a[0].rows(), dr = a[0].cols();
        SiteMatrix m(dl, 2 * dr);
        m << a[0], a[1];
        // m = r^H q^H from the QR of m^H.
        thin_qr(m.adjoint(), q, r);
        SiteMatrix qh = q.adjoint();
        a[0] = qh.leftCols(dr);
        a[1] = qh.rightCols(dr);
        auto &b = tensors_[center_ - 1];
        SiteMatrix rh = r.adjoint();
        b[0] = b[0] * rh;
        b[1] = b[1] * rh;
        center_--;
    }
}

void MpsState::compress(int first, int last, int chi_max, double cutoff, int layer, TruncationLedger &ledger) {
    if (center_ != first) {
        throw InvalidArgument("compress requires the orthogonality center at the start of the range");
    }
    if (chi_max < 1) {
        throw InvalidArgument("chi_max must be >= 1");
    }
    move_center(last);
    for (int s = last; s > first; s--) {
        auto &a = tensors_[s];
        Index dl = a[0].rows(), dr = a[0].cols();
        SiteMatrix m(dl, 2 * dr);
        m << a[0], a[1];
        Eigen::BDCSVD<SiteMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        double total = sv.squaredNorm();
        Index k = 1;
        while (k < sv.size() && k < chi_max && sv(k) > cutoff * sv(0)) {
            k++;
        }
        double kept = sv.head(k).squaredNorm();
        double discarded = total > 0 ? std::max(0.0, (total - kept) / total) : 0.0;
        ledger.entries.push_back({layer, s - 1, discarded});
        SiteMatrix vh = svd.matrixV().leftCols(k).adjoint();
        a[0] = vh.leftCols(dr);
        a[1] = vh.rightCols(dr);
        SiteMatrix us = svd.matrixU().leftCols(k) * sv.head(k).asDiagonal();
        auto &b = tensors_[s - 1];
        b[0] = b[0] * us;
        b[1] = b[1] * us;
        center_ = s - 1;
    }
    auto &c = tensors_[center_];
    double norm2 = c[0].squaredNorm() + c[1].squaredNorm();
    ledger.norms_before_renormalization.push_back(norm2);
    if (norm2 > 0) {
        double scale = 1.0 / std::sqrt(norm2);
        c[0] *= scale;
        c[1] *= scale;
    }
}

std::vector<Amplitude> MpsState::to_dense(const QubitOrder &order) const {
    int n = sites();
    if (n > kDefaultQubitCap || order.size() != n) {
        throw CapacityError("dense conversion needs n <= 28 and a matching qubit order");
    }
    std::vector<Eigen::RowVectorXcd> rows(1, Eigen::RowVectorXcd::Ones(1));
    for (int s = 0; s < n; s++) {
        std::vector<Eigen::RowVectorXcd> next(rows.size() * 2);
        for (size_t p = 0; p < rows.size(); p++) {
            next[p] = rows[p] * tensors_[s][0];
            next[p + rows.size()] = rows[p] * tensors_[s][1];
        }
        rows = std::move(next);
    }
    std::vector<Amplitude> out(rows.size());
    for (size_t a = 0; a < rows.size(); a++) {
        uint64_t index = 0;
        for (int s = 0; s < n; s++) {
            if ((a >> s) & 1) {
                index |= uint64_t{1} << order.node_at[s];
            }
        }
        out[index] = rows[a](0);
    }
    return out;
}

MpsResult evolve_mps(const IsingInstance &instance, const QaoaAngles &angles, const MpsOptions &options) {
    if (options.chi_max < 1) {
        throw InvalidArgument("chi_max must be >= 1");
    }
    if (!(options.cutoff >= 0)) {
        throw InvalidArgument("cutoff must be nonnegative");
    }
    if (angles.betas.size() != angles.gammas.size()) {
        throw InvalidArgument("betas and gammas differ in length");
    }
    const int n = instance.node_count();
    auto factors = collect_terms(instance);
    QubitOrder order = options.order ? *options.order : choose_qubit_order(instance.graph, factors);
    if (order.size() != n) {
        throw InvalidArgument("qubit order does not match the instance size");
    }

    std::vector<DiagonalFactor> multi, single;
    for (auto &f : factors) {
        (f.qubits.size() > 1 ? multi : single).push_back(std::move(f));
    }
    auto layers = layer_partition(multi, order);
    std::vector<std::vector<int>> single_values;
    for (const auto &f : single) {
        single_values.push_back(f.values());
    }

    MpsResult result{MpsState::plus_state(n), {}, order, static_cast<int>(layers.size())};
    MpsState &state = result.state;
    int layer_id = 0;
    for (int j = 0; j < angles.p(); j++) {
        const double gamma = angles.gammas[j];
        for (size_t f = 0; f < single.size(); f++) {
            state.apply_diagonal(
                order.site_of[single[f].qubits[0]], std::polar(1.0, -gamma * single_values[f][0]),
                std::polar(1.0, -gamma * single_values[f][1]));
        }
        for (const auto &layer : layers) {
            std::vector<ThreeQubitMpo> mpos;
            int lo = n, hi = -1;
            for (int f : layer) {
                mpos.push_back(three_qubit_mpo(multi[f], gamma, order));
                lo = std::min(lo, mpos.back().first_site);
                hi = std::max(hi, mpos.back().last_site);
            }
            state.move_center(lo);
            for (const auto &mpo : mpos) {
                state.apply_mpo(mpo);
            }
            state.compress(lo, hi, options.chi_max, options.cutoff, layer_id++, result.ledger);
        }
        const double c = std::cos(angles.betas[j]), s = std::sin(angles.betas[j]);
        Eigen::Matrix2cd mixer;
        mixer << c, Amplitude(0, -s), Amplitude(0, -s), c;
        for (int site = 0; site < n; site++) {
            state.apply_single(site, mixer);
        }
    }
    return result;
}

double mps_expectation(const MpsState &state_in, const IsingInstance &instance, const QubitOrder &order) {
    const int n = state_in.sites();
    if (instance.node_count() != n || order.size() != n) {
        throw InvalidArgument("MPS, instance and qubit order sizes differ");
    }
    struct SiteTerm {
        int last;
        std::vector<int> sites;  // ascending
        int coeff;
    };
    std::vector<std::vector<SiteTerm>> by_first(n);
    for (const auto &t : instance.terms()) {
        std::vector<int> sites;
        for (int j = 0; j < t.order; j++) {
            sites.push_back(order.site_of[t.nodes[j]]);
        }
        std::sort(sites.begin(), sites.end());
        by_first[sites.front()].push_back({sites.back(), sites, t.coeff});
    }

    MpsState state = state_in;
    state.move_center(0);
    double norm2 = state.tensor(0)[0].squaredNorm() + state.tensor(0)[1].squaredNorm();
    double total = 0;
    for (int c = 0; c < n; c++) {
        state.move_center(c);
        const auto &a = state.tensor(c);
        for (const auto &term : by_first[c]) {
            if (term.last == c) {
                total += term.coeff * (a[1].squaredNorm() - a[0].squaredNorm());
                continue;
            }
            // Left environment is the identity at the center; Z on physical 0 is -1.
            SiteMatrix env = a[1].adjoint() * a[1] - a[0].adjoint() * a[0];
            for (int s = c + 1; s <= term.last; s++) {
                const auto &b = state.tensor(s);
                bool z = std::binary_search(term.sites.begin(), term.sites.end(), s);
                SiteMatrix e1 = b[1].adjoint() * env * b[1];
                SiteMatrix e0 = b[0].adjoint() * env * b[0];
                env = z ? SiteMatrix(e1 - e0) : SiteMatrix(e1 + e0);
            }
            total += term.coeff * env.trace().real();
        }
    }
    return total / norm2;
}

double delta_e(double e_ref, double e_mps) {
    if (e_ref == 0) {
        throw InvalidArgument("delta_e is undefined for a zero reference energy");
    }
    return std::abs((e_ref - e_mps) / e_ref);
}

SampleSet sample_mps(const MpsState &state_in, const QubitOrder &order, int shots, uint64_t seed) {
    if (shots < 0) {
        throw InvalidArgument("shots must be nonnegative");
    }
    const int n = state_in.sites();
    if (order.size() != n) {
        throw InvalidArgument("qubit order does not match the MPS");
    }
    MpsState state = state_in;
    state.move_center(0);
    SampleSet out;
    out.shots = shots;
    out.seed = seed;
    Rng rng(seed, 0x5e, 1);
    for (int shot = 0; shot < shots; shot++) {
        Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
        uint64_t index = 0;
        for (int s = 0; s < n; s++) {
            Eigen::RowVectorXcd w0 = v * state.tensor(s)[0];
            Eigen::RowVectorXcd w1 = v * state.tensor(s)[1];
            double p0 = w0.squaredNorm(), p1 = w1.squaredNorm();
            bool one = rng.uniform() * (p0 + p1) >= p0;
            if (one) {
                index |= uint64_t{1} << order.node_at[s];
                v = w1 / std::sqrt(p1);
            } else {
                v = w0 / std::sqrt(p0);
            }
        }
        out.counts[index]++;
    }
    return out;
}

}  // namespace hexq
