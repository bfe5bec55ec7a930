// Copyright 2026 The qspec Authors
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

/**
 * @file
 * The two circuit ensembles: pseudo-random universal circuits on a 2D
 * lattice and sparse IQP circuits H^n D H^n, plus the phase function
 * f(y) = <y|D|y> of the diagonal part.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "random.hpp"
#include "state_vector.hpp"
#include "walsh.hpp"

namespace qspec {

// ---------------------------------------------------------------------------
// Pseudo-random universal circuits
// ---------------------------------------------------------------------------

enum class SingleQubitGate : int { sqrt_x = 0, sqrt_y = 1, t = 2 };

inline Gate make_single(SingleQubitGate kind, int q) {
    switch (kind) {
    case SingleQubitGate::sqrt_x:
        return gates::SqrtX(q);
    case SingleQubitGate::sqrt_y:
        return gates::SqrtY(q);
    case SingleQubitGate::t:
        return gates::T(q);
    }
    throw std::invalid_argument("unknown single-qubit gate");
}

struct RandomCircuitSpec {
    int rows = 4;
    int cols = 3;
    /// Number of CZ clock cycles after the initial Hadamard layer.
    int depth = 40;
    std::uint64_t seed = 0;
    std::vector<SingleQubitGate> single_qubit_set{SingleQubitGate::sqrt_x, SingleQubitGate::sqrt_y,
                                                  SingleQubitGate::t};

    [[nodiscard]] int num_qubits() const { return rows * cols; }

    void validate() const {
        if (rows < 1 || cols < 1) {
            throw std::invalid_argument("lattice dimensions must be at least 1");
        }
        if (depth < 1) {
            throw std::invalid_argument("depth must be at least 1");
        }
        check_qubit_count(rows * cols);
        if (single_qubit_set.size() < 2) {
            throw std::invalid_argument("single-qubit set needs at least two gates");
        }
    }
};

/// Cycle order of the eight CZ activation patterns.
inline constexpr std::array<int, 8> kCzPatternOrder{0, 3, 2, 1, 4, 7, 6, 5};

/**
 * Lattice edges activated by CZ pattern `pattern` (0..7). Even patterns use
 * horizontal edges (r, c)-(r, c+1), odd ones vertical edges (r, c)-(r+1, c);
 * pattern / 2 picks one of four staggered offsets so that no qubit is in
 * two edges and the four offsets together cover every edge once.
 */
inline std::vector<std::array<int, 2>> cz_pattern_edges(int rows, int cols, int pattern) {
    const bool vertical = (pattern % 2) == 1;
    const int shift = (pattern / 2) % 4;
    std::vector<std::array<int, 2>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int r2 = vertical ? r + 1 : r;
            const int c2 = vertical ? c : c + 1;
            if (r2 >= rows || c2 >= cols) {
                continue;
            }
            const int key = vertical ? (r + 2 * c) : (2 * r + c);
            if (key % 4 == shift) {
                edges.push_back({r * cols + c, r2 * cols + c2});
            }
        }
    }
    return edges;
}

/**
 * Pseudo-random universal circuit on a rows x cols lattice.
 *
 * Layout: a Hadamard on every qubit, then `depth` cycles. Each cycle applies
 * one CZ pattern; a qubit that had a CZ in the previous cycle and none in
 * this one receives a single-qubit gate. The first such gate on a qubit is
 * a T, later ones are drawn uniformly from the set excluding the gate that
 * qubit received last.
 */
inline Circuit gen_random_universal(const RandomCircuitSpec &spec) {
    spec.validate();
    const int n = spec.num_qubits();
    Circuit c;
    c.n = n;
    c.depth = spec.depth;
    for (int q = 0; q < n; ++q) {
        c.gates.push_back(gates::H(q));
    }

    Rng rng = make_rng(spec.seed, {0xc1c0});
    std::vector<int> last_single(static_cast<std::size_t>(n), -1);
    std::vector<char> prev_cz(static_cast<std::size_t>(n), 0);
    std::vector<char> cur_cz(static_cast<std::size_t>(n), 0);
    const auto &set = spec.single_qubit_set;

    for (int cycle = 0; cycle < spec.depth; ++cycle) {
        std::fill(cur_cz.begin(), cur_cz.end(), 0);
        const int pattern = kCzPatternOrder[static_cast<std::size_t>(cycle % 8)];
        for (const auto &e : cz_pattern_edges(spec.rows, spec.cols, pattern)) {
            c.gates.push_back(gates::CZ(e[0], e[1]));
            cur_cz[static_cast<std::size_t>(e[0])] = 1;
            cur_cz[static_cast<std::size_t>(e[1])] = 1;
        }
        for (int q = 0; q < n; ++q) {
            const auto uq = static_cast<std::size_t>(q);
            if (!prev_cz[uq] || cur_cz[uq]) {
                continue;
            }
            int choice = 0;
            if (last_single[uq] < 0) {
                const auto t_pos = std::find(set.begin(), set.end(), SingleQubitGate::t);
                choice = t_pos == set.end() ? 0 : static_cast<int>(t_pos - set.begin());
            } else {
                // Uniform over the set minus the previous gate.
                auto pick = static_cast<int>(uniform_below(rng, set.size() - 1));
                if (pick >= last_single[uq]) {
                    ++pick;
                }
                choice = pick;
            }
            last_single[uq] = choice;
            c.gates.push_back(make_single(set[static_cast<std::size_t>(choice)], q));
        }
        prev_cz = cur_cz;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Diagonal circuits and sparse IQP
// ---------------------------------------------------------------------------

struct ZTerm {
    int q = 0;
    double angle = 0.0;
};

struct ZZTerm {
    int i = 0;
    int j = 0;
    double angle = 0.0;
};

/**
 * Diagonal D = Π exp(i θ y_q) Π exp(i θ y_i y_j). The phase function is
 * f(y) = <y|D|y> = exp(i [Σ_z θ y_q + Σ_zz θ y_i y_j]).
 */
struct DiagonalCircuit {
    int n = 0;
    std::vector<ZTerm> z_terms;
    std::vector<ZZTerm> zz_terms;

    void validate() const {
        check_qubit_count(n, 62);
        for (const auto &t : z_terms) {
            if (t.q < 0 || t.q >= n) {
                throw std::out_of_range("z term qubit out of range");
            }
        }
        for (const auto &t : zz_terms) {
            if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n) {
                throw std::out_of_range("zz term qubit out of range");
            }
            if (t.i == t.j) {
                throw std::invalid_argument("zz term needs distinct qubits");
            }
        }
    }

    [[nodiscard]] double phase(Index y) const {
        double acc = 0.0;
        for (const auto &t : z_terms) {
            if ((y >> t.q) & 1U) {
                acc += t.angle;
            }
        }
        for (const auto &t : zz_terms) {
            if (((y >> t.i) & (y >> t.j) & 1U) != 0) {
                acc += t.angle;
            }
        }
        return acc;
    }

    /// f(y); cost O(#terms).
    [[nodiscard]] Complex value(Index y) const { return std::polar(1.0, phase(y)); }
    [[nodiscard]] int num_qubits() const { return n; }
};

inline Complex eval_f(const DiagonalCircuit &d, const BitString &y) {
    if (y.n != d.n) {
        throw std::invalid_argument("eval_f: bit string width differs from circuit");
    }
    return d.value(y.value);
}

/// f tabulated over all 2^n inputs.
struct PhaseTable {
    int n = 0;
    std::vector<Complex> values;

    [[nodiscard]] Complex value(Index y) const { return values[y]; }
    [[nodiscard]] int num_qubits() const { return n; }
};

inline PhaseTable phase_table(const DiagonalCircuit &d) {
    d.validate();
    check_qubit_count(d.n);
    const Index dim = dimension(d.n);
    std::vector<double> phi(dim, 0.0);
    for (const auto &t : d.z_terms) {
        const Index stride = Index{1} << t.q;
        for (Index base = stride; base < dim; base += 2 * stride) {
            for (Index y = base; y < base + stride; ++y) {
                phi[y] += t.angle;
            }
        }
    }
    if (d.n >= 2) {
        for (const auto &t : d.zz_terms) {
            const Index both = (Index{1} << t.i) | (Index{1} << t.j);
            const int lo = std::min(t.i, t.j);
            const int hi = std::max(t.i, t.j);
            for (Index k = 0; k < (dim >> 2); ++k) {
                phi[detail::insert_two_zero_bits(k, lo, hi) | both] += t.angle;
            }
        }
    }
    PhaseTable table{d.n, std::vector<Complex>(dim)};
    for (Index y = 0; y < dim; ++y) {
        table.values[y] = std::polar(1.0, phi[y]);
    }
    return table;
}

/// p(x) = |2^-n Σ_y f(y) (-1)^{x·y}|^2 via one fast transform of f.
inline ProbDist iqp_prob_dist(const DiagonalCircuit &d) {
    PhaseTable table = phase_table(d);
    fwht_inplace(std::span<Complex>(table.values));
    const double scale = 1.0 / static_cast<double>(table.values.size());
    std::vector<double> p(table.values.size());
    for (Index x = 0; x < p.size(); ++x) {
        p[x] = std::norm(table.values[x] * scale);
    }
    return {d.n, std::move(p)};
}

/// H^n D H^n as an explicit gate circuit.
inline Circuit iqp_circuit(const DiagonalCircuit &d) {
    d.validate();
    Circuit c;
    c.n = d.n;
    c.depth = 0;
    for (int q = 0; q < d.n; ++q) {
        c.gates.push_back(gates::H(q));
    }
    for (const auto &t : d.z_terms) {
        c.gates.push_back(gates::Phase(t.q, t.angle));
    }
    for (const auto &t : d.zz_terms) {
        c.gates.push_back(gates::CPhase(t.i, t.j, t.angle));
    }
    for (int q = 0; q < d.n; ++q) {
        c.gates.push_back(gates::H(q));
    }
    return c;
}

enum class PhaseRule {
    /// Every qubit gets a Z rotation by kπ/4, k uniform in 0..7.
    eighth_turns,
    /// Controlled-phase pairs only.
    none,
};

struct SparseIqpSpec {
    int n = 20;
    /// Density: each pair is coupled with probability min(1, γ ln(n) / n).
    double gamma = 1.0;
    std::uint64_t seed = 0;
    PhaseRule phase_rule = PhaseRule::eighth_turns;
    double cz_angle = kPi;

    [[nodiscard]] double edge_probability() const {
        return std::min(1.0, gamma * std::log(static_cast<double>(n)) / static_cast<double>(n));
    }

    void validate() const {
        if (n < 2) {
            throw std::invalid_argument("sparse IQP needs n >= 2");
        }
        check_qubit_count(n, 62);
        if (!(gamma >= 0.0)) {
            throw std::invalid_argument("gamma must be nonnegative");
        }
    }
};

/// Pairs (j, k), j < k, are visited in lexicographic order, then qubits 0..n-1
/// receive their Z terms.
inline DiagonalCircuit gen_sparse_iqp(const SparseIqpSpec &spec) {
    spec.validate();
    DiagonalCircuit d;
    d.n = spec.n;
    Rng rng = make_rng(spec.seed, {0x1a9});
    const double p_edge = spec.edge_probability();
    for (int j = 0; j < spec.n; ++j) {
        for (int k = j + 1; k < spec.n; ++k) {
            if (uniform01(rng) < p_edge) {
                d.zz_terms.push_back({j, k, spec.cz_angle});
            }
        }
    }
    if (spec.phase_rule == PhaseRule::eighth_turns) {
        for (int q = 0; q < spec.n; ++q) {
            const auto k = static_cast<double>(uniform_below(rng, 8));
            d.z_terms.push_back({q, k * kPi / 4.0});
        }
    }
    return d;
}

} // namespace qspec
