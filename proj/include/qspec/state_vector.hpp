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
 * Dense state-vector simulation: gates, circuits, output probabilities and
 * bit-string sampling.
 */

#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "random.hpp"

namespace qspec {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

enum class GateKind { single_qubit, controlled_phase, two_qubit };

/**
 * @brief A one- or two-qubit gate with its matrix stored explicitly.
 *
 * Single-qubit matrices are 2x2 row-major. Two-qubit matrices are 4x4
 * row-major over the local index (bit of qubits()[0]) | (bit of qubits()[1]) << 1.
 * A controlled phase keeps its angle and also stores diag(1, 1, 1, e^{iθ}).
 */
class Gate {
  public:
    static Gate single(int target, const std::array<Complex, 4> &m, std::string name = "u") {
        Gate g(GateKind::single_qubit, {target, -1}, {m.begin(), m.end()}, std::move(name));
        g.check_unitary();
        return g;
    }

    static Gate two_qubit(int q0, int q1, const std::array<Complex, 16> &m,
                          std::string name = "u2") {
        Gate g(GateKind::two_qubit, {q0, q1}, {m.begin(), m.end()}, std::move(name));
        g.check_distinct();
        g.check_unitary();
        return g;
    }

    static Gate controlled_phase(int q0, int q1, double theta, std::string name = "cphase") {
        std::vector<Complex> m(16, Complex{});
        m[0] = m[5] = m[10] = 1.0;
        m[15] = std::polar(1.0, theta);
        Gate g(GateKind::controlled_phase, {q0, q1}, std::move(m), std::move(name));
        g.angle_ = theta;
        g.check_distinct();
        return g;
    }

    [[nodiscard]] GateKind kind() const { return kind_; }
    [[nodiscard]] int arity() const { return kind_ == GateKind::single_qubit ? 1 : 2; }
    [[nodiscard]] int qubit(int i) const { return qubits_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] std::span<const int> qubits() const {
        return {qubits_.data(), static_cast<std::size_t>(arity())};
    }
    [[nodiscard]] const std::vector<Complex> &matrix() const { return matrix_; }
    [[nodiscard]] double angle() const { return angle_; }
    [[nodiscard]] const std::string &name() const { return name_; }

    void validate(int n) const {
        for (int q : qubits()) {
            if (q < 0 || q >= n) {
                throw std::out_of_range("gate '" + name_ + "' acts on qubit " +
                                        std::to_string(q) + " of a " + std::to_string(n) +
                                        "-qubit register");
            }
        }
    }

    /// True when the 2x2 matrix has no off-diagonal entries.
    [[nodiscard]] bool is_diagonal_single() const {
        return kind_ == GateKind::single_qubit && matrix_[1] == Complex{} && matrix_[2] == Complex{};
    }

  private:
    Gate(GateKind kind, std::array<int, 2> qubits, std::vector<Complex> m, std::string name)
        : kind_(kind), qubits_(qubits), matrix_(std::move(m)), name_(std::move(name)) {}

    void check_distinct() const {
        if (qubits_[0] == qubits_[1]) {
            throw std::invalid_argument("two-qubit gate '" + name_ + "' needs distinct qubits");
        }
    }

    void check_unitary() const {
        const std::size_t d = kind_ == GateKind::single_qubit ? 2 : 4;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                Complex acc{};
                for (std::size_t k = 0; k < d; ++k) {
                    acc += matrix_[r * d + k] * std::conj(matrix_[c * d + k]);
                }
                if (std::abs(acc - Complex(r == c ? 1.0 : 0.0)) > kUnitaryTol) {
                    throw std::invalid_argument("gate '" + name_ + "' is not unitary");
                }
            }
        }
    }

    GateKind kind_;
    std::array<int, 2> qubits_;
    std::vector<Complex> matrix_;
    double angle_ = 0.0;
    std::string name_;
};

namespace gates {

inline const Complex kI{0.0, 1.0};

inline Gate H(int q) {
    const double h = 1.0 / std::sqrt(2.0);
    return Gate::single(q, {h, h, h, -h}, "h");
}
inline Gate X(int q) { return Gate::single(q, {0.0, 1.0, 1.0, 0.0}, "x"); }
inline Gate Y(int q) { return Gate::single(q, {0.0, -kI, kI, 0.0}, "y"); }
inline Gate Z(int q) { return Gate::single(q, {1.0, 0.0, 0.0, -1.0}, "z"); }
/// X^{1/2}
inline Gate SqrtX(int q) {
    const Complex a{0.5, 0.5};
    const Complex b{0.5, -0.5};
    return Gate::single(q, {a, b, b, a}, "sqrt_x");
}
/// Y^{1/2}
inline Gate SqrtY(int q) {
    const Complex a{0.5, 0.5};
    return Gate::single(q, {a, -a, a, a}, "sqrt_y");
}
inline Gate T(int q) { return Gate::single(q, {1.0, 0.0, 0.0, std::polar(1.0, kPi / 4)}, "t"); }
/// diag(1, e^{iθ})
inline Gate Phase(int q, double theta) {
    return Gate::single(q, {1.0, 0.0, 0.0, std::polar(1.0, theta)}, "phase");
}
inline Gate CZ(int a, int b) { return Gate::controlled_phase(a, b, kPi, "cz"); }
inline Gate CPhase(int a, int b, double theta) { return Gate::controlled_phase(a, b, theta); }

/// Pauli by code 0..3 = I, X, Y, Z.
inline Gate pauli(int code, int q) {
    switch (code) {
    case 0:
        return Gate::single(q, {1.0, 0.0, 0.0, 1.0}, "i");
    case 1:
        return X(q);
    case 2:
        return Y(q);
    case 3:
        return Z(q);
    default:
        throw std::invalid_argument("pauli code must be 0..3");
    }
}

} // namespace gates

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;
    /// Clock cycles, informational.
    int depth = 0;

    [[nodiscard]] std::size_t gate_count() const { return gates.size(); }

    void validate() const {
        check_qubit_count(n);
        for (const auto &g : gates) {
            g.validate(n);
        }
    }
};

namespace detail {

/// Spread the bits of k so that zero bits sit at positions lo < hi.
inline Index insert_two_zero_bits(Index k, int lo, int hi) {
    const Index lo_mask = (Index{1} << lo) - 1;
    k = ((k & ~lo_mask) << 1) | (k & lo_mask);
    const Index hi_mask = (Index{1} << hi) - 1;
    return ((k & ~hi_mask) << 1) | (k & hi_mask);
}

inline void apply_single(std::span<Complex> amps, int q, const std::vector<Complex> &m,
                         bool diagonal) {
    const Index stride = Index{1} << q;
    const Index dim = amps.size();
    if (diagonal) {
        const Complex d0 = m[0];
        const Complex d1 = m[3];
        const bool d0_one = d0 == Complex(1.0);
        for (Index base = 0; base < dim; base += 2 * stride) {
            for (Index i = base; i < base + stride; ++i) {
                if (!d0_one) {
                    amps[i] *= d0;
                }
                amps[i + stride] *= d1;
            }
        }
        return;
    }
    const Complex m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
    for (Index base = 0; base < dim; base += 2 * stride) {
        for (Index i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

inline void apply_controlled_phase(std::span<Complex> amps, int a, int b, Complex phase) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    const Index both = (Index{1} << a) | (Index{1} << b);
    const Index quarter = amps.size() >> 2;
    for (Index k = 0; k < quarter; ++k) {
        amps[insert_two_zero_bits(k, lo, hi) | both] *= phase;
    }
}

inline void apply_two_qubit(std::span<Complex> amps, int q0, int q1,
                            const std::vector<Complex> &m) {
    const int lo = std::min(q0, q1);
    const int hi = std::max(q0, q1);
    const Index b0 = Index{1} << q0;
    const Index b1 = Index{1} << q1;
    const Index quarter = amps.size() >> 2;
    for (Index k = 0; k < quarter; ++k) {
        const Index base = insert_two_zero_bits(k, lo, hi);
        const std::array<Index, 4> idx{base, base | b0, base | b1, base | b0 | b1};
        std::array<Complex, 4> in{amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            amps[idx[r]] = m[4 * r] * in[0] + m[4 * r + 1] * in[1] + m[4 * r + 2] * in[2] +
                           m[4 * r + 3] * in[3];
        }
    }
}

} // namespace detail

/// Pure state of n qubits as 2^n complex amplitudes.
class StateVector {
  public:
    /// |0...0>
    explicit StateVector(int n) : n_(n) {
        check_qubit_count(n_);
        amps_.assign(dimension(n_), Complex{});
        amps_[0] = 1.0;
    }

    StateVector(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
        check_qubit_count(n_);
        if (amps_.size() != dimension(n_)) {
            throw std::invalid_argument("amplitude vector length does not match 2^n");
        }
        if (std::abs(norm_squared() - 1.0) > kNormTol) {
            throw std::invalid_argument("state is not normalized");
        }
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] Index size() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }
    Complex operator[](Index x) const { return amps_[x]; }

    [[nodiscard]] double norm_squared() const {
        double acc = 0.0;
        for (const auto &a : amps_) {
            acc += std::norm(a);
        }
        return acc;
    }

    /// In-place U_g|ψ>.
    void apply(const Gate &g) {
        g.validate(n_);
        switch (g.kind()) {
        case GateKind::single_qubit:
            detail::apply_single(amps_, g.qubit(0), g.matrix(), g.is_diagonal_single());
            break;
        case GateKind::controlled_phase:
            detail::apply_controlled_phase(amps_, g.qubit(0), g.qubit(1), g.matrix()[15]);
            break;
        case GateKind::two_qubit:
            detail::apply_two_qubit(amps_, g.qubit(0), g.qubit(1), g.matrix());
            break;
        }
    }

  private:
    int n_;
    std::vector<Complex> amps_;
};

inline StateVector apply_gate(StateVector state, const Gate &g) {
    state.apply(g);
    return state;
}

/// (Π gates in order)|0...0>
inline StateVector run(const Circuit &c) {
    c.validate();
    StateVector state(c.n);
    for (const auto &g : c.gates) {
        state.apply(g);
    }
    return state;
}

inline ProbDist probabilities(const StateVector &state) {
    std::vector<double> p(state.size());
    const auto amps = state.amplitudes();
    for (Index x = 0; x < p.size(); ++x) {
        p[x] = std::norm(amps[x]);
    }
    return {state.num_qubits(), std::move(p)};
}

/// CDF-inversion sampler; O(log N) per draw.
class Sampler {
  public:
    explicit Sampler(const ProbDist &dist) : n_(dist.n), cdf_(dist.size()) {
        double acc = 0.0;
        for (Index x = 0; x < dist.size(); ++x) {
            if (dist[x] < 0.0) {
                throw std::invalid_argument("sampler: negative probability");
            }
            acc += dist[x];
            cdf_[x] = acc;
        }
        if (!(acc > 0.0)) {
            throw std::invalid_argument("sampler: distribution has zero mass");
        }
    }

    Index draw(Rng &rng) const {
        const double u = uniform01(rng) * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) {
            // u rounded onto the total; fall back to the last nonzero entry.
            auto last = std::adjacent_find(cdf_.rbegin(), cdf_.rend(),
                                           [](double a, double b) { return a != b; });
            return last == cdf_.rend() ? 0 : static_cast<Index>(cdf_.rend() - last - 1);
        }
        return static_cast<Index>(it - cdf_.begin());
    }

    [[nodiscard]] int num_qubits() const { return n_; }

  private:
    int n_;
    std::vector<double> cdf_;
};

/// k i.i.d. draws from dist; the sequence depends only on the seed.
inline std::vector<BitString> sample(const ProbDist &dist, std::size_t k, std::uint64_t seed) {
    if (k == 0) {
        throw std::invalid_argument("sample: k must be at least 1");
    }
    const Sampler sampler(dist);
    Rng rng = make_rng(seed, {0x5a4d});
    std::vector<BitString> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        out.emplace_back(sampler.draw(rng), dist.n);
    }
    return out;
}

} // namespace qspec
