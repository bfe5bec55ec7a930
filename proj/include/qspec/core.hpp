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
 * Basic vocabulary shared by every module: bit-string indices, the
 * probability-distribution and spectrum containers, and numeric constants.
 *
 * Bit convention used everywhere: index x encodes qubit 0 as the least
 * significant bit.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qspec {

using Index = std::uint64_t;

/// Largest supported register. 2^26 complex amplitudes is about 1 GiB.
inline constexpr int kMaxQubits = 26;

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

inline int weight(Index s) { return std::popcount(s); }

/// Parity of x·s over GF(2); true when odd.
inline bool odd_parity(Index x, Index s) { return (std::popcount(x & s) & 1) != 0; }

inline Index dimension(int n) { return Index{1} << n; }

inline void check_qubit_count(int n, int max_qubits = kMaxQubits) {
    if (n < 0 || n > max_qubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) +
                                    " outside [0, " + std::to_string(max_qubits) + "]");
    }
}

inline void check_rate(double eps, const char *what = "rate") {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                    std::to_string(eps));
    }
}

/// An n-bit string together with its width.
struct BitString {
    Index value = 0;
    int n = 0;

    BitString() = default;
    BitString(Index v, int width) : value(v), n(width) {
        check_qubit_count(n, 63);
        if (value >= dimension(n)) {
            throw std::out_of_range("bit string " + std::to_string(value) +
                                    " does not fit in " + std::to_string(n) + " bits");
        }
    }

    [[nodiscard]] int weight() const { return qspec::weight(value); }
    [[nodiscard]] bool bit(int q) const { return ((value >> q) & 1U) != 0; }

    /// Most significant qubit first, so qubit 0 is the rightmost character.
    [[nodiscard]] std::string str() const {
        std::string out(static_cast<std::size_t>(n), '0');
        for (int q = 0; q < n; ++q) {
            if (bit(q)) {
                out[static_cast<std::size_t>(n - 1 - q)] = '1';
            }
        }
        return out;
    }

    friend bool operator==(const BitString &, const BitString &) = default;
};

inline std::string bits_string(Index value, int n) { return BitString(value, n).str(); }

/// Output distribution {p(x)} over n-bit strings.
struct ProbDist {
    int n = 0;
    std::vector<double> probs;

    ProbDist() = default;
    ProbDist(int num_qubits, std::vector<double> p) : n(num_qubits), probs(std::move(p)) {
        check_qubit_count(n);
        if (probs.size() != dimension(n)) {
            throw std::invalid_argument("distribution length does not match 2^n");
        }
    }

    [[nodiscard]] Index size() const { return probs.size(); }
    double operator[](Index x) const { return probs[x]; }

    [[nodiscard]] double total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

    /// Nonnegative entries summing to one within `tol`.
    [[nodiscard]] bool is_valid(double tol = 1e-9) const {
        for (double p : probs) {
            if (!(p >= 0.0)) {
                return false;
            }
        }
        return std::abs(total() - 1.0) <= tol;
    }

    void validate(double tol = 1e-9) const {
        if (!is_valid(tol)) {
            throw std::invalid_argument("not a probability distribution (negative entry or "
                                        "total differs from 1)");
        }
    }

    static ProbDist uniform(int n) {
        check_qubit_count(n);
        return {n, std::vector<double>(dimension(n), 1.0 / static_cast<double>(dimension(n)))};
    }

    static ProbDist point_mass(int n, Index x) {
        check_qubit_count(n);
        std::vector<double> p(dimension(n), 0.0);
        p.at(x) = 1.0;
        return {n, std::move(p)};
    }
};

/// Walsh-Fourier coefficients p̂(s) = 2^-n Σ_x p(x) (-1)^{x·s}.
struct Spectrum {
    int n = 0;
    std::vector<double> coeffs;

    [[nodiscard]] Index size() const { return coeffs.size(); }
    double operator[](Index s) const { return coeffs[s]; }
};

inline double l1_distance(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("l1_distance: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::abs(a[i] - b[i]);
    }
    return acc;
}

} // namespace qspec
