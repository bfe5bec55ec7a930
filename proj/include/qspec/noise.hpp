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
 * Noise channels: per-gate depolarizing noise sampled as Pauli
 * trajectories, exact depolarizing right before measurement, and the
 * global-depolarizing mixture α|ψ><ψ| + (1-α) I/N.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "state_vector.hpp"

namespace qspec {

struct NoiseModel {
    /// Error rate after each single-qubit gate.
    double eps1 = 0.0;
    /// Error rate after each two-qubit gate.
    double eps2 = 0.0;
    /// Per-qubit depolarizing rate applied just before measurement.
    double eps_meas = 0.0;

    void validate() const {
        check_rate(eps1, "eps1");
        check_rate(eps2, "eps2");
        check_rate(eps_meas, "eps_meas");
    }

    [[nodiscard]] double gate_rate(const Gate &g) const { return g.arity() == 1 ? eps1 : eps2; }
};

struct TrajectoryResult {
    ProbDist avg_dist;
    double no_error_fraction = 1.0;
    std::size_t no_error_count = 0;
    std::size_t K = 0;
    std::uint64_t seed = 0;
};

/**
 * Per-qubit map p0 <- (1 - ε/2) p0 + (ε/2) p1 (and symmetrically) applied
 * to every qubit. In the Walsh basis this multiplies p̂(s) by (1-ε)^{|s|}.
 */
inline ProbDist premeasurement_depolarize(const ProbDist &dist, double eps) {
    check_rate(eps, "eps");
    ProbDist out = dist;
    const double keep = 1.0 - 0.5 * eps;
    const double move = 0.5 * eps;
    const Index dim = out.size();
    for (int q = 0; q < out.n; ++q) {
        const Index stride = Index{1} << q;
        for (Index base = 0; base < dim; base += 2 * stride) {
            for (Index x = base; x < base + stride; ++x) {
                const double p0 = out.probs[x];
                const double p1 = out.probs[x + stride];
                out.probs[x] = keep * p0 + move * p1;
                out.probs[x + stride] = move * p0 + keep * p1;
            }
        }
    }
    return out;
}

/// α p(x) + (1 - α)/N
inline ProbDist ansatz_dist(const ProbDist &ideal, double alpha) {
    check_rate(alpha, "alpha");
    ProbDist out = ideal;
    const double floor = (1.0 - alpha) / static_cast<double>(ideal.size());
    for (auto &p : out.probs) {
        p = alpha * p + floor;
    }
    return out;
}

struct AlphaPrediction {
    /// Π_g (1 - ε_g): exact no-error probability.
    double product = 1.0;
    /// exp(-Σ_g ε_g)
    double exponential = 1.0;
    double total_rate = 0.0;
};

inline AlphaPrediction alpha_pred(const Circuit &c, const NoiseModel &nm) {
    nm.validate();
    AlphaPrediction out;
    double log_product = 0.0;
    for (const auto &g : c.gates) {
        const double eps = nm.gate_rate(g);
        out.total_rate += eps;
        log_product += std::log1p(-eps);
    }
    out.product = std::exp(log_product);
    out.exponential = std::exp(-out.total_rate);
    return out;
}

namespace detail {

/// code 0..3 = I, X, Y, Z
inline void apply_pauli(std::span<Complex> amps, int q, int code) {
    if (code == 0) {
        return;
    }
    const Index stride = Index{1} << q;
    const Index dim = amps.size();
    const Complex i_unit{0.0, 1.0};
    for (Index base = 0; base < dim; base += 2 * stride) {
        for (Index x = base; x < base + stride; ++x) {
            const Complex a0 = amps[x];
            const Complex a1 = amps[x + stride];
            switch (code) {
            case 1:
                amps[x] = a1;
                amps[x + stride] = a0;
                break;
            case 2:
                amps[x] = -i_unit * a1;
                amps[x + stride] = i_unit * a0;
                break;
            default:
                amps[x + stride] = -a1;
                break;
            }
        }
    }
}

struct PauliInsertion {
    std::size_t gate = 0;
    /// 1..3 for one-qubit gates; 1..15 for two-qubit gates, low two bits on
    /// qubit(0) and high two bits on qubit(1).
    int code = 0;
};

inline std::vector<PauliInsertion> sample_insertions(const Circuit &c,
                                                     const std::vector<double> &rates,
                                                     std::uint64_t seed, std::size_t trajectory) {
    Rng rng = make_rng(seed, {0x7a1, trajectory});
    std::vector<PauliInsertion> out;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        if (rates[i] > 0.0 && uniform01(rng) < rates[i]) {
            const std::uint64_t options = c.gates[i].arity() == 1 ? 3 : 15;
            out.push_back({i, 1 + static_cast<int>(uniform_below(rng, options))});
        }
    }
    return out;
}

} // namespace detail

struct TrajectoryOptions {
    unsigned threads = 0;
    /// Memory allowed for cached noiseless prefix states.
    std::size_t checkpoint_bytes = std::size_t{256} << 20;
};

/**
 * @brief Monte-Carlo average over Pauli-error trajectories.
 *
 * After every gate a uniformly random non-identity Pauli on the gate's
 * qubits is inserted with probability ε_gate. Trajectory t draws from its
 * own stream seeded by (seed, t); trajectories are reduced in fixed chunks
 * and the chunks summed in order, so the result is bit-identical for any
 * thread count.
 *
 * A trajectory is identical to the noiseless run up to its first error, so
 * noiseless prefix states are cached and each trajectory resumes from the
 * nearest cached prefix. Error-free trajectories contribute the ideal
 * distribution without re-simulation.
 */
inline TrajectoryResult run_trajectories(const Circuit &c, const NoiseModel &nm, std::size_t K,
                                         std::uint64_t seed, const TrajectoryOptions &opts = {}) {
    c.validate();
    nm.validate();
    if (K == 0) {
        throw std::invalid_argument("run_trajectories: K must be at least 1");
    }
    const std::size_t m = c.gates.size();
    const Index dim = dimension(c.n);

    std::vector<double> rates(m);
    for (std::size_t i = 0; i < m; ++i) {
        rates[i] = nm.gate_rate(c.gates[i]);
    }

    // checkpoints[k] holds the state after the first k * stride gates.
    const std::size_t state_bytes = dim * sizeof(Complex);
    const std::size_t max_ckpts = std::max<std::size_t>(1, opts.checkpoint_bytes / state_bytes);
    const std::size_t stride = std::max<std::size_t>(1, (m + max_ckpts) / max_ckpts);
    std::vector<StateVector> checkpoints;
    StateVector ideal(c.n);
    for (std::size_t i = 0; i < m; ++i) {
        if (i % stride == 0) {
            checkpoints.push_back(ideal);
        }
        ideal.apply(c.gates[i]);
    }
    const ProbDist ideal_dist = probabilities(ideal);

    const std::size_t max_chunks = std::max<std::size_t>(1, (std::size_t{1} << 24) / dim);
    const std::size_t chunks = std::min<std::size_t>({K, 64, max_chunks});
    std::vector<std::vector<double>> partial(chunks);
    std::vector<std::size_t> clean(chunks, 0);

    parallel_for(chunks, opts.threads, [&](std::size_t chunk) {
        const std::size_t begin = K * chunk / chunks;
        const std::size_t end = K * (chunk + 1) / chunks;
        auto &acc = partial[chunk];
        for (std::size_t t = begin; t < end; ++t) {
            const auto errors = detail::sample_insertions(c, rates, seed, t);
            if (errors.empty()) {
                ++clean[chunk];
                continue;
            }
            if (acc.empty()) {
                acc.assign(dim, 0.0);
            }
            const std::size_t start_ckpt = errors.front().gate / stride;
            StateVector state = checkpoints[start_ckpt];
            auto amps = state.amplitudes();
            std::size_t next_error = 0;
            for (std::size_t i = start_ckpt * stride; i < m; ++i) {
                const Gate &g = c.gates[i];
                state.apply(g);
                while (next_error < errors.size() && errors[next_error].gate == i) {
                    const int code = errors[next_error].code;
                    detail::apply_pauli(amps, g.qubit(0), code & 3);
                    if (g.arity() == 2) {
                        detail::apply_pauli(amps, g.qubit(1), code >> 2);
                    }
                    ++next_error;
                }
            }
            for (Index x = 0; x < dim; ++x) {
                acc[x] += std::norm(amps[x]);
            }
        }
    });

    std::size_t no_error = 0;
    std::vector<double> noisy_sum(dim, 0.0);
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        no_error += clean[chunk];
        if (!partial[chunk].empty()) {
            for (Index x = 0; x < dim; ++x) {
                noisy_sum[x] += partial[chunk][x];
            }
        }
    }

    const double inv_k = 1.0 / static_cast<double>(K);
    const double clean_weight = static_cast<double>(no_error) * inv_k;
    TrajectoryResult result;
    result.avg_dist = ideal_dist;
    for (Index x = 0; x < dim; ++x) {
        result.avg_dist.probs[x] = clean_weight * ideal_dist.probs[x] + noisy_sum[x] * inv_k;
    }
    result.no_error_count = no_error;
    result.no_error_fraction = clean_weight;
    result.K = K;
    result.seed = seed;
    return result;
}

} // namespace qspec
