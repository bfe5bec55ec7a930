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
 * Porter-Thomas statistics, cross-entropy benchmarking and distribution
 * tests for Walsh-Fourier components of Haar-random output distributions.
 *
 * All entropies are in nats.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "core.hpp"
#include "random.hpp"
#include "state_vector.hpp"

namespace qspec {

/// Reference values for Porter-Thomas distributed probabilities on N = 2^n outcomes.
struct PTReference {
    int n = 0;
    double euler_gamma = kEulerGamma;
    /// ln N + γ_E - 1
    double entropy_ref = 0.0;
    /// Σ_x |p(x) - 1/N| → 2/e
    double l1_to_uniform_ref = 2.0 / std::exp(1.0);
    /// E[p^2] summed: Σ_x p^2 → 2/N
    double second_moment_ref = 0.0;
    /// Standard deviation of p̂(s), s != 0: N^{-3/2}
    double fourier_std_ref = 0.0;

    static PTReference for_qubits(int n) {
        PTReference r;
        r.n = n;
        const double dim = static_cast<double>(dimension(n));
        r.entropy_ref = n * std::log(2.0) + kEulerGamma - 1.0;
        r.second_moment_ref = 2.0 / dim;
        r.fourier_std_ref = std::pow(dim, -1.5);
        return r;
    }
};

/// Haar-random state from i.i.d. complex Gaussian amplitudes, normalized.
inline StateVector sample_haar_state(int n, std::uint64_t seed) {
    check_qubit_count(n);
    Rng rng = make_rng(seed, {0x4aa2});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(dimension(n));
    double norm = 0.0;
    for (auto &a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = {re, im};
        norm += re * re + im * im;
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : amps) {
        a *= scale;
    }
    return {n, std::move(amps)};
}

inline ProbDist sample_haar_probdist(int n, std::uint64_t seed) {
    ProbDist p = probabilities(sample_haar_state(n, seed));
    // Renormalize the probabilities themselves so they sum to one to rounding.
    const double total = p.total();
    for (auto &v : p.probs) {
        v /= total;
    }
    return p;
}

/// -Σ p ln p with 0 ln 0 = 0.
inline double entropy(const ProbDist &dist) {
    double h = 0.0;
    for (double p : dist.probs) {
        if (p > 0.0) {
            h -= p * std::log(p);
        }
    }
    return h;
}

/// N Σ p(x)^2, the smallest β with Σ p^2 <= β 2^-n.
inline double collision_beta(const ProbDist &dist) {
    double acc = 0.0;
    for (double p : dist.probs) {
        acc += p * p;
    }
    return acc * static_cast<double>(dist.size());
}

inline double l1_to_uniform(const ProbDist &dist) {
    const double u = 1.0 / static_cast<double>(dist.size());
    double acc = 0.0;
    for (double p : dist.probs) {
        acc += std::abs(p - u);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Cross-entropy benchmarking
// ---------------------------------------------------------------------------

struct XebResult {
    /// (1/k) Σ_j ln(1 / p_ideal(x_j)), nats.
    double cross_entropy = 0.0;
    /// ln N + γ_E - cross_entropy
    double alpha_hat = 0.0;
    std::size_t k = 0;
    double std_err = 0.0;
};

class ZeroProbabilitySample : public std::domain_error {
  public:
    ZeroProbabilitySample(Index x, std::size_t j)
        : std::domain_error("xeb: sample " + std::to_string(j) + " (bit string " +
                            std::to_string(x) + ") has zero ideal probability"),
          bitstring(x), sample_index(j) {}
    Index bitstring;
    std::size_t sample_index;
};

inline XebResult xeb(std::span<const BitString> samples, const ProbDist &ideal) {
    if (samples.empty()) {
        throw std::invalid_argument("xeb: need at least one sample");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const auto &s = samples[j];
        if (s.n != ideal.n) {
            throw std::invalid_argument("xeb: sample width differs from distribution");
        }
        const double p = ideal[s.value];
        if (!(p > 0.0)) {
            throw ZeroProbabilitySample(s.value, j);
        }
        const double v = -std::log(p);
        sum += v;
        sum_sq += v * v;
    }
    XebResult r;
    r.k = samples.size();
    const double k = static_cast<double>(r.k);
    r.cross_entropy = sum / k;
    r.alpha_hat = ideal.n * std::log(2.0) + kEulerGamma - r.cross_entropy;
    if (r.k > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / k) / (k - 1.0));
        r.std_err = std::sqrt(var / k);
    } else {
        r.std_err = std::numeric_limits<double>::infinity();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Test reports
// ---------------------------------------------------------------------------

/// One statistic compared against its reference.
struct Check {
    std::string statistic;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct TestReport {
    std::string name;
    std::vector<Check> checks;
    /// Set when the input cannot be Porter-Thomas (e.g. zero spread).
    bool degenerate = false;

    [[nodiscard]] bool pass() const {
        return !degenerate && std::all_of(checks.begin(), checks.end(),
                                          [](const Check &c) { return c.pass; });
    }

    [[nodiscard]] const Check &at(const std::string &statistic) const {
        for (const auto &c : checks) {
            if (c.statistic == statistic) {
                return c;
            }
        }
        throw std::out_of_range("no check named " + statistic);
    }
};

/// |value - reference| <= tolerance
inline Check check_abs(std::string statistic, double value, double reference, double tolerance) {
    return {std::move(statistic), value, reference, tolerance,
            std::abs(value - reference) <= tolerance};
}

/// |value - reference| <= rel * |reference|
inline Check check_rel(std::string statistic, double value, double reference, double rel) {
    return {std::move(statistic), value, reference, rel,
            std::abs(value - reference) <= rel * std::abs(reference)};
}

/// value > threshold (a p-value floor).
inline Check check_above(std::string statistic, double value, double threshold) {
    return {std::move(statistic), value, threshold, 0.0, value > threshold};
}

// ---------------------------------------------------------------------------
// Goodness of fit
// ---------------------------------------------------------------------------

inline double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

/// Asymptotic Kolmogorov survival function with the small-sample correction
/// λ = (√n + 0.12 + 0.11/√n) D.
inline double ks_p_value(double d, std::size_t count) {
    const double sn = std::sqrt(static_cast<double>(count));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 0.2) {
        return 1.0;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Sup distance between the empirical CDF of `sample` and `cdf`. Sorts in place.
inline double ks_statistic(std::vector<double> &sample, const std::function<double(double)> &cdf) {
    std::sort(sample.begin(), sample.end());
    const double k = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / k, static_cast<double>(i + 1) / k - f});
    }
    return d;
}

/// Survival function of χ² with `dof` degrees of freedom.
inline double chi2_p_value(double statistic, double dof) {
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

/**
 * Pools p̂(s), s != 0, from all spectra and compares them with a normal law
 * of mean 0 and standard deviation `expected_std` (N^{-3/2} by default).
 * Checks: |mean| < 3 sd/√pool, std within 5 % (`std_rel_tol`), KS p > 0.01.
 */
template <class SpectrumRange>
TestReport fourier_gaussian_test(const SpectrumRange &spectra,
                                 std::optional<double> expected_std = std::nullopt,
                                 double std_rel_tol = 0.05, std::size_t min_pool = 10000) {
    std::vector<double> pool;
    int n = -1;
    for (const auto &spec : spectra) {
        if (n >= 0 && spec.n != n) {
            throw std::invalid_argument("fourier_gaussian_test: mixed register sizes");
        }
        n = spec.n;
        pool.insert(pool.end(), spec.coeffs.begin() + 1, spec.coeffs.end());
    }
    if (pool.size() < min_pool) {
        throw std::invalid_argument("fourier_gaussian_test: pool of " +
                                    std::to_string(pool.size()) + " components is below " +
                                    std::to_string(min_pool));
    }
    const double sd_ref = expected_std.value_or(PTReference::for_qubits(n).fourier_std_ref);

    double sum = 0.0;
    for (double v : pool) {
        sum += v;
    }
    const double k = static_cast<double>(pool.size());
    const double mean = sum / k;
    double ss = 0.0;
    for (double v : pool) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (k - 1.0));

    TestReport report;
    report.name = "fourier_gaussian";
    report.checks.push_back(check_abs("mean", mean, 0.0, 3.0 * sd_ref / std::sqrt(k)));
    report.checks.push_back(check_rel("std", sd, sd_ref, std_rel_tol));
    if (sd <= 0.0) {
        report.degenerate = true;
        report.checks.push_back({"ks_p_value", 0.0, 0.01, 0.0, false});
        return report;
    }
    const double d = ks_statistic(pool, [&](double x) { return normal_cdf(x, 0.0, sd_ref); });
    report.checks.push_back({"ks_statistic", d, 0.0, 0.0, true});
    report.checks.push_back(check_above("ks_p_value", ks_p_value(d, pool.size()), 0.01));
    return report;
}

/// u = Σ_{x: x·s odd} p(x)
inline double bipartition_sum(const ProbDist &dist, Index s) {
    double u = 0.0;
    for (Index x = 0; x < dist.size(); ++x) {
        if (odd_parity(x, s)) {
            u += dist[x];
        }
    }
    return u;
}

/// Draws of u over fresh Haar states and uniformly random masks s != 0.
inline std::vector<double> bipartition_samples(int n, std::size_t trials, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("bipartition: n must be positive");
    }
    std::vector<double> u(trials);
    const Index dim = dimension(n);
    for (std::size_t t = 0; t < trials; ++t) {
        const ProbDist p = sample_haar_probdist(n, derive_seed(seed, {0xb1, t}));
        Rng rng = make_rng(seed, {0xb2, t});
        const Index s = 1 + uniform_below(rng, dim - 1);
        u[t] = bipartition_sum(p, s);
    }
    return u;
}

/**
 * Checks u = Σ_{x∈S} p(x) against the symmetric Beta(N/2, N/2) law of a
 * Haar state: mean within 3σ of 1/2, variance within 10 % of 1/(4(N+1)),
 * KS p > 0.01.
 */
inline TestReport bipartition_sum_test(int n, std::size_t trials, std::uint64_t seed) {
    if (n < 4) {
        throw std::invalid_argument("bipartition_sum_test: n must be at least 4");
    }
    if (trials < 2) {
        throw std::invalid_argument("bipartition_sum_test: need at least two trials");
    }
    std::vector<double> u = bipartition_samples(n, trials, seed);
    const double dim = static_cast<double>(dimension(n));
    const double var_ref = 1.0 / (4.0 * (dim + 1.0));
    const double k = static_cast<double>(trials);

    double sum = 0.0;
    for (double v : u) {
        sum += v;
    }
    const double mean = sum / k;
    double ss = 0.0;
    for (double v : u) {
        ss += (v - mean) * (v - mean);
    }
    const double var = ss / (k - 1.0);

    TestReport report;
    report.name = "bipartition_sum";
    report.checks.push_back(check_abs("mean", mean, 0.5, 3.0 * std::sqrt(var_ref / k)));
    report.checks.push_back(check_rel("variance", var, var_ref, 0.10));
    const double a = dim / 2.0;
    const double d = ks_statistic(u, [a](double x) {
        return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : boost::math::ibeta(a, a, x));
    });
    report.checks.push_back({"ks_statistic", d, 0.0, 0.0, true});
    report.checks.push_back(check_above("ks_p_value", ks_p_value(d, trials), 0.01));
    return report;
}

} // namespace qspec
