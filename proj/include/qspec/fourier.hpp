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
 * Walsh-Fourier analysis of output distributions.
 *
 * Conventions: p̂(s) = 2^-n Σ_x p(x) (-1)^{x·s} and p(x) = Σ_s p̂(s) (-1)^{x·s}.
 * For an IQP circuit the quantity estimated by sampling is 2^n p̂(s), which
 * equals 2^-n Σ_y Re[f*(y) f(y ⊕ s)] and is 1 at s = 0.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "core.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "walsh.hpp"

namespace qspec {

inline Spectrum wht(const ProbDist &dist) {
    Spectrum out{dist.n, dist.probs};
    fwht_inplace(std::span<double>(out.coeffs));
    const double scale = 1.0 / static_cast<double>(out.coeffs.size());
    for (auto &c : out.coeffs) {
        c *= scale;
    }
    return out;
}

/// Inverse transform. The result may have negative entries if the spectrum
/// was modified.
inline std::vector<double> iwht(const Spectrum &spec) {
    std::vector<double> out = spec.coeffs;
    fwht_inplace(std::span<double>(out));
    return out;
}

/// p̂(s) <- (1 - ε)^{|s|} p̂(s)
inline Spectrum decay_spectrum(const Spectrum &spec, double eps) {
    check_rate(eps, "eps");
    std::vector<double> factor(static_cast<std::size_t>(spec.n) + 1);
    for (std::size_t w = 0; w < factor.size(); ++w) {
        factor[w] = std::pow(1.0 - eps, static_cast<double>(w));
    }
    Spectrum out = spec;
    for (Index s = 0; s < out.size(); ++s) {
        out.coeffs[s] *= factor[static_cast<std::size_t>(weight(s))];
    }
    return out;
}

/// Anything that can evaluate f(y) for an n-bit y.
template <class T>
concept PhaseOracle = requires(const T &f, Index y) {
    { f.value(y) } -> std::convertible_to<Complex>;
    { f.num_qubits() } -> std::convertible_to<int>;
};

/// Exact 2^n p̂(s) = 2^-n Σ_y Re[f*(y) f(y ⊕ s)] from a tabulated f.
inline double exact_component_convolution(const PhaseTable &f, Index s) {
    const Index dim = f.values.size();
    if (s >= dim) {
        throw std::out_of_range("mask does not fit the register");
    }
    double acc = 0.0;
    for (Index y = 0; y < dim; ++y) {
        const Complex a = f.values[y];
        const Complex b = f.values[y ^ s];
        acc += a.real() * b.real() + a.imag() * b.imag();
    }
    return acc / static_cast<double>(dim);
}

inline double exact_component_convolution(const DiagonalCircuit &d, const BitString &s) {
    if (s.n != d.n) {
        throw std::invalid_argument("mask width differs from circuit");
    }
    return exact_component_convolution(phase_table(d), s.value);
}

/**
 * Sample budget for estimating 2^n p̂(s) to additive error η with failure
 * probability at most fail_prob. Each sample lies in [-1, 1], so Hoeffding
 * asks for M >= (2 / η²) ln(2 / fail_prob).
 */
struct EstimatorBudget {
    double eta = 0.05;
    double fail_prob = 0.01;
    std::uint64_t M = 0;

    static std::uint64_t hoeffding_samples(double eta, double fail_prob) {
        if (!(eta > 0.0)) {
            throw std::invalid_argument("eta must be positive");
        }
        if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
            throw std::invalid_argument("fail_prob must lie in (0, 1)");
        }
        return static_cast<std::uint64_t>(
            std::ceil(2.0 / (eta * eta) * std::log(2.0 / fail_prob)));
    }

    static EstimatorBudget hoeffding(double eta, double fail_prob) {
        return {eta, fail_prob, hoeffding_samples(eta, fail_prob)};
    }

    [[nodiscard]] bool satisfies_hoeffding() const {
        return eta > 0.0 && fail_prob > 0.0 && fail_prob < 1.0 &&
               M >= hoeffding_samples(eta, fail_prob);
    }
};

/// (1/M) Σ_j Re[f*(y_j) f(y_j ⊕ s)] with y_j uniform.
template <PhaseOracle F>
double mc_estimate_component(const F &f, Index s, const EstimatorBudget &budget,
                             std::uint64_t seed) {
    if (!budget.satisfies_hoeffding()) {
        throw std::invalid_argument("estimator budget below the Hoeffding sample count");
    }
    const int n = f.num_qubits();
    if (s >= dimension(n)) {
        throw std::out_of_range("mask does not fit the register");
    }
    Rng rng = make_rng(seed, {0xe57, s});
    const Index mask = dimension(n) - 1;
    double acc = 0.0;
    for (std::uint64_t j = 0; j < budget.M; ++j) {
        const Index y = rng() & mask;
        const Complex a = f.value(y);
        const Complex b = f.value(y ^ s);
        acc += a.real() * b.real() + a.imag() * b.imag();
    }
    return acc / static_cast<double>(budget.M);
}

inline double mc_estimate_component(const DiagonalCircuit &d, const BitString &s,
                                    const EstimatorBudget &budget, std::uint64_t seed) {
    if (s.n != d.n) {
        throw std::invalid_argument("mask width differs from circuit");
    }
    return mc_estimate_component<DiagonalCircuit>(d, s.value, budget, seed);
}

/// All masks with weight <= l, sorted by (weight, value).
inline std::vector<Index> low_weight_masks(int n, int l, std::size_t limit = std::size_t{1} << 24) {
    if (l < 0 || l > n) {
        throw std::invalid_argument("weight cutoff l must lie in [0, n]");
    }
    double count = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= l; ++k) {
        count += binom;
        binom = binom * (n - k) / (k + 1);
    }
    if (count > static_cast<double>(limit)) {
        throw std::length_error("low-weight component enumeration too large: " +
                                std::to_string(static_cast<long double>(count)) + " masks");
    }
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w <= l; ++w) {
        if (w == 0) {
            out.push_back(0);
            continue;
        }
        // Gosper's hack walks weight-w masks in increasing order.
        Index s = (Index{1} << w) - 1;
        const Index end = dimension(n);
        while (s < end) {
            out.push_back(s);
            const Index c = s & (~s + 1);
            const Index r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return out;
}

struct ReconstructionConfig {
    int l = 0;
    /// Monte-Carlo budget per component; nullopt means exact components.
    std::optional<EstimatorBudget> budget;
    double beta = 2.0;
    double delta = 0.1;
    double eps = 0.0;
    unsigned threads = 0;

    void validate(int n) const {
        if (l < 0 || l > n) {
            throw std::invalid_argument("reconstruction: l must lie in [0, n]");
        }
        if (!(beta >= 1.0)) {
            throw std::invalid_argument("reconstruction: beta must be >= 1");
        }
        check_rate(eps, "eps");
        if (budget && !budget->satisfies_hoeffding()) {
            throw std::invalid_argument("reconstruction: budget below the Hoeffding count");
        }
    }
};

struct Reconstruction {
    int n = 0;
    /// Masks in (weight, value) order.
    std::vector<Index> masks;
    /// Estimated (or exact) 2^n p̂(s) for each mask, before noise weighting.
    std::vector<double> estimates;
    /// ĉ(s) = (1-ε)^{|s|} 2^-n estimate, the coefficients actually used.
    Spectrum coeffs;
    /// q(x) = Σ_{|s|<=l} ĉ(s) (-1)^{x·s}; may be negative.
    std::vector<double> signed_q;
    /// signed_q clipped at zero and renormalized, for sampling.
    ProbDist clipped;
    std::uint64_t samples_per_component = 0;
};

inline ProbDist clip_and_normalize(int n, const std::vector<double> &q) {
    std::vector<double> p(q.size());
    double total = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        p[i] = std::max(0.0, q[i]);
        total += p[i];
    }
    if (!(total > 0.0)) {
        return ProbDist::uniform(n);
    }
    for (auto &v : p) {
        v /= total;
    }
    return {n, std::move(p)};
}

/**
 * @brief Low-weight Fourier reconstruction of the noisy IQP distribution.
 *
 * Estimates 2^n p̂(s) for every |s| <= l (exactly, or by sampling f),
 * damps each by (1-ε)^{|s|} and inverts the truncated spectrum. Components
 * are estimated independently with per-mask streams.
 */
template <PhaseOracle F>
Reconstruction low_weight_reconstruct(const F &f, const ReconstructionConfig &cfg,
                                      std::uint64_t seed) {
    const int n = f.num_qubits();
    check_qubit_count(n);
    cfg.validate(n);

    Reconstruction out;
    out.n = n;
    out.masks = low_weight_masks(n, cfg.l);
    out.estimates.assign(out.masks.size(), 0.0);

    std::optional<PhaseTable> table;
    if (!cfg.budget) {
        if constexpr (std::same_as<F, PhaseTable>) {
            table = f;
        } else {
            PhaseTable t{n, std::vector<Complex>(dimension(n))};
            for (Index y = 0; y < dimension(n); ++y) {
                t.values[y] = f.value(y);
            }
            table = std::move(t);
        }
    }

    parallel_for(out.masks.size(), cfg.threads, [&](std::size_t i) {
        const Index s = out.masks[i];
        out.estimates[i] = cfg.budget ? mc_estimate_component(f, s, *cfg.budget, seed)
                                      : exact_component_convolution(*table, s);
    });
    out.samples_per_component = cfg.budget ? cfg.budget->M : 0;

    const double inv_dim = 1.0 / static_cast<double>(dimension(n));
    out.coeffs = Spectrum{n, std::vector<double>(dimension(n), 0.0)};
    for (std::size_t i = 0; i < out.masks.size(); ++i) {
        const Index s = out.masks[i];
        out.coeffs.coeffs[s] =
            std::pow(1.0 - cfg.eps, static_cast<double>(weight(s))) * inv_dim * out.estimates[i];
    }
    out.signed_q = iwht(out.coeffs);
    out.clipped = clip_and_normalize(n, out.signed_q);
    return out;
}

/**
 * Weight cutoff sufficient for ℓ1 distance δ: min(n, ceil(ln(β/δ) / ε)),
 * with the constant inside the O(·) taken as 1.
 */
inline int choose_l(double beta, double delta, double eps, int n) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("choose_l: delta must be positive");
    }
    if (!(beta >= delta)) {
        throw std::invalid_argument("choose_l: beta must be >= delta");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("choose_l: eps must lie in (0, 1)");
    }
    const double raw = std::log(beta / delta) / eps;
    // Guard against ln(1) coming out as a tiny positive number.
    const double l = raw < 1e-12 ? 0.0 : std::ceil(raw - 1e-12);
    return static_cast<int>(std::min<double>(n, l));
}

struct WeightRange {
    int min_weight = 1;
    int max_weight = std::numeric_limits<int>::max();
};

/// Pearson correlation of a[s] and b[s] over s != 0 with weight in range.
inline double spectral_correlation(const Spectrum &a, const Spectrum &b, WeightRange range = {}) {
    if (a.n != b.n || a.size() != b.size()) {
        throw std::invalid_argument("spectral_correlation: spectra differ in size");
    }
    double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
    std::size_t count = 0;
    for (Index s = 1; s < a.size(); ++s) {
        const int w = weight(s);
        if (w < range.min_weight || w > range.max_weight) {
            continue;
        }
        const double x = a[s];
        const double y = b[s];
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
        sab += x * y;
        ++count;
    }
    if (count == 0) {
        throw std::invalid_argument("spectral_correlation: empty weight range");
    }
    const double k = static_cast<double>(count);
    const double cov = sab - sa * sb / k;
    const double va = saa - sa * sa / k;
    const double vb = sbb - sb * sb / k;
    if (va <= 0.0 || vb <= 0.0) {
        return 0.0;
    }
    return cov / std::sqrt(va * vb);
}

/// CSV with columns s_bits, weight, coeff, rescaled_coeff = coeff / 2^{-3n/2}.
inline void write_spectrum_csv(std::ostream &os, const Spectrum &spec) {
    const double rescale = std::pow(2.0, 1.5 * spec.n);
    os << "s_bits,weight,coeff,rescaled_coeff\n";
    os.precision(17);
    for (Index s = 0; s < spec.size(); ++s) {
        os << bits_string(s, spec.n) << ',' << weight(s) << ',' << spec[s] << ','
           << spec[s] * rescale << '\n';
    }
}

} // namespace qspec
