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
 * Experiment drivers behind the command-line tool: entropy histograms of
 * sparse IQP circuits, noisy Fourier spectra of random circuits, the
 * low-weight reconstruction attack and cross-entropy benchmarking.
 *
 * Each driver is a pure function of its config. Tasks are seeded from
 * (seed, task indices) so outputs do not depend on the thread count.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "core.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "noise.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "state_vector.hpp"
#include "stats.hpp"

namespace qspec {

inline constexpr int kCsvSchemaVersion = 1;

/// Two-qubit error rates swept in the spectra experiment.
inline const std::vector<double> kCaptionEpsSweep{0.0,   0.0001, 0.0002, 0.0005, 0.001,
                                                  0.002, 0.005,  0.01,   0.02,   0.05};

// ---------------------------------------------------------------------------
// Entropy of sparse IQP output distributions vs density
// ---------------------------------------------------------------------------

struct Fig1Config {
    int n = 20;
    std::vector<double> gammas{0.5, 1.0, 2.0, 4.0};
    int instances = 100;
    std::uint64_t seed = 1;
    PhaseRule phase_rule = PhaseRule::eighth_turns;
    unsigned threads = 0;
};

struct Fig1Row {
    double gamma = 0.0;
    std::uint64_t seed = 0;
    double entropy = 0.0;
    double pt_entropy_ref = 0.0;
    std::size_t zz_terms = 0;
};

struct Fig1Summary {
    double gamma = 0.0;
    double mean_entropy = 0.0;
    double mean_abs_gap = 0.0;
};

inline std::vector<Fig1Row> run_fig1(const Fig1Config &cfg) {
    if (cfg.instances < 1 || cfg.gammas.empty()) {
        throw std::invalid_argument("fig1: need at least one gamma and one instance");
    }
    const double ref = PTReference::for_qubits(cfg.n).entropy_ref;
    const std::size_t per = static_cast<std::size_t>(cfg.instances);
    std::vector<Fig1Row> rows(cfg.gammas.size() * per);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t task) {
        const std::size_t gi = task / per;
        const std::size_t inst = task % per;
        SparseIqpSpec spec;
        spec.n = cfg.n;
        spec.gamma = cfg.gammas[gi];
        spec.seed = derive_seed(cfg.seed, {gi, inst});
        spec.phase_rule = cfg.phase_rule;
        const DiagonalCircuit d = gen_sparse_iqp(spec);
        rows[task] = {spec.gamma, spec.seed, entropy(iqp_prob_dist(d)), ref, d.zz_terms.size()};
    });
    return rows;
}

inline std::vector<Fig1Summary> summarize_fig1(const std::vector<Fig1Row> &rows) {
    std::vector<Fig1Summary> out;
    for (const auto &r : rows) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Fig1Summary &s) { return s.gamma == r.gamma; });
        if (it == out.end()) {
            out.push_back({r.gamma, 0.0, 0.0});
        }
    }
    for (auto &s : out) {
        std::size_t count = 0;
        for (const auto &r : rows) {
            if (r.gamma == s.gamma) {
                s.mean_entropy += r.entropy;
                s.mean_abs_gap += std::abs(r.entropy - r.pt_entropy_ref);
                ++count;
            }
        }
        s.mean_entropy /= static_cast<double>(count);
        s.mean_abs_gap /= static_cast<double>(count);
    }
    return out;
}

inline void write_fig1_csv(std::ostream &os, const std::vector<Fig1Row> &rows) {
    os << "# qspec fig1 schema " << kCsvSchemaVersion << '\n';
    os << "gamma,seed,entropy,pt_entropy_ref,zz_terms\n";
    os.precision(17);
    for (const auto &r : rows) {
        os << r.gamma << ',' << r.seed << ',' << r.entropy << ',' << r.pt_entropy_ref << ','
           << r.zz_terms << '\n';
    }
}

// ---------------------------------------------------------------------------
// Noisy Fourier spectra of random universal circuits
// ---------------------------------------------------------------------------

struct Fig23Config {
    int rows = 4;
    int cols = 3;
    int depth = 40;
    std::vector<double> eps = kCaptionEpsSweep;
    /// Single-qubit rate as a fraction of the two-qubit rate.
    double single_ratio = 0.1;
    int instances = 10;
    int components_per_weight = 10;
    std::size_t K = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct Fig23Row {
    double eps = 0.0;
    int instance = 0;
    int weight = 0;
    Index s = 0;
    double coeff = 0.0;
    double rescaled = 0.0;
};

/// Per (eps, weight) spread of rescaled coefficients.
struct Fig23StdRow {
    double eps = 0.0;
    int weight = 0;
    /// Over every mask of this weight in every instance.
    double std_all = 0.0;
    std::size_t pool_all = 0;
    /// Over the emitted sample of masks only.
    double std_sampled = 0.0;
    std::size_t pool_sampled = 0;
};

struct Fig23Instance {
    double eps = 0.0;
    int instance = 0;
    double no_error_fraction = 1.0;
    double alpha_product = 1.0;
    std::size_t gate_count = 0;
};

struct Fig23Result {
    int n = 0;
    std::vector<Fig23Row> rows;
    std::vector<Fig23StdRow> stds;
    std::vector<Fig23Instance> instances;
    std::vector<std::string> warnings;

    [[nodiscard]] const Fig23StdRow &std_at(double eps, int weight) const {
        for (const auto &r : stds) {
            if (r.eps == eps && r.weight == weight) {
                return r;
            }
        }
        throw std::out_of_range("no std row for that (eps, weight)");
    }

    [[nodiscard]] double mean_no_error_fraction(double eps) const {
        double acc = 0.0;
        std::size_t count = 0;
        for (const auto &i : instances) {
            if (i.eps == eps) {
                acc += i.no_error_fraction;
                ++count;
            }
        }
        return count == 0 ? 0.0 : acc / static_cast<double>(count);
    }
};

/// Uniformly random masks of weight w (all of them if there are at most `count`), sorted.
inline std::vector<Index> random_masks_of_weight(int n, int w, int count, Rng &rng) {
    std::vector<Index> all;
    for (Index s : low_weight_masks(n, w)) {
        if (weight(s) == w) {
            all.push_back(s);
        }
    }
    const auto take = std::min<std::size_t>(all.size(), static_cast<std::size_t>(count));
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(take);
    std::sort(all.begin(), all.end());
    return all;
}

inline RandomCircuitSpec fig23_circuit_spec(const Fig23Config &cfg, int instance) {
    RandomCircuitSpec spec;
    spec.rows = cfg.rows;
    spec.cols = cfg.cols;
    spec.depth = cfg.depth;
    spec.seed = derive_seed(cfg.seed, {0xc1, static_cast<std::uint64_t>(instance)});
    return spec;
}

inline Fig23Result run_fig23(const Fig23Config &cfg) {
    if (cfg.instances < 1 || cfg.eps.empty() || cfg.K == 0) {
        throw std::invalid_argument("fig2/3: need instances, eps values and K >= 1");
    }
    const int n = cfg.rows * cfg.cols;
    check_qubit_count(n);
    const double rescale = std::pow(2.0, 1.5 * n);

    Fig23Result result;
    result.n = n;
    if (std::sqrt(2.0 / static_cast<double>(cfg.K)) > 0.1) {
        result.warnings.push_back("K = " + std::to_string(cfg.K) +
                                  " leaves trajectory noise above 10% of the spectral scale");
    }

    const auto n_inst = static_cast<std::size_t>(cfg.instances);
    std::vector<Circuit> circuits(n_inst);
    std::vector<std::vector<std::vector<Index>>> masks(n_inst);
    for (std::size_t i = 0; i < n_inst; ++i) {
        circuits[i] = gen_random_universal(fig23_circuit_spec(cfg, static_cast<int>(i)));
        Rng rng = make_rng(cfg.seed, {0xf2, i});
        masks[i].resize(static_cast<std::size_t>(n) + 1);
        for (int w = 1; w <= n; ++w) {
            masks[i][static_cast<std::size_t>(w)] =
                random_masks_of_weight(n, w, cfg.components_per_weight, rng);
        }
    }

    struct Slot {
        Fig23Instance info;
        std::vector<Fig23Row> rows;
        std::vector<double> sum, sum_sq;
    };
    const std::size_t tasks = cfg.eps.size() * n_inst;
    std::vector<Slot> slots(tasks);
    const unsigned outer = cfg.threads == 0 ? default_threads() : cfg.threads;
    parallel_for(tasks, outer, [&](std::size_t task) {
        const std::size_t ei = task / n_inst;
        const std::size_t inst = task % n_inst;
        const double eps = cfg.eps[ei];
        const NoiseModel nm{eps * cfg.single_ratio, eps, 0.0};
        TrajectoryOptions opts;
        opts.threads = 1;
        const Circuit &c = circuits[inst];
        const TrajectoryResult traj =
            run_trajectories(c, nm, cfg.K, derive_seed(cfg.seed, {0x7c, ei, inst}), opts);
        const Spectrum spec = wht(traj.avg_dist);

        Slot &slot = slots[task];
        slot.info = {eps, static_cast<int>(inst), traj.no_error_fraction,
                     alpha_pred(c, nm).product, c.gate_count()};
        slot.sum.assign(static_cast<std::size_t>(n) + 1, 0.0);
        slot.sum_sq.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (Index s = 1; s < spec.size(); ++s) {
            const double v = spec[s] * rescale;
            const auto w = static_cast<std::size_t>(weight(s));
            slot.sum[w] += v;
            slot.sum_sq[w] += v * v;
        }
        for (int w = 1; w <= n; ++w) {
            for (Index s : masks[inst][static_cast<std::size_t>(w)]) {
                slot.rows.push_back({eps, static_cast<int>(inst), w, s, spec[s], spec[s] * rescale});
            }
        }
    });

    for (std::size_t ei = 0; ei < cfg.eps.size(); ++ei) {
        for (int w = 1; w <= n; ++w) {
            double sum = 0.0, sum_sq = 0.0, ssum = 0.0, ssum_sq = 0.0;
            std::size_t spool = 0;
            const auto uw = static_cast<std::size_t>(w);
            for (std::size_t inst = 0; inst < n_inst; ++inst) {
                const Slot &slot = slots[ei * n_inst + inst];
                sum += slot.sum[uw];
                sum_sq += slot.sum_sq[uw];
                for (const auto &r : slot.rows) {
                    if (r.weight == w) {
                        ssum += r.rescaled;
                        ssum_sq += r.rescaled * r.rescaled;
                        ++spool;
                    }
                }
            }
            double binom = 1.0;
            for (int k = 0; k < w; ++k) {
                binom = binom * (n - k) / (k + 1);
            }
            const std::size_t pool = static_cast<std::size_t>(std::llround(binom)) * n_inst;
            auto sd = [](double s, double ss, std::size_t k) {
                if (k < 2) {
                    return 0.0;
                }
                const double kk = static_cast<double>(k);
                return std::sqrt(std::max(0.0, (ss - s * s / kk) / (kk - 1.0)));
            };
            result.stds.push_back({cfg.eps[ei], w, sd(sum, sum_sq, pool), pool,
                                   sd(ssum, ssum_sq, spool), spool});
        }
    }
    for (auto &slot : slots) {
        result.instances.push_back(slot.info);
        result.rows.insert(result.rows.end(), slot.rows.begin(), slot.rows.end());
    }
    return result;
}

inline void write_fig2_csv(std::ostream &os, const Fig23Result &r) {
    os << "# qspec fig2 schema " << kCsvSchemaVersion << '\n';
    os << "eps,instance,weight,s,s_bits,coeff,rescaled\n";
    os.precision(17);
    for (const auto &row : r.rows) {
        os << row.eps << ',' << row.instance << ',' << row.weight << ',' << row.s << ','
           << bits_string(row.s, r.n) << ',' << row.coeff << ',' << row.rescaled << '\n';
    }
}

inline void write_fig3_csv(std::ostream &os, const Fig23Result &r) {
    os << "# qspec fig3 schema " << kCsvSchemaVersion << '\n';
    os << "eps,weight,std_all,pool_all,std_sampled,pool_sampled,mean_no_error_fraction\n";
    os.precision(17);
    for (const auto &row : r.stds) {
        os << row.eps << ',' << row.weight << ',' << row.std_all << ',' << row.pool_all << ','
           << row.std_sampled << ',' << row.pool_sampled << ','
           << r.mean_no_error_fraction(row.eps) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Low-weight reconstruction attack
// ---------------------------------------------------------------------------

struct AttackConfig {
    int n = 12;
    double gamma = 4.0;
    std::uint64_t circuit_seed = 1;
    double eps = 0.1;
    int l = 4;
    double eta = 0.25;
    double fail_prob = 0.01;
    /// Target distance reported alongside choose_l.
    double delta = 0.1;
    std::uint64_t seed = 1;
    /// Evaluate f from a precomputed table instead of term by term.
    bool tabulate_f = true;
    unsigned threads = 0;
};

struct AttackReport {
    int n = 0;
    int l = 0;
    double eps = 0.0;
    double eta = 0.0;
    std::size_t components = 0;
    std::uint64_t samples_per_component = 0;
    std::uint64_t total_samples = 0;
    double beta_witness = 0.0;
    int suggested_l = 0;
    double l1_exact_reconstruction = 0.0;
    double l1_mc_reconstruction = 0.0;
    double l1_mc_clipped = 0.0;
    double l1_uniform = 0.0;
    double correlation_mc = 0.0;
    double correlation_exact = 0.0;
    /// ℓ1(q_l, noisy) with exact components for l = 0..cfg.l.
    std::vector<double> l1_exact_by_l;
};

inline AttackReport run_attack(const AttackConfig &cfg) {
    SparseIqpSpec spec;
    spec.n = cfg.n;
    spec.gamma = cfg.gamma;
    spec.seed = cfg.circuit_seed;
    const DiagonalCircuit d = gen_sparse_iqp(spec);
    check_qubit_count(cfg.n);
    const PhaseTable table = phase_table(d);
    const ProbDist ideal = iqp_prob_dist(d);
    const ProbDist noisy = premeasurement_depolarize(ideal, cfg.eps);
    const Spectrum noisy_spec = wht(noisy);

    AttackReport rep;
    rep.n = cfg.n;
    rep.l = cfg.l;
    rep.eps = cfg.eps;
    rep.eta = cfg.eta;
    rep.beta_witness = collision_beta(ideal);
    if (cfg.eps > 0.0 && cfg.eps < 1.0 && rep.beta_witness >= cfg.delta) {
        rep.suggested_l = choose_l(rep.beta_witness, cfg.delta, cfg.eps, cfg.n);
    } else {
        rep.suggested_l = cfg.n;
    }
    rep.l1_uniform = l1_distance(ProbDist::uniform(cfg.n).probs, noisy.probs);

    ReconstructionConfig exact_cfg;
    exact_cfg.eps = cfg.eps;
    exact_cfg.threads = cfg.threads;
    exact_cfg.beta = std::max(1.0, rep.beta_witness);
    exact_cfg.delta = cfg.delta;
    for (int l = 0; l <= cfg.l; ++l) {
        exact_cfg.l = l;
        const Reconstruction r = low_weight_reconstruct(table, exact_cfg, cfg.seed);
        rep.l1_exact_by_l.push_back(l1_distance(r.signed_q, noisy.probs));
        if (l == cfg.l) {
            rep.l1_exact_reconstruction = rep.l1_exact_by_l.back();
            rep.correlation_exact = spectral_correlation(r.coeffs, noisy_spec, {1, cfg.l});
        }
    }

    ReconstructionConfig mc_cfg = exact_cfg;
    mc_cfg.l = cfg.l;
    mc_cfg.budget = EstimatorBudget::hoeffding(cfg.eta, cfg.fail_prob);
    const Reconstruction mc = cfg.tabulate_f ? low_weight_reconstruct(table, mc_cfg, cfg.seed)
                                             : low_weight_reconstruct(d, mc_cfg, cfg.seed);
    rep.components = mc.masks.size();
    rep.samples_per_component = mc.samples_per_component;
    rep.total_samples = mc.samples_per_component * mc.masks.size();
    rep.l1_mc_reconstruction = l1_distance(mc.signed_q, noisy.probs);
    rep.l1_mc_clipped = l1_distance(mc.clipped.probs, noisy.probs);
    rep.correlation_mc = spectral_correlation(mc.coeffs, noisy_spec, {1, cfg.l});
    return rep;
}

inline json to_json(const AttackReport &r) {
    return {{"n", r.n},
            {"l", r.l},
            {"eps", r.eps},
            {"eta", r.eta},
            {"components", r.components},
            {"samples_per_component", r.samples_per_component},
            {"total_samples", r.total_samples},
            {"beta_witness", r.beta_witness},
            {"suggested_l", r.suggested_l},
            {"l1_exact_reconstruction", r.l1_exact_reconstruction},
            {"l1_mc_reconstruction", r.l1_mc_reconstruction},
            {"l1_mc_clipped", r.l1_mc_clipped},
            {"l1_uniform", r.l1_uniform},
            {"correlation_mc", r.correlation_mc},
            {"correlation_exact", r.correlation_exact},
            {"l1_exact_by_l", r.l1_exact_by_l}};
}

// ---------------------------------------------------------------------------
// Cross-entropy benchmarking
// ---------------------------------------------------------------------------

enum class XebSource { noisy, ideal, uniform };

struct XebConfig {
    int rows = 4;
    int cols = 3;
    int depth = 40;
    std::uint64_t circuit_seed = 1;
    NoiseModel noise{0.0005, 0.005, 0.0};
    std::size_t K = 2000;
    std::size_t samples = 100000;
    XebSource source = XebSource::noisy;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct XebReport {
    XebResult xeb;
    double no_error_fraction = 1.0;
    /// Binomial standard error of the no-error fraction.
    double no_error_sigma = 0.0;
    AlphaPrediction predicted;
    std::size_t gate_count = 0;
    double ideal_entropy = 0.0;
    double pt_entropy_ref = 0.0;
};

inline XebReport run_xeb(const XebConfig &cfg) {
    RandomCircuitSpec spec;
    spec.rows = cfg.rows;
    spec.cols = cfg.cols;
    spec.depth = cfg.depth;
    spec.seed = cfg.circuit_seed;
    const Circuit c = gen_random_universal(spec);
    const ProbDist ideal = probabilities(run(c));

    XebReport rep;
    rep.gate_count = c.gate_count();
    rep.predicted = alpha_pred(c, cfg.noise);
    rep.ideal_entropy = entropy(ideal);
    rep.pt_entropy_ref = PTReference::for_qubits(c.n).entropy_ref;

    ProbDist source;
    if (cfg.source == XebSource::uniform) {
        source = ProbDist::uniform(c.n);
    } else if (cfg.source == XebSource::ideal) {
        source = ideal;
    } else {
        TrajectoryOptions opts;
        opts.threads = cfg.threads;
        const TrajectoryResult traj =
            run_trajectories(c, cfg.noise, cfg.K, derive_seed(cfg.seed, {0x7c}), opts);
        rep.no_error_fraction = traj.no_error_fraction;
        const double k = static_cast<double>(cfg.K);
        rep.no_error_sigma = std::sqrt(rep.predicted.product * (1.0 - rep.predicted.product) / k);
        source = cfg.noise.eps_meas > 0.0 ? premeasurement_depolarize(traj.avg_dist, cfg.noise.eps_meas)
                                          : traj.avg_dist;
    }
    const auto draws = sample(source, cfg.samples, derive_seed(cfg.seed, {0x5a}));
    rep.xeb = xeb(draws, ideal);
    return rep;
}

inline json to_json(const XebReport &r) {
    return {{"alpha_hat", r.xeb.alpha_hat},
            {"std_err", r.xeb.std_err},
            {"cross_entropy", r.xeb.cross_entropy},
            {"k", r.xeb.k},
            {"no_error_fraction", r.no_error_fraction},
            {"no_error_sigma", r.no_error_sigma},
            {"alpha_pred_product", r.predicted.product},
            {"alpha_pred_exponential", r.predicted.exponential},
            {"gate_count", r.gate_count},
            {"ideal_entropy", r.ideal_entropy},
            {"pt_entropy_ref", r.pt_entropy_ref}};
}

} // namespace qspec
