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

// Acceptance suite. `acceptance --criterion k` runs one criterion and prints
// a single PASS/FAIL line; with no argument all ten run in order.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <qspec/experiments.hpp>

#include "oracles.hpp"

using namespace qspec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ProbDist random_dist(int n, std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(dimension(n));
    double total = 0.0;
    for (auto &v : p) {
        v = e(rng);
        total += v;
    }
    for (auto &v : p) {
        v /= total;
    }
    return {n, std::move(p)};
}

// 1: transform round trip for n <= 16, quadratic oracle for n <= 10.
Outcome wht_correctness() {
    std::mt19937_64 rng(101);
    double roundtrip = 0.0, oracle_err = 0.0;
    for (int n = 0; n <= 16; ++n) {
        const ProbDist p = random_dist(n, rng);
        const Spectrum s = wht(p);
        const auto back = iwht(s);
        for (Index x = 0; x < p.size(); ++x) {
            roundtrip = std::max(roundtrip, std::abs(back[x] - p[x]));
        }
        if (n <= 10) {
            const auto want = oracle::wht_naive(p.probs);
            for (Index k = 0; k < s.size(); ++k) {
                oracle_err = std::max(oracle_err, std::abs(s[k] - want[k]));
            }
        }
    }
    return {roundtrip < 1e-12 && oracle_err < 1e-12,
            fmt("roundtrip max err %.2e (<1e-12, n<=16); oracle max err %.2e (<1e-12, n<=10)",
                roundtrip, oracle_err)};
}

// 2: convolution sum equals 2^n p̂(s) over 100 random (circuit, s).
Outcome convolution_oracle() {
    std::mt19937_64 rng(202);
    double worst = 0.0, worst_s0 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 11;
        DiagonalCircuit d;
        if (trial % 2 == 0) {
            SparseIqpSpec spec;
            spec.n = n;
            spec.gamma = std::array{1.0, 2.0, 4.0}[static_cast<std::size_t>(trial / 2 % 3)];
            spec.seed = static_cast<std::uint64_t>(trial);
            d = gen_sparse_iqp(spec);
        } else {
            d = oracle::random_diagonal(n, rng);
        }
        const Spectrum spec = wht(iqp_prob_dist(d));
        const Index s = 1 + rng() % (dimension(n) - 1);
        const double got = exact_component_convolution(d, BitString(s, n));
        worst = std::max(worst, std::abs(got - std::ldexp(spec[s], n)));
        worst_s0 = std::max(worst_s0, std::abs(exact_component_convolution(d, BitString(0, n)) - 1.0));
    }
    return {worst < 1e-10 && worst_s0 < 1e-10,
            fmt("max |conv - 2^n p^(s)| = %.2e (<1e-10) over 100 (circuit, s), n in 2..12; "
                "s=0 deviation %.2e",
                worst, worst_s0)};
}

// 3: channel applied to p vs decay applied to its spectrum.
Outcome decay_law() {
    std::mt19937_64 rng(303);
    double spec_err = 0.0, prob_err = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const ProbDist p = n % 2 ? random_dist(n, rng) : sample_haar_probdist(n, static_cast<std::uint64_t>(n));
        for (double eps : {0.0, 0.01, 0.1, 0.5, 1.0}) {
            const ProbDist channel = premeasurement_depolarize(p, eps);
            const Spectrum decayed = decay_spectrum(wht(p), eps);
            const Spectrum lhs = wht(channel);
            const auto back = iwht(decayed);
            for (Index k = 0; k < p.size(); ++k) {
                spec_err = std::max(spec_err, std::abs(lhs[k] - decayed[k]));
                prob_err = std::max(prob_err, std::abs(back[k] - channel[k]));
            }
        }
    }
    return {spec_err < 1e-12 && prob_err < 1e-12,
            fmt("max spectrum err %.2e, max probability err %.2e (<1e-12; n<=12, "
                "eps in {0,0.01,0.1,0.5,1})",
                spec_err, prob_err)};
}

// 4: Porter-Thomas statistics of 50 Haar states at n = 14.
Outcome porter_thomas() {
    const int n = 14;
    const auto ref = PTReference::for_qubits(n);
    std::vector<Spectrum> spectra;
    double h = 0.0, l1 = 0.0, beta = 0.0;
    double h_worst = 0.0, l1_worst = 0.0, beta_worst = 0.0;
    const int states = 50;
    for (int i = 0; i < states; ++i) {
        const ProbDist p = sample_haar_probdist(n, 4000 + static_cast<std::uint64_t>(i));
        const double hi = entropy(p), li = l1_to_uniform(p), bi = collision_beta(p);
        h += hi / states;
        l1 += li / states;
        beta += bi / states;
        h_worst = std::max(h_worst, std::abs(hi - ref.entropy_ref));
        l1_worst = std::max(l1_worst, std::abs(li / ref.l1_to_uniform_ref - 1.0));
        beta_worst = std::max(beta_worst, std::abs(bi / 2.0 - 1.0));
        spectra.push_back(wht(p));
    }
    const TestReport g = fourier_gaussian_test(spectra);
    const Check eh = check_abs("entropy", h, ref.entropy_ref, 0.02);
    const Check el = check_rel("l1", l1, ref.l1_to_uniform_ref, 0.02);
    const Check eb = check_rel("beta", beta, 2.0, 0.05);
    const bool per_state = h_worst <= 0.02 && l1_worst <= 0.02 && beta_worst <= 0.05;
    return {eh.pass && el.pass && eb.pass && per_state && g.pass(),
            fmt("entropy %.5f vs %.5f (+-0.02, worst state %.4f); l1 %.5f vs %.5f (2%%, worst %.2f%%); "
                "N*sum p^2 %.4f vs 2 (5%%, worst %.2f%%); fourier std %.4e vs %.4e (5%%); "
                "|mean| %.1e (<%.1e); KS p %.3f (>0.01)",
                h, ref.entropy_ref, h_worst, l1, ref.l1_to_uniform_ref, 100 * l1_worst, beta,
                100 * beta_worst, g.at("std").value, ref.fourier_std_ref,
                std::abs(g.at("mean").value), g.at("mean").tolerance, g.at("ks_p_value").value)};
}

// 5: Beta law of bipartition sums at n = 8.
Outcome beta_bipartition() {
    const TestReport r = bipartition_sum_test(8, 10000, 505);
    const Check &m = r.at("mean");
    const Check &v = r.at("variance");
    return {m.pass && v.pass,
            fmt("mean(u) %.5f vs 0.5 (3 sigma = %.5f); var(u) %.4e vs %.4e (10%%); KS p %.3f",
                m.value, m.tolerance, v.value, v.reference, r.at("ks_p_value").value)};
}

// 6: Hoeffding-budget estimates of 100 components at n = 12.
Outcome chernoff_estimator() {
    const int n = 12;
    SparseIqpSpec spec;
    spec.n = n;
    spec.gamma = 4.0;
    spec.seed = 606;
    const DiagonalCircuit d = gen_sparse_iqp(spec);
    const PhaseTable table = phase_table(d);
    const auto budget = EstimatorBudget::hoeffding(0.05, 0.01);
    std::mt19937_64 rng(606);
    int failures = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Index s = 1 + rng() % (dimension(n) - 1);
        const double err = std::abs(mc_estimate_component(d, BitString(s, n), budget, 6060) -
                                    exact_component_convolution(table, s));
        worst = std::max(worst, err);
        failures += err > budget.eta;
    }
    return {failures <= 5 && budget.satisfies_hoeffding(),
            fmt("M = %llu; %d of 100 components exceed eta = 0.05 (<=5); worst error %.4f",
                static_cast<unsigned long long>(budget.M), failures, worst)};
}

// 7: reconstruction at constant budget vs exponentially fine budget.
Outcome central_negative_result() {
    AttackConfig cfg;
    const AttackReport coarse = run_attack(cfg);
    AttackConfig fine_cfg = cfg;
    fine_cfg.eta = std::ldexp(1.0, -cfg.n / 2) / 10.0;
    const AttackReport fine = run_attack(fine_cfg);
    const std::size_t nonzero = coarse.components - 1;
    const bool corr_ok = std::abs(coarse.correlation_mc) < 0.1 && nonzero >= 400;
    const bool l1_ok = coarse.l1_mc_reconstruction >= 0.95 * coarse.l1_uniform;
    const bool fine_ok = fine.correlation_mc > 0.99;
    return {corr_ok && l1_ok && fine_ok,
            fmt("eta=0.25 (M=%llu): |corr| %.3f (<0.1) over %zu components; l1(q) %.4f >= "
                "0.95*l1(uniform) %.4f; eta=2^-6/10 (M=%llu): corr %.5f (>0.99)",
                static_cast<unsigned long long>(coarse.samples_per_component),
                std::abs(coarse.correlation_mc), nonzero, coarse.l1_mc_reconstruction,
                0.95 * coarse.l1_uniform,
                static_cast<unsigned long long>(fine.samples_per_component), fine.correlation_mc)};
}

// 8: entropy gap of sparse IQP distributions shrinks with gamma.
Outcome fig1_analogue() {
    const Fig1Config cfg;
    const auto summary = summarize_fig1(run_fig1(cfg));
    bool decreasing = true;
    std::ostringstream gaps;
    for (std::size_t i = 0; i < summary.size(); ++i) {
        gaps << (i ? ", " : "") << "g=" << summary[i].gamma << ":" << summary[i].mean_abs_gap;
        if (i > 0 && !(summary[i].mean_abs_gap < summary[i - 1].mean_abs_gap)) {
            decreasing = false;
        }
    }
    return {decreasing, fmt("n=%d, %d instances per gamma; mean |H - H_PT| strictly decreasing: %s",
                            cfg.n, cfg.instances, gaps.str().c_str())};
}

// 9: rescaled per-weight standard deviations under the caption's noise sweep.
Outcome fig23_analogue() {
    const Fig23Config cfg;
    const Fig23Result sweep = run_fig23(cfg);

    double worst_ideal = 0.0;
    for (int w = 1; w <= sweep.n; ++w) {
        worst_ideal = std::max(worst_ideal, std::abs(sweep.std_at(0.0, w).std_all - 1.0));
    }
    double worst_noisy = 0.0;
    for (int w = 1; w <= sweep.n; ++w) {
        worst_noisy = std::max(worst_noisy, sweep.std_at(0.05, w).std_all);
    }
    double worst_ratio = 0.0;
    for (double eps : cfg.eps) {
        if (eps <= 0.0 || eps > 0.01) {
            continue;
        }
        const double f = sweep.mean_no_error_fraction(eps);
        for (int w = 1; w <= sweep.n; ++w) {
            const double ratio = sweep.std_at(eps, w).std_all / sweep.std_at(0.0, w).std_all;
            worst_ratio = std::max(worst_ratio, std::abs(ratio / f - 1.0));
        }
    }
    return {worst_ideal <= 0.10 && worst_noisy < 0.2 && worst_ratio <= 0.15,
            fmt("eps=0 worst |std-1| %.3f (<=0.10); eps=0.05 worst std %.3f (<0.2); "
                "eps<=0.01 worst |ratio/no_error-1| %.3f (<=0.15); %d instances, K=%zu",
                worst_ideal, worst_noisy, worst_ratio, cfg.instances, cfg.K)};
}

// 10: cross-entropy fidelity against the trajectory no-error fraction.
Outcome xeb_fidelity() {
    const XebConfig cfg;
    const XebReport r = run_xeb(cfg);
    const double tol = std::max(0.05, 3.0 * r.xeb.std_err);
    const double gap = std::abs(r.xeb.alpha_hat - r.no_error_fraction);
    const double binom_gap = std::abs(r.no_error_fraction - r.predicted.product);
    return {gap <= tol && binom_gap <= 3.0 * r.no_error_sigma,
            fmt("alpha_hat %.4f vs no-error %.4f (tol %.4f); no-error vs prod(1-eps) %.4f: "
                "%.2f sigma (<=3); exp(-sum eps) %.4f; k=%zu",
                r.xeb.alpha_hat, r.no_error_fraction, tol, r.predicted.product,
                binom_gap / r.no_error_sigma, r.predicted.exponential, r.xeb.k)};
}

struct Criterion {
    const char *title;
    double time_limit_s;
    std::function<Outcome()> run;
};

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {"WHT correctness", 10, wht_correctness},
        {"convolution-theorem oracle", 30, convolution_oracle},
        {"noise-decay law", 10, decay_law},
        {"Porter-Thomas suite", 120, porter_thomas},
        {"Beta bipartition law", 60, beta_bipartition},
        {"Chernoff estimator", 120, chernoff_estimator},
        {"central negative result", 300, central_negative_result},
        {"IQP entropy sweep", 900, fig1_analogue},
        {"noisy spectrum sweep", 1800, fig23_analogue},
        {"XEB fidelity", 1200, xeb_fidelity},
    };
    return all;
}

bool run_one(int id) {
    const Criterion &c = criteria().at(static_cast<std::size_t>(id - 1));
    const auto start = Clock::now();
    Outcome out;
    try {
        out = c.run();
    } catch (const std::exception &e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = out.pass && in_time;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " (" << c.title
              << "): " << out.detail << fmt("; runtime %.1f s (<%.0f s)", secs, c.time_limit_s)
              << std::endl;
    return pass;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qspec acceptance suite"};
    int id = 0;
    app.add_option("--criterion", id, "Criterion number (1-10); omit to run all")
        ->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    if (id != 0) {
        return run_one(id) ? 0 : 1;
    }
    bool all = true;
    for (int k = 1; k <= 10; ++k) {
        all = run_one(k) && all;
    }
    return all ? 0 : 1;
}
