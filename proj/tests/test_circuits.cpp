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

#include <gtest/gtest.h>

#include <set>

#include <qspec/circuits.hpp>
#include <qspec/stats.hpp>

#include "oracles.hpp"

using namespace qspec;

TEST(random_universal, starts_with_hadamards_and_has_the_edge) {
    RandomCircuitSpec spec;
    spec.rows = 1;
    spec.cols = 2;
    spec.depth = 2;
    const Circuit c = gen_random_universal(spec);
    ASSERT_GE(c.gates.size(), 3u);
    EXPECT_EQ(c.gates[0].name(), "h");
    EXPECT_EQ(c.gates[1].name(), "h");
    bool has_cz = false;
    for (const auto &g : c.gates) {
        if (g.name() == "cz") {
            has_cz = true;
            EXPECT_EQ(std::min(g.qubit(0), g.qubit(1)), 0);
            EXPECT_EQ(std::max(g.qubit(0), g.qubit(1)), 1);
        }
    }
    EXPECT_TRUE(has_cz);
}

TEST(random_universal, patterns_partition_the_lattice_edges) {
    for (auto [rows, cols] : {std::pair{4, 3}, std::pair{5, 4}, std::pair{7, 7}}) {
        std::set<std::pair<int, int>> seen;
        for (int pattern = 0; pattern < 8; ++pattern) {
            std::set<int> touched;
            for (const auto &e : cz_pattern_edges(rows, cols, pattern)) {
                EXPECT_TRUE(touched.insert(e[0]).second);
                EXPECT_TRUE(touched.insert(e[1]).second);
                EXPECT_TRUE(seen.insert({e[0], e[1]}).second);
            }
        }
        const std::size_t edges = static_cast<std::size_t>(rows * (cols - 1) + (rows - 1) * cols);
        EXPECT_EQ(seen.size(), edges);
    }
}

TEST(random_universal, single_qubit_rule) {
    RandomCircuitSpec spec;
    spec.seed = 4;
    const Circuit c = gen_random_universal(spec);
    std::vector<std::string> last(static_cast<std::size_t>(c.n));
    for (std::size_t i = static_cast<std::size_t>(c.n); i < c.gates.size(); ++i) {
        const Gate &g = c.gates[i];
        if (g.arity() != 1) {
            continue;
        }
        auto &prev = last[static_cast<std::size_t>(g.qubit(0))];
        if (prev.empty()) {
            EXPECT_EQ(g.name(), "t");
        } else {
            EXPECT_NE(g.name(), prev);
        }
        prev = g.name();
    }
}

TEST(random_universal, deterministic) {
    RandomCircuitSpec spec;
    spec.seed = 99;
    const Circuit a = gen_random_universal(spec);
    const Circuit b = gen_random_universal(spec);
    ASSERT_EQ(a.gates.size(), b.gates.size());
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        EXPECT_EQ(a.gates[i].name(), b.gates[i].name());
        EXPECT_TRUE(std::equal(a.gates[i].qubits().begin(), a.gates[i].qubits().end(),
                               b.gates[i].qubits().begin()));
    }
}

TEST(random_universal, entropy_reaches_porter_thomas) {
    const double ref = PTReference::for_qubits(12).entropy_ref;
    EXPECT_NEAR(ref, 7.8950, 5e-5);
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomCircuitSpec spec;
        spec.seed = seed;
        acc += entropy(probabilities(run(gen_random_universal(spec))));
    }
    EXPECT_NEAR(acc / 20.0, ref, 0.05);
}

TEST(sparse_iqp, gamma_zero_has_no_pairs) {
    SparseIqpSpec spec;
    spec.gamma = 0.0;
    EXPECT_TRUE(gen_sparse_iqp(spec).zz_terms.empty());
}

TEST(sparse_iqp, saturates_at_all_pairs) {
    SparseIqpSpec spec;
    spec.gamma = 100.0;
    EXPECT_EQ(gen_sparse_iqp(spec).zz_terms.size(), 190u);
}

TEST(sparse_iqp, pair_count_is_binomial) {
    const double p = std::log(20.0) / 20.0;
    const double mean = 190.0 * p;
    EXPECT_NEAR(mean, 28.46, 0.005);
    const double sigma_of_mean = std::sqrt(190.0 * p * (1.0 - p) / 1000.0);
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        SparseIqpSpec spec;
        spec.seed = seed;
        acc += static_cast<double>(gen_sparse_iqp(spec).zz_terms.size());
    }
    EXPECT_NEAR(acc / 1000.0, mean, 3.0 * sigma_of_mean);
}

TEST(eval_f, empty_and_single_pair) {
    DiagonalCircuit empty{3, {}, {}};
    for (Index y = 0; y < 8; ++y) {
        EXPECT_EQ(eval_f(empty, BitString(y, 3)), Complex(1.0));
    }
    DiagonalCircuit zz{2, {}, {{0, 1, kPi}}};
    const std::array<double, 4> expected{1, 1, 1, -1};
    for (Index y = 0; y < 4; ++y) {
        EXPECT_NEAR(std::abs(eval_f(zz, BitString(y, 2)) - expected[y]), 0.0, 1e-12);
    }
}

TEST(eval_f, matches_diagonal_oracle) {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 10; ++n) {
        const DiagonalCircuit d = oracle::random_diagonal(n, rng);
        const PhaseTable table = phase_table(d);
        for (Index y = 0; y < dimension(n); ++y) {
            const Complex want = oracle::phase_naive(d, y);
            ASSERT_NEAR(std::abs(eval_f(d, BitString(y, n)) - want), 0.0, 1e-12);
            ASSERT_NEAR(std::abs(table.value(y) - want), 0.0, 1e-12);
        }
    }
}

TEST(iqp_prob_dist, hand_examples) {
    const ProbDist empty = iqp_prob_dist(DiagonalCircuit{3, {}, {}});
    EXPECT_NEAR(empty[0], 1.0, 1e-15);
    const ProbDist zz = iqp_prob_dist(DiagonalCircuit{2, {}, {{0, 1, kPi}}});
    for (Index x = 0; x < 4; ++x) {
        EXPECT_NEAR(zz[x], 0.25, 1e-15);
    }
}

TEST(iqp_prob_dist, matches_gate_simulation_and_naive_transform) {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 10; ++n) {
        SparseIqpSpec spec;
        spec.n = n;
        spec.gamma = 2.0;
        spec.seed = static_cast<std::uint64_t>(n);
        for (const DiagonalCircuit &d : {gen_sparse_iqp(spec), oracle::random_diagonal(n, rng)}) {
            const ProbDist fast = iqp_prob_dist(d);
            const ProbDist sim = probabilities(run(iqp_circuit(d)));
            const auto naive = oracle::iqp_probs_naive(d);
            for (Index x = 0; x < fast.size(); ++x) {
                ASSERT_NEAR(fast[x], sim[x], 1e-10);
                ASSERT_NEAR(fast[x], naive[x], 1e-12);
            }
        }
    }
}

TEST(diagonal_circuit, validation) {
    EXPECT_THROW((DiagonalCircuit{2, {{2, 0.1}}, {}}.validate()), std::out_of_range);
    EXPECT_THROW((DiagonalCircuit{2, {}, {{0, 0, 0.1}}}.validate()), std::invalid_argument);
    SparseIqpSpec bad;
    bad.n = 1;
    EXPECT_THROW(gen_sparse_iqp(bad), std::invalid_argument);
}
