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

#include <qspec/io.hpp>

#include "oracles.hpp"

using namespace qspec;

TEST(io, random_circuit_roundtrip) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomCircuitSpec spec;
        spec.seed = seed;
        const Circuit c = gen_random_universal(spec);
        const Circuit back = circuit_from_json(json::parse(to_json(c).dump()));
        EXPECT_EQ(back.n, c.n);
        EXPECT_EQ(back.depth, c.depth);
        EXPECT_EQ(probabilities(run(back)).probs, probabilities(run(c)).probs);
    }
}

TEST(io, every_gate_kind_roundtrips) {
    std::mt19937_64 rng(1);
    Circuit c;
    c.n = 3;
    c.gates = {gates::H(0),        gates::X(1),        gates::Y(2),
               gates::Z(0),        gates::pauli(0, 1), gates::SqrtX(2),
               gates::SqrtY(0),    gates::T(1),        gates::Phase(2, 0.3),
               gates::CZ(0, 2),    gates::CPhase(1, 0, -1.1),
               Gate::single(1, oracle::random_unitary<2>(rng)),
               Gate::two_qubit(2, 0, oracle::random_unitary<4>(rng))};
    const Circuit back = circuit_from_json(to_json(c));
    ASSERT_EQ(back.gates.size(), c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        EXPECT_EQ(back.gates[i].kind(), c.gates[i].kind());
        for (std::size_t k = 0; k < c.gates[i].matrix().size(); ++k) {
            EXPECT_NEAR(std::abs(back.gates[i].matrix()[k] - c.gates[i].matrix()[k]), 0.0, 1e-15);
        }
    }
}

TEST(io, diagonal_and_noise_roundtrip) {
    SparseIqpSpec spec;
    spec.n = 9;
    spec.gamma = 3.0;
    const DiagonalCircuit d = gen_sparse_iqp(spec);
    const DiagonalCircuit back = diagonal_from_json(to_json(d));
    EXPECT_EQ(iqp_prob_dist(back).probs, iqp_prob_dist(d).probs);
    const NoiseModel nm{0.0005, 0.005, 0.01};
    const NoiseModel nb = noise_from_json(to_json(nm));
    EXPECT_EQ(nb.eps1, nm.eps1);
    EXPECT_EQ(nb.eps2, nm.eps2);
    EXPECT_EQ(nb.eps_meas, nm.eps_meas);
}

TEST(io, rejects_malformed) {
    EXPECT_THROW(gate_from_json(json{{"kind", "cz"}, {"qubits", {0}}}), std::invalid_argument);
    EXPECT_THROW(gate_from_json(json{{"kind", "nope"}, {"qubits", {0}}}), std::invalid_argument);
    EXPECT_THROW(noise_from_json(json{{"eps2", 2.0}}), std::invalid_argument);
    EXPECT_THROW(circuit_from_json(json{{"n", 2}, {"gates", {{{"kind", "h"}, {"qubits", {5}}}}}}),
                 std::out_of_range);
    EXPECT_THROW(read_json_file("/nonexistent/qspec.json"), std::runtime_error);
}

TEST(io, report_shape) {
    TestReport r;
    r.name = "demo";
    r.checks.push_back(check_rel("std", 1.02, 1.0, 0.05));
    const json j = to_json(r);
    EXPECT_EQ(j.at("name"), "demo");
    EXPECT_TRUE(j.at("pass").get<bool>());
    for (const char *key : {"statistic", "reference", "tolerance", "pass"}) {
        EXPECT_TRUE(j.at("checks")[0].contains(key)) << key;
    }
}
