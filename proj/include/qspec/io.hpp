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
 * JSON encodings for circuits, diagonal circuits, noise models, trajectory
 * results and test reports.
 *
 * Circuit:   {"n": 3, "depth": 1, "gates": [{"kind": "h", "qubits": [0], "params": []}, ...]}
 *   kinds:   h x y z i sqrt_x sqrt_y t   (one qubit, no params)
 *            phase                       (one qubit, params [theta])
 *            cz                          (two qubits, no params)
 *            cphase                      (two qubits, params [theta])
 *            unitary                     (one or two qubits, params = row-major
 *                                         matrix as [re, im, re, im, ...])
 * Diagonal:  {"n": 4, "z": [{"q": 0, "angle": 0.78}], "zz": [{"i": 0, "j": 1, "angle": 3.14}]}
 * Noise:     {"eps1": 0.0005, "eps2": 0.005, "eps_meas": 0.0}
 */

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "circuits.hpp"
#include "noise.hpp"
#include "state_vector.hpp"
#include "stats.hpp"

namespace qspec {

using json = nlohmann::json;

inline json gate_to_json(const Gate &g) {
    json j;
    j["qubits"] = std::vector<int>(g.qubits().begin(), g.qubits().end());
    j["params"] = json::array();
    static const std::array<const char *, 8> kNamed{"h", "x", "y", "z", "i", "sqrt_x", "sqrt_y", "t"};
    const auto &name = g.name();
    if (g.kind() == GateKind::controlled_phase) {
        if (name == "cz") {
            j["kind"] = "cz";
        } else {
            j["kind"] = "cphase";
            j["params"].push_back(g.angle());
        }
        return j;
    }
    if (g.kind() == GateKind::single_qubit) {
        if (std::find(kNamed.begin(), kNamed.end(), name) != kNamed.end()) {
            j["kind"] = name;
            return j;
        }
        if (name == "phase") {
            j["kind"] = "phase";
            j["params"].push_back(std::arg(g.matrix()[3]));
            return j;
        }
    }
    j["kind"] = "unitary";
    for (const auto &z : g.matrix()) {
        j["params"].push_back(z.real());
        j["params"].push_back(z.imag());
    }
    return j;
}

inline Gate gate_from_json(const json &j) {
    const auto kind = j.at("kind").get<std::string>();
    const auto qubits = j.at("qubits").get<std::vector<int>>();
    const auto params = j.value("params", std::vector<double>{});
    auto need = [&](std::size_t nq, std::size_t np) {
        if (qubits.size() != nq || params.size() != np) {
            throw std::invalid_argument("gate '" + kind + "' expects " + std::to_string(nq) +
                                        " qubit(s) and " + std::to_string(np) + " param(s)");
        }
    };
    if (kind == "h" || kind == "x" || kind == "y" || kind == "z" || kind == "i" ||
        kind == "sqrt_x" || kind == "sqrt_y" || kind == "t") {
        need(1, 0);
        const int q = qubits[0];
        if (kind == "h") return gates::H(q);
        if (kind == "x") return gates::X(q);
        if (kind == "y") return gates::Y(q);
        if (kind == "z") return gates::Z(q);
        if (kind == "i") return gates::pauli(0, q);
        if (kind == "sqrt_x") return gates::SqrtX(q);
        if (kind == "sqrt_y") return gates::SqrtY(q);
        return gates::T(q);
    }
    if (kind == "phase") {
        need(1, 1);
        return gates::Phase(qubits[0], params[0]);
    }
    if (kind == "cz") {
        need(2, 0);
        return gates::CZ(qubits[0], qubits[1]);
    }
    if (kind == "cphase") {
        need(2, 1);
        return gates::CPhase(qubits[0], qubits[1], params[0]);
    }
    if (kind == "unitary") {
        if (qubits.size() == 1) {
            need(1, 8);
            std::array<Complex, 4> m;
            for (std::size_t i = 0; i < 4; ++i) {
                m[i] = {params[2 * i], params[2 * i + 1]};
            }
            return Gate::single(qubits[0], m);
        }
        need(2, 32);
        std::array<Complex, 16> m;
        for (std::size_t i = 0; i < 16; ++i) {
            m[i] = {params[2 * i], params[2 * i + 1]};
        }
        return Gate::two_qubit(qubits[0], qubits[1], m);
    }
    throw std::invalid_argument("unknown gate kind '" + kind + "'");
}

inline json to_json(const Circuit &c) {
    json gates = json::array();
    for (const auto &g : c.gates) {
        gates.push_back(gate_to_json(g));
    }
    return {{"n", c.n}, {"depth", c.depth}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json &j) {
    Circuit c;
    c.n = j.at("n").get<int>();
    c.depth = j.value("depth", 0);
    for (const auto &g : j.at("gates")) {
        c.gates.push_back(gate_from_json(g));
    }
    c.validate();
    return c;
}

inline json to_json(const DiagonalCircuit &d) {
    json z = json::array();
    for (const auto &t : d.z_terms) {
        z.push_back({{"q", t.q}, {"angle", t.angle}});
    }
    json zz = json::array();
    for (const auto &t : d.zz_terms) {
        zz.push_back({{"i", t.i}, {"j", t.j}, {"angle", t.angle}});
    }
    return {{"n", d.n}, {"z", std::move(z)}, {"zz", std::move(zz)}};
}

inline DiagonalCircuit diagonal_from_json(const json &j) {
    DiagonalCircuit d;
    d.n = j.at("n").get<int>();
    for (const auto &t : j.value("z", json::array())) {
        d.z_terms.push_back({t.at("q").get<int>(), t.at("angle").get<double>()});
    }
    for (const auto &t : j.value("zz", json::array())) {
        d.zz_terms.push_back(
            {t.at("i").get<int>(), t.at("j").get<int>(), t.at("angle").get<double>()});
    }
    d.validate();
    return d;
}

inline json to_json(const NoiseModel &nm) {
    return {{"eps1", nm.eps1}, {"eps2", nm.eps2}, {"eps_meas", nm.eps_meas}};
}

inline NoiseModel noise_from_json(const json &j) {
    NoiseModel nm{j.value("eps1", 0.0), j.value("eps2", 0.0), j.value("eps_meas", 0.0)};
    nm.validate();
    return nm;
}

inline json to_json(const TrajectoryResult &r, bool include_dist = true) {
    json j{{"K", r.K},
           {"seed", r.seed},
           {"no_error_fraction", r.no_error_fraction},
           {"no_error_count", r.no_error_count},
           {"n", r.avg_dist.n}};
    if (include_dist) {
        j["avg_dist"] = r.avg_dist.probs;
    }
    return j;
}

inline json to_json(const Check &c) {
    return {{"statistic", c.statistic},
            {"value", c.value},
            {"reference", c.reference},
            {"tolerance", c.tolerance},
            {"pass", c.pass}};
}

inline json to_json(const TestReport &r) {
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back(to_json(c));
    }
    return {{"name", r.name}, {"degenerate", r.degenerate}, {"pass", r.pass()}, {"checks", checks}};
}

inline json to_json(const XebResult &r) {
    return {{"cross_entropy", r.cross_entropy},
            {"alpha_hat", r.alpha_hat},
            {"k", r.k},
            {"std_err", r.std_err}};
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return json::parse(in);
}

} // namespace qspec
