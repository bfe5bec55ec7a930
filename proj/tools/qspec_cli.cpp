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

// qspec command-line driver. Every experiment writes its CSV/JSON outputs
// plus a manifest.json into --out.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <qspec/experiments.hpp>

namespace fs = std::filesystem;
using qspec::json;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir = "out";
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
};

json load_config(const Common &common) {
    if (common.config_path.empty()) {
        return json::object();
    }
    return qspec::read_json_file(common.config_path);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

fs::path prepare_out(const Common &common) {
    fs::path out(common.out_dir);
    fs::create_directories(out);
    return out;
}

void write_manifest(const fs::path &out, const std::string &command, const json &config,
                    const json &outputs, const json &extra = json::object()) {
    json manifest{{"command", command},
                  {"schema_version", qspec::kCsvSchemaVersion},
                  {"config", config},
                  {"outputs", outputs},
                  {"timestamp_utc", utc_timestamp()}};
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        manifest[it.key()] = it.value();
    }
    std::ofstream(out / "manifest.json") << manifest.dump(2) << '\n';
}

template <class T> void take(const json &cfg, const char *key, T &field) {
    if (cfg.contains(key)) {
        field = cfg.at(key).get<T>();
    }
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << text;
}

// --- fig1 ------------------------------------------------------------------

int cmd_fig1(const Common &common, const json &overrides) {
    json cfg = load_config(common);
    cfg.update(overrides);
    qspec::Fig1Config c;
    take(cfg, "n", c.n);
    take(cfg, "gammas", c.gammas);
    take(cfg, "instances", c.instances);
    take(cfg, "seed", c.seed);
    if (cfg.value("phase_rule", std::string("eighth_turns")) == "none") {
        c.phase_rule = qspec::PhaseRule::none;
    }
    if (common.seed) {
        c.seed = *common.seed;
    }
    c.threads = common.threads;

    const auto rows = qspec::run_fig1(c);
    const fs::path out = prepare_out(common);
    std::ostringstream csv;
    qspec::write_fig1_csv(csv, rows);
    write_text(out / "fig1.csv", csv.str());

    json summary = json::array();
    for (const auto &s : qspec::summarize_fig1(rows)) {
        summary.push_back(
            {{"gamma", s.gamma}, {"mean_entropy", s.mean_entropy}, {"mean_abs_gap", s.mean_abs_gap}});
    }
    json echo{{"n", c.n}, {"gammas", c.gammas}, {"instances", c.instances}, {"seed", c.seed},
              {"phase_rule", c.phase_rule == qspec::PhaseRule::none ? "none" : "eighth_turns"}};
    write_manifest(out, "fig1", echo, {"fig1.csv"}, {{"summary", summary}});
    std::cout << summary.dump(2) << '\n';
    return 0;
}

// --- fig2 / fig3 -------------------------------------------------------------

int cmd_fig23(const Common &common, const json &overrides) {
    json cfg = load_config(common);
    cfg.update(overrides);
    qspec::Fig23Config c;
    take(cfg, "rows", c.rows);
    take(cfg, "cols", c.cols);
    take(cfg, "depth", c.depth);
    take(cfg, "eps", c.eps);
    take(cfg, "single_ratio", c.single_ratio);
    take(cfg, "instances", c.instances);
    take(cfg, "components_per_weight", c.components_per_weight);
    take(cfg, "K", c.K);
    take(cfg, "seed", c.seed);
    if (cfg.value("full_scale", false)) {
        c.rows = 5;
        c.cols = 4;
    }
    if (common.seed) {
        c.seed = *common.seed;
    }
    c.threads = common.threads;

    const auto result = qspec::run_fig23(c);
    for (const auto &w : result.warnings) {
        std::cerr << json{{"warning", w}}.dump() << '\n';
    }
    const fs::path out = prepare_out(common);
    std::ostringstream fig2, fig3;
    qspec::write_fig2_csv(fig2, result);
    qspec::write_fig3_csv(fig3, result);
    write_text(out / "fig2.csv", fig2.str());
    write_text(out / "fig3.csv", fig3.str());

    json instances = json::array();
    for (const auto &i : result.instances) {
        instances.push_back({{"eps", i.eps},
                             {"instance", i.instance},
                             {"no_error_fraction", i.no_error_fraction},
                             {"alpha_pred_product", i.alpha_product},
                             {"gate_count", i.gate_count}});
    }
    json echo{{"rows", c.rows},
              {"cols", c.cols},
              {"depth", c.depth},
              {"eps", c.eps},
              {"single_ratio", c.single_ratio},
              {"instances", c.instances},
              {"components_per_weight", c.components_per_weight},
              {"K", c.K},
              {"seed", c.seed}};
    write_manifest(out, "fig23", echo, {"fig2.csv", "fig3.csv"},
                   {{"instances", instances}, {"warnings", result.warnings}});
    return 0;
}

// --- attack ------------------------------------------------------------------

int cmd_attack(const Common &common, const json &overrides) {
    json cfg = load_config(common);
    cfg.update(overrides);
    qspec::AttackConfig c;
    take(cfg, "n", c.n);
    take(cfg, "gamma", c.gamma);
    take(cfg, "circuit_seed", c.circuit_seed);
    take(cfg, "eps", c.eps);
    take(cfg, "l", c.l);
    take(cfg, "eta", c.eta);
    take(cfg, "fail_prob", c.fail_prob);
    take(cfg, "delta", c.delta);
    take(cfg, "seed", c.seed);
    take(cfg, "tabulate_f", c.tabulate_f);
    if (common.seed) {
        c.seed = *common.seed;
    }
    c.threads = common.threads;

    const json report = qspec::to_json(qspec::run_attack(c));
    const fs::path out = prepare_out(common);
    write_text(out / "attack.json", report.dump(2) + "\n");
    json echo{{"n", c.n},   {"gamma", c.gamma},         {"circuit_seed", c.circuit_seed},
              {"eps", c.eps}, {"l", c.l},               {"eta", c.eta},
              {"fail_prob", c.fail_prob}, {"delta", c.delta}, {"seed", c.seed}};
    write_manifest(out, "attack", echo, {"attack.json"});
    std::cout << report.dump(2) << '\n';
    return 0;
}

// --- xeb ---------------------------------------------------------------------

int cmd_xeb(const Common &common, const json &overrides) {
    json cfg = load_config(common);
    cfg.update(overrides);
    qspec::XebConfig c;
    take(cfg, "rows", c.rows);
    take(cfg, "cols", c.cols);
    take(cfg, "depth", c.depth);
    take(cfg, "circuit_seed", c.circuit_seed);
    take(cfg, "K", c.K);
    take(cfg, "samples", c.samples);
    take(cfg, "seed", c.seed);
    if (cfg.contains("noise")) {
        c.noise = qspec::noise_from_json(cfg.at("noise"));
    }
    if (cfg.contains("eps1")) c.noise.eps1 = cfg.at("eps1").get<double>();
    if (cfg.contains("eps2")) c.noise.eps2 = cfg.at("eps2").get<double>();
    if (cfg.contains("eps_meas")) c.noise.eps_meas = cfg.at("eps_meas").get<double>();
    c.noise.validate();
    const auto source = cfg.value("source", std::string("noisy"));
    if (source == "uniform") {
        c.source = qspec::XebSource::uniform;
    } else if (source == "ideal") {
        c.source = qspec::XebSource::ideal;
    } else if (source != "noisy") {
        throw std::invalid_argument("source must be noisy, ideal or uniform");
    }
    if (common.seed) {
        c.seed = *common.seed;
    }
    c.threads = common.threads;

    const json report = qspec::to_json(qspec::run_xeb(c));
    const fs::path out = prepare_out(common);
    write_text(out / "xeb.json", report.dump(2) + "\n");
    json echo{{"rows", c.rows},       {"cols", c.cols}, {"depth", c.depth},
              {"circuit_seed", c.circuit_seed}, {"noise", qspec::to_json(c.noise)},
              {"K", c.K},             {"samples", c.samples}, {"source", source}, {"seed", c.seed}};
    write_manifest(out, "xeb", echo, {"xeb.json"});
    std::cout << report.dump(2) << '\n';
    return 0;
}

// --- generators and single-circuit tools -------------------------------------

int cmd_gen(const Common &common, const std::string &family, const json &overrides) {
    json cfg = load_config(common);
    cfg.update(overrides);
    json doc;
    if (family == "random") {
        qspec::RandomCircuitSpec spec;
        take(cfg, "rows", spec.rows);
        take(cfg, "cols", spec.cols);
        take(cfg, "depth", spec.depth);
        take(cfg, "seed", spec.seed);
        if (common.seed) spec.seed = *common.seed;
        doc = qspec::to_json(qspec::gen_random_universal(spec));
    } else if (family == "iqp") {
        qspec::SparseIqpSpec spec;
        take(cfg, "n", spec.n);
        take(cfg, "gamma", spec.gamma);
        take(cfg, "seed", spec.seed);
        if (common.seed) spec.seed = *common.seed;
        doc = qspec::to_json(qspec::gen_sparse_iqp(spec));
    } else {
        throw std::invalid_argument("family must be random or iqp");
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int cmd_spectrum(const std::string &input, const std::string &noise_path, std::size_t K,
                 std::uint64_t seed, const std::string &output, unsigned threads) {
    const json doc = qspec::read_json_file(input);
    qspec::ProbDist dist;
    if (doc.contains("gates")) {
        const qspec::Circuit c = qspec::circuit_from_json(doc);
        if (noise_path.empty()) {
            dist = qspec::probabilities(qspec::run(c));
        } else {
            const auto nm = qspec::noise_from_json(qspec::read_json_file(noise_path));
            qspec::TrajectoryOptions opts;
            opts.threads = threads;
            dist = qspec::run_trajectories(c, nm, K, seed, opts).avg_dist;
            if (nm.eps_meas > 0.0) {
                dist = qspec::premeasurement_depolarize(dist, nm.eps_meas);
            }
        }
    } else {
        dist = qspec::iqp_prob_dist(qspec::diagonal_from_json(doc));
        if (!noise_path.empty()) {
            const auto nm = qspec::noise_from_json(qspec::read_json_file(noise_path));
            dist = qspec::premeasurement_depolarize(dist, nm.eps_meas);
        }
    }
    const qspec::Spectrum spec = qspec::wht(dist);
    if (output.empty() || output == "-") {
        qspec::write_spectrum_csv(std::cout, spec);
    } else {
        std::ofstream os(output);
        qspec::write_spectrum_csv(os, spec);
    }
    return 0;
}

/// Collects `--set key=value` overrides; values parse as JSON when possible.
json parse_overrides(const std::vector<std::string> &sets) {
    json out = json::object();
    for (const auto &kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        try {
            out[key] = json::parse(value);
        } catch (const json::parse_error &) {
            out[key] = value;
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qspec: Walsh-Fourier analysis of noisy chaotic quantum circuits"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::string> sets;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", common.config_path, "JSON experiment config");
        sub->add_option("--out", common.out_dir, "Output directory");
        sub->add_option("--threads", common.threads, "Worker threads (0 = hardware)");
        sub->add_option("--seed", common.seed, "Master seed (overrides config)");
        sub->add_option("--set", sets, "Override a config key, e.g. --set instances=20");
    };

    auto *fig1 = app.add_subcommand("fig1", "Entropy of sparse IQP output distributions vs gamma");
    add_common(fig1);
    auto *fig23 = app.add_subcommand("fig23", "Noisy Fourier components of random circuits");
    add_common(fig23);
    auto *attack = app.add_subcommand("attack", "Low-weight Fourier reconstruction vs uniform guess");
    add_common(attack);
    auto *xebcmd = app.add_subcommand("xeb", "Cross-entropy benchmarking of a noisy circuit");
    add_common(xebcmd);

    std::string family = "random";
    auto *gen = app.add_subcommand("gen", "Print a generated circuit as JSON");
    add_common(gen);
    gen->add_option("family", family, "random | iqp")->required();

    std::string input, noise_path, output;
    std::size_t K = 2000;
    std::uint64_t traj_seed = 1;
    auto *spectrum = app.add_subcommand("spectrum", "Walsh spectrum CSV of a circuit file");
    spectrum->add_option("input", input, "Circuit or diagonal-circuit JSON")->required();
    spectrum->add_option("--noise", noise_path, "NoiseModel JSON");
    spectrum->add_option("-K", K, "Trajectories when noise is given");
    spectrum->add_option("--seed", traj_seed, "Trajectory seed");
    spectrum->add_option("--output,-o", output, "CSV path (default stdout)");
    spectrum->add_option("--threads", common.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        const json overrides = parse_overrides(sets);
        if (*fig1) return cmd_fig1(common, overrides);
        if (*fig23) return cmd_fig23(common, overrides);
        if (*attack) return cmd_attack(common, overrides);
        if (*xebcmd) return cmd_xeb(common, overrides);
        if (*gen) return cmd_gen(common, family, overrides);
        if (*spectrum) return cmd_spectrum(input, noise_path, K, traj_seed, output, common.threads);
    } catch (const std::exception &e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}
