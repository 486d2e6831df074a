// SPDX-License-Identifier: Apache-2.0
//
// fasris - outage analysis and simulation for fluid-antenna receivers behind a
// reconfigurable intelligent surface
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// fasris command-line front end: power / port sweeps, phase comparison,
// config template and golden-table regeneration.

#include "fasris/config.hpp"
#include "fasris/errors.hpp"
#include "fasris/experiments.hpp"
#include "oracle.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

namespace fx = fasris::experiments;

constexpr int kExitNumeric = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
    std::string config_path;
    std::string format = "csv";
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opt)
{
    cmd->add_option("-c,--config", opt.config_path, "config file (key = value)");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--out", opt.out, "output path (stdout if omitted)");
    cmd->add_option("--seed", opt.seed, "override the Monte-Carlo seed");
    cmd->add_option("--trials", opt.trials, "override mc_trials");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
}

fasris::config::RunConfig resolve(const CommonOptions& opt)
{
    auto cfg = opt.config_path.empty() ? fasris::config::RunConfig{}
                                       : fasris::config::load_config(opt.config_path);
    if (opt.seed)
        cfg.system.seed = *opt.seed;
    if (opt.trials)
        cfg.mc_trials = *opt.trials;
    if (opt.threads)
        cfg.threads = *opt.threads;
    return cfg;
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + out);
    f << text;
}

int finish(const fx::SweepResult& r, const CommonOptions& opt)
{
    emit(opt.format == "json" ? fx::to_json(r) : fx::to_csv(r), opt.out);
    for (const auto& e : r.errors)
        fmt::print(stderr, "numeric error: {}\n", e);
    return r.had_numeric_error() ? kExitNumeric : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fasris: outage analysis and simulation for FAS receivers behind a RIS"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FASRIS_VERSION);

    CommonOptions power_opt;
    std::optional<double> p_min, p_max, p_step;
    auto* power = app.add_subcommand("sweep-power", "outage versus transmit power");
    add_common(power, power_opt);
    power->add_option("--p-min", p_min, "first power [dBm]");
    power->add_option("--p-max", p_max, "last power [dBm]");
    power->add_option("--step", p_step, "power step [dB]");

    CommonOptions ports_opt;
    std::vector<std::size_t> n_list;
    auto* ports = app.add_subcommand("sweep-ports", "outage versus number of ports");
    add_common(ports, ports_opt);
    ports->add_option("--n-list", n_list, "port counts, strictly increasing")->delimiter(',');

    CommonOptions phase_opt;
    std::optional<std::size_t> random_seeds;
    auto* phases = app.add_subcommand("compare-phases", "optimal versus random RIS phases");
    add_common(phases, phase_opt);
    phases->add_option("--random-seeds", random_seeds, "number of random phase draws");

    auto* config_cmd = app.add_subcommand("config", "configuration helpers");
    config_cmd->require_subcommand(1);
    auto* defaults = config_cmd->add_subcommand("print-defaults", "print a commented template");

    std::string oracle_dir = "tests/golden";
    auto* oracle_cmd = app.add_subcommand("oracle");
    oracle_cmd->group("");
    oracle_cmd->require_subcommand(1);
    auto* oracle_gen = oracle_cmd->add_subcommand("gen", "regenerate golden tables");
    oracle_gen->add_option("--out", oracle_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*defaults) {
            std::cout << fasris::config::default_config_template();
            return 0;
        }
        if (*oracle_gen) {
            std::filesystem::create_directories(oracle_dir);
            fasris::oracle::write_golden_tables(oracle_dir);
            return 0;
        }
        if (*power) {
            const auto cfg = resolve(power_opt);
            return finish(fx::sweep_power(cfg, p_min.value_or(cfg.p_min), p_max.value_or(cfg.p_max),
                                          p_step.value_or(cfg.p_step)),
                          power_opt);
        }
        if (*ports) {
            const auto cfg = resolve(ports_opt);
            return finish(fx::sweep_ports(cfg, n_list.empty() ? cfg.n_list : n_list), ports_opt);
        }
        if (*phases) {
            const auto cfg = resolve(phase_opt);
            return finish(fx::compare_phases(cfg, random_seeds.value_or(cfg.random_seeds)), phase_opt);
        }
    } catch (const fasris::config::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const fasris::ValidationError& e) {
        fmt::print(stderr, "invalid input: {}\n", e.what());
        return kExitConfig;
    } catch (const fasris::DomainError& e) {
        fmt::print(stderr, "invalid input: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitNumeric;
    }
    return 0;
}
