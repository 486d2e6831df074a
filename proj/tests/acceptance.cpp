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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "fasris/analysis.hpp"
#include "fasris/channel.hpp"
#include "fasris/config.hpp"
#include "fasris/experiments.hpp"
#include "fasris/montecarlo.hpp"
#include "fasris/optimize.hpp"
#include "fasris/quadrature.hpp"
#include "fasris/rng.hpp"
#include "fasris/specfun.hpp"

#include <fmt/core.h>

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace an = fasris::analysis;
namespace ch = fasris::channel;
namespace cf = fasris::config;
namespace fx = fasris::experiments;
namespace mc = fasris::montecarlo;
namespace opt = fasris::optimize;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<std::vector<double>> golden(const std::string& name)
{
    std::ifstream in(std::string(FASRIS_GOLDEN_DIR) + "/" + name);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

cf::RunConfig reference_scenario()
{
    return cf::load_config(std::string(FASRIS_CONFIG_DIR) + "/reference_scenario.cfg");
}

an::OutageQuery make_query(const cf::RunConfig& cfg, double p_dbm)
{
    const auto los = ch::generate_los(cfg.system.M, cfg.system.los_angle_seed);
    const auto phases = opt::optimal_phases(los.h_bar, los.g_bar).phases;
    return an::OutageQuery{
        an::normalized_threshold(cfg.system.R, p_dbm, cfg.system.noise_power),
        ch::bdma_partition(ch::jakes_matrix(cfg.system.N, cfg.system.W), cf::partition_policy(cfg)),
        an::cascaded_statistics(cfg.system, los, phases), cfg.strict_common_mu};
}

Outcome special_functions()
{
    double worst = 0.0;
    std::size_t points = 0;
    for (const auto& r : golden("j0.csv")) {
        worst = std::max(worst, std::abs(fasris::specfun::bessel_j0(r[0]) - r[1]));
        ++points;
    }
    for (const auto& r : golden("i0_scaled.csv")) {
        worst = std::max(worst, std::abs(fasris::specfun::bessel_i0_scaled(r[0]) - r[1]));
        ++points;
    }
    for (const auto& r : golden("marcum_q1.csv")) {
        worst = std::max(worst, std::abs(fasris::specfun::marcum_q1(r[0], r[1]) - r[2]));
        ++points;
    }
    double worst_norm = 0.0;
    an::QuadratureSpec quad;
    for (double s : {0.1, 1.0, 10.0}) {
        for (double c : {0.0, 1.0, 5.0}) {
            const auto v = an::integrate([&](double x) { return fasris::specfun::rician_pdf(x, c, s); },
                                         0.0, c + 12.0 * std::sqrt(s) + 1.0, quad);
            worst_norm = std::max(worst_norm, std::abs(v.value - 1.0));
        }
    }
    return {points >= 200 && worst <= 1e-10 && worst_norm <= 1e-8,
            fmt::format("{} oracle points, max abs err {:.2e}; 9 density normalizations, max err {:.2e}",
                        points, worst, worst_norm)};
}

Outcome analytic_vs_mc(mc::CorrelationModel model, double lo, double hi, bool ci_rule)
{
    auto cfg = reference_scenario();
    cfg.mc_model = model;
    cfg.mc_trials = 100000;
    cfg.mc_floor = 0.0;
    const auto r = fx::sweep_power(cfg, 0.0, 20.0, 1.0);
    std::size_t checked = 0, failed = 0;
    double worst = 0.0, worst_p = NAN;
    for (const auto& row : r.rows) {
        const bool in_range = ci_rule ? (row.outage_bdma >= lo && row.outage_bdma <= hi)
                                      : ((row.outage_bdma >= lo && row.outage_bdma <= hi) ||
                                         (row.outage_mc >= lo && row.outage_mc <= hi));
        if (!in_range)
            continue;
        ++checked;
        const double gap = std::abs(row.outage_bdma - row.outage_mc);
        const double limit = ci_rule ? 3.0 * row.mc_ci_halfwidth : 0.05;
        const double score = gap / limit;
        if (score > worst) {
            worst = score;
            worst_p = row.axis_value;
        }
        failed += !(gap <= limit);
    }
    return {checked > 0 && failed == 0 && !r.had_numeric_error(),
            fmt::format("{} points in range, {} outside tolerance, worst gap/limit {:.3f} at P = {} dBm",
                        checked, failed, worst, worst_p)};
}

Outcome bound_ordering()
{
    std::size_t checked = 0, failed = 0;
    auto check = [&](const an::OutageQuery& q) {
        const double b = an::outage_bdma(q).value;
        const double lo = an::outage_lower(q).value;
        const double up = an::outage_upper(q.partition.block_count(), q.stats, q.gamma_th).value;
        ++checked;
        failed += !(lo <= b + 1e-6 && b <= up + 1e-6);
    };
    for (const auto& cfg : {reference_scenario(), cf::RunConfig{}})
        for (double p : fx::power_grid(0.0, 20.0, 2.0))
            check(make_query(cfg, p));

    fasris::CounterRng rng(2024, 0);
    auto uniform = [&] { return (rng() + 0.5) / 4294967296.0; };
    for (int i = 0; i < 100; ++i) {
        ch::SystemConfig sys;
        sys.bs_pos = {0.0, 0.0, 0.0};
        sys.ris_pos = {1.0, 0.0, 0.0};
        sys.user_pos = {1.0, 1.0, 0.0};
        sys.pl_ref_db = 0.0;
        sys.N = 1 + static_cast<std::size_t>(uniform() * 8);
        sys.M = 1 + static_cast<std::size_t>(uniform() * 8);
        sys.W = 0.2 + 4.8 * uniform();
        sys.K = 5.0 * uniform();
        const double mu_sq = 0.3 + 0.69 * uniform();
        const auto los = ch::generate_los(sys.M, 100 + i);
        const auto phases = uniform() < 0.5 ? opt::optimal_phases(los.h_bar, los.g_bar).phases
                                            : opt::random_phases(sys.M, 200 + i);
        const auto stats = an::cascaded_statistics(sys, los, phases);
        const auto part = ch::bdma_partition(ch::jakes_matrix(sys.N, sys.W), ch::EigenPartition{mu_sq});
        const double gamma = stats.sigma_bar_sq * std::pow(10.0, -2.0 + 3.5 * uniform());
        check(an::OutageQuery{gamma, part, stats, true});
    }
    return {failed == 0, fmt::format("{} queries (22 grid points, 100 random configurations), {} violations",
                                     checked, failed)};
}

Outcome diversity()
{
    auto slope = [](const an::OutageQuery& base, bool asymptotic) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= 8; ++i) {
            auto q = base;
            q.gamma_th = base.stats.sigma_bar_sq * std::pow(10.0, -2.0 - 0.25 * i);
            pts.emplace_back(q.gamma_th, asymptotic ? an::outage_asymptotic(q).value : an::outage_bdma(q).value);
        }
        return an::diversity_order_estimate(pts);
    };
    auto cfg = reference_scenario();
    const double d50 = slope(make_query(cfg, 14.0), true);
    cfg.system.N = 4;
    const auto q4 = make_query(cfg, 14.0);
    const double d4 = slope(q4, true);
    const double b4 = slope(q4, false);
    const bool pass = std::abs(d50 - 50.0) <= 1e-6 && std::abs(d4 - 4.0) <= 1e-6 && b4 >= 3.6 && b4 <= 4.4;
    return {pass, fmt::format("asymptote slope {:.9f} (N = 50), {:.9f} (N = 4); BDMA tail slope {:.4f} (N = 4)",
                              d50, d4, b4)};
}

Outcome phase_dominance()
{
    auto cfg = reference_scenario();
    const auto los = ch::generate_los(cfg.system.M, cfg.system.los_angle_seed);
    const auto best = opt::optimal_phases(los.h_bar, los.g_bar).phases;
    double coherent = 0.0;
    for (std::size_t m = 0; m < los.h_bar.size(); ++m)
        coherent += std::abs(los.h_bar[m]) * std::abs(los.g_bar[m]);
    const double obj_err = std::abs(opt::los_objective(los.h_bar, best, los.g_bar) - coherent);

    const auto part = ch::bdma_partition(ch::jakes_matrix(cfg.system.N, cfg.system.W), cf::partition_policy(cfg));
    const auto grid = fx::power_grid(cfg.p_min, cfg.p_max, cfg.p_step);
    std::vector<double> gammas;
    for (double p : grid)
        gammas.push_back(an::normalized_threshold(cfg.system.R, p, cfg.system.noise_power));

    auto spec = cf::mc_spec(cfg);
    auto curve = [&](const opt::PhaseConfig& phases) {
        const auto stats = an::cascaded_statistics(cfg.system, los, phases);
        std::vector<an::OutageValue> analytic;
        for (double g : gammas)
            analytic.push_back(an::outage_bdma(an::OutageQuery{g, part, stats, false}));
        return std::pair{analytic, mc::empirical_outage_curve(cfg.system, part, los, phases, spec, gammas)};
    };
    const auto [best_a, best_mc] = curve(best);
    std::size_t violations = 0;
    constexpr int kRandom = 5;
    for (int s = 0; s < kRandom; ++s) {
        const auto [rnd_a, rnd_mc] = curve(opt::random_phases(cfg.system.M, cfg.phase_seed + s));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            // equal within the quadrature error where both saturate at 1
            violations += best_a[i].value > rnd_a[i].value + best_a[i].est_abs_err + rnd_a[i].est_abs_err;
            violations += best_mc[i].outage > rnd_mc[i].outage;
        }
    }
    return {violations == 0 && obj_err <= 1e-12,
            fmt::format("{} powers x {} random configurations, {} violations; objective error {:.1e}",
                        grid.size(), kRandom, violations, obj_err)};
}

Outcome element_scaling()
{
    auto cfg = reference_scenario();
    const double m9 = an::outage_bdma(make_query(cfg, 14.0)).value;
    cfg.system.M = 16;
    const double m16 = an::outage_bdma(make_query(cfg, 14.0)).value;
    const double orders = std::log10(m9) - std::log10(m16);
    return {orders >= 10.0,
            fmt::format("M = 9: {:.4e}, M = 16: {:.4e}, drop {:.2f} orders of magnitude", m9, m16, orders)};
}

// CSV without its '#' provenance lines.
std::string body(const std::string& csv)
{
    std::string out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind('#', 0) != 0)
            out += line + "\n";
    }
    return out;
}

Outcome determinism()
{
    auto serial = reference_scenario();
    serial.threads = 1;
    serial.mc_batch = 4096;
    auto parallel = serial;
    parallel.threads = 4;
    parallel.mc_batch = 1000;
    std::size_t identical = 0, runs = 0;
    auto same = [&](const fx::SweepResult& a, const fx::SweepResult& b) {
        ++runs;
        identical += body(fx::to_csv(a)) == body(fx::to_csv(b));
    };
    for (auto model : {mc::CorrelationModel::block, mc::CorrelationModel::toeplitz}) {
        serial.mc_model = parallel.mc_model = model;
        same(fx::sweep_power(serial, serial.p_min, serial.p_max, serial.p_step),
             fx::sweep_power(parallel, parallel.p_min, parallel.p_max, parallel.p_step));
    }
    serial.mc_model = parallel.mc_model = mc::CorrelationModel::block;
    same(fx::sweep_ports(serial, serial.n_list), fx::sweep_ports(parallel, parallel.n_list));
    same(fx::compare_phases(serial, 3), fx::compare_phases(parallel, 3));
    // a repeated run with identical settings, whole file
    ++runs;
    identical += fx::to_csv(fx::compare_phases(serial, 2)) == fx::to_csv(fx::compare_phases(serial, 2));
    return {identical == runs, fmt::format("{}/{} sweep pairs byte-identical (1 vs 4 threads, batch 4096 vs 1000)",
                                           identical, runs)};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget_s; // 0: no runtime bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "special-function fidelity", 10.0, special_functions},
        {2, "analytic vs Monte-Carlo, block model", 120.0,
         [] { return analytic_vs_mc(mc::CorrelationModel::block, 1e-3, 0.999, true); }},
        {3, "BDMA vs exact Jakes correlation", 0.0,
         [] { return analytic_vs_mc(mc::CorrelationModel::toeplitz, 0.01, 0.99, false); }},
        {4, "bound ordering", 60.0, bound_ordering},
        {5, "diversity order", 60.0, diversity},
        {6, "phase-design dominance", 120.0, phase_dominance},
        {7, "outage drop from 9 to 16 elements", 0.0, element_scaling},
        {8, "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            out.pass = false;
            out.detail += fmt::format("; over the {:.0f} s budget", c.budget_s);
        }
        failures += !out.pass;
        fmt::print("criterion {} ({}): {} [{:.1f} s] {}\n", c.id, c.name, out.pass ? "PASS" : "FAIL", secs,
                   out.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
