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

#include "fasris/experiments.hpp"

#include "fasris/errors.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#ifndef FASRIS_VERSION
#define FASRIS_VERSION "dev"
#endif

namespace fasris::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
    channel::LosChannels los;
    optimize::PhaseConfig phases;
};

Setup make_setup(const config::RunConfig& cfg)
{
    channel::validate(cfg.system);
    Setup s;
    s.los = channel::generate_los(cfg.system.M, cfg.system.los_angle_seed);
    if (cfg.phases == config::PhaseScheme::optimal)
        s.phases = optimize::optimal_phases(s.los.h_bar, s.los.g_bar).phases;
    else
        s.phases = optimize::random_phases(cfg.system.M, cfg.phase_seed);
    return s;
}

struct AnalyticPoint {
    double bdma = kNaN;
    double upper = kNaN;
    double lower = kNaN;
    double asymptotic = kNaN;
    bool underflow = false;
    std::string error;
};

AnalyticPoint evaluate_analytic(const analysis::OutageQuery& q, const analysis::QuadratureSpec& quad)
{
    AnalyticPoint pt;
    auto run = [&](double& slot, auto&& fn) {
        try {
            const analysis::OutageValue v = fn();
            slot = v.value;
            pt.underflow = pt.underflow || v.underflow;
        } catch (const std::exception& e) {
            if (pt.error.empty())
                pt.error = e.what();
        }
    };
    run(pt.bdma, [&] { return analysis::outage_bdma(q, quad); });
    run(pt.upper, [&] { return analysis::outage_upper(q.partition.block_count(), q.stats, q.gamma_th); });
    run(pt.lower, [&] { return analysis::outage_lower(q); });
    run(pt.asymptotic, [&] { return analysis::outage_asymptotic(q); });
    return pt;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
    unsigned n = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, count));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            fn(i);
    };
    if (n <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i)
        pool.emplace_back(worker);
}

bool mc_reported(double bdma, double floor)
{
    return std::isnan(bdma) || bdma >= floor;
}

SweepRow make_row(double axis, std::string series, const AnalyticPoint& a,
                  const montecarlo::McEstimate& mc, double mc_floor)
{
    SweepRow row;
    row.axis_value = axis;
    row.series = std::move(series);
    row.outage_bdma = a.bdma;
    row.outage_upper = a.upper;
    row.outage_lower = a.lower;
    row.outage_asymptotic = a.asymptotic;
    if (mc_reported(a.bdma, mc_floor)) {
        row.outage_mc = mc.outage;
        row.mc_ci_halfwidth = mc.ci_halfwidth;
    } else {
        row.outage_mc = kNaN;
        row.mc_ci_halfwidth = kNaN;
        row.flags.push_back("mc_unavailable");
    }
    if (a.underflow)
        row.flags.insert(row.flags.begin(), "underflow");
    if (!a.error.empty())
        row.flags.push_back("numeric_error");
    return row;
}

std::string join_sizes(const channel::CorrelationPartition& part)
{
    std::string out;
    for (std::size_t b = 0; b < part.block_count(); ++b)
        out += fmt::format("{}{}", b ? " " : "", part.block_sizes[b]);
    return out;
}

void add_metadata(SweepResult& r, const config::RunConfig& cfg)
{
    r.metadata = {
        {"artifact", "fasris " FASRIS_VERSION},
        {"command", r.command},
        {"config_hash", fmt::format("{:016x}", config::config_hash(cfg))},
        {"seed", fmt::format("{}", cfg.system.seed)},
        {"los_angle_seed", fmt::format("{}", cfg.system.los_angle_seed)},
        {"phase_seed", fmt::format("{}", cfg.phase_seed)},
        {"phases", std::string(config::to_string(cfg.phases))},
        {"partition", std::string(config::to_string(cfg.partition))},
        {"mc_model", std::string(config::to_string(cfg.mc_model))},
        {"mc_trials", fmt::format("{}", cfg.mc_trials)},
    };
}

std::vector<double> thresholds(const channel::SystemConfig& sys, const std::vector<double>& powers)
{
    std::vector<double> out;
    out.reserve(powers.size());
    for (double p : powers)
        out.push_back(analysis::normalized_threshold(sys.R, p, sys.noise_power));
    return out;
}

struct PowerSeries {
    std::vector<AnalyticPoint> analytic;
    std::vector<montecarlo::McEstimate> mc;
};

PowerSeries power_series(const config::RunConfig& cfg, const channel::CorrelationPartition& part,
                         const channel::LosChannels& los, const optimize::PhaseConfig& phases,
                         const std::vector<double>& powers)
{
    const auto gammas = thresholds(cfg.system, powers);
    analysis::OutageQuery base;
    base.partition = part;
    base.stats = analysis::cascaded_statistics(cfg.system, los, phases);
    base.strict_common_mu = cfg.strict_common_mu;

    PowerSeries out;
    out.analytic.resize(powers.size());
    parallel_for(powers.size(), cfg.threads, [&](std::size_t i) {
        auto q = base;
        q.gamma_th = gammas[i];
        out.analytic[i] = evaluate_analytic(q, cfg.quadrature);
    });

    const bool any_mc = std::any_of(out.analytic.begin(), out.analytic.end(),
                                    [&](const AnalyticPoint& a) { return mc_reported(a.bdma, cfg.mc_floor); });
    if (any_mc) {
        out.mc = montecarlo::empirical_outage_curve(cfg.system, part, los, phases,
                                                    config::mc_spec(cfg), gammas);
    } else {
        out.mc.assign(powers.size(), montecarlo::McEstimate{kNaN, kNaN, 0});
    }
    return out;
}

void collect_errors(SweepResult& r, const std::vector<AnalyticPoint>& pts, const std::vector<double>& axis)
{
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].error.empty())
            r.errors.push_back(fmt::format("{} = {}: {}", r.axis_name, axis[i], pts[i].error));
    }
}

std::string format_prob(double v)
{
    return std::isnan(v) ? std::string() : fmt::format("{:.16e}", v);
}

} // namespace

std::vector<double> power_grid(double p_min, double p_max, double step)
{
    if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_min <= p_max))
        throw ValidationError("power grid needs finite p_min <= p_max");
    if (!(step > 0.0))
        throw ValidationError("power step must be positive");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double p = p_min + static_cast<double>(i) * step;
        if (p > p_max + 1e-9 * step)
            break;
        grid.push_back(p);
    }
    return grid;
}

SweepResult sweep_power(const config::RunConfig& cfg, double p_min, double p_max, double step)
{
    const auto powers = power_grid(p_min, p_max, step);
    const auto setup = make_setup(cfg);
    const auto part = channel::bdma_partition(channel::jakes_matrix(cfg.system.N, cfg.system.W),
                                              config::partition_policy(cfg));
    SweepResult r;
    r.command = "sweep-power";
    r.axis_name = "P_dbm";
    add_metadata(r, cfg);
    r.metadata.emplace_back("block_sizes", join_sizes(part));

    const auto series = power_series(cfg, part, setup.los, setup.phases, powers);
    const std::string name(config::to_string(cfg.phases));
    for (std::size_t i = 0; i < powers.size(); ++i)
        r.rows.push_back(make_row(powers[i], name, series.analytic[i], series.mc[i], cfg.mc_floor));
    collect_errors(r, series.analytic, powers);
    return r;
}

SweepResult sweep_ports(const config::RunConfig& cfg, const std::vector<std::size_t>& n_list)
{
    if (n_list.empty())
        throw ValidationError("port list is empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1)
            throw ValidationError("port counts must be at least 1");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw ValidationError("port counts must be strictly increasing (no duplicates)");
    }
    const auto setup = make_setup(cfg);
    const auto policy = config::partition_policy(cfg);
    SweepResult r;
    r.command = "sweep-ports";
    r.axis_name = "N";
    add_metadata(r, cfg);

    const std::size_t count = n_list.size();
    std::vector<config::RunConfig> per_n(count, cfg);
    std::vector<channel::CorrelationPartition> parts(count);
    std::vector<double> axis(count);
    for (std::size_t i = 0; i < count; ++i) {
        per_n[i].system.N = n_list[i];
        parts[i] = channel::bdma_partition(channel::jakes_matrix(n_list[i], cfg.system.W), policy);
        axis[i] = static_cast<double>(n_list[i]);
    }

    const double gamma = analysis::normalized_threshold(cfg.system.R, cfg.system.P, cfg.system.noise_power);
    const auto stats = analysis::cascaded_statistics(cfg.system, setup.los, setup.phases);
    std::vector<AnalyticPoint> analytic(count);
    parallel_for(count, cfg.threads, [&](std::size_t i) {
        analysis::OutageQuery q{gamma, parts[i], stats, cfg.strict_common_mu};
        analytic[i] = evaluate_analytic(q, cfg.quadrature);
    });

    for (std::size_t i = 0; i < count; ++i) {
        montecarlo::McEstimate mc{kNaN, kNaN, 0};
        if (mc_reported(analytic[i].bdma, cfg.mc_floor)) {
            mc = montecarlo::empirical_outage_curve(per_n[i].system, parts[i], setup.los,
                                                    setup.phases, config::mc_spec(cfg),
                                                    std::span<const double>(&gamma, 1))
                     .front();
        }
        auto row = make_row(axis[i], std::string(config::to_string(cfg.phases)), analytic[i], mc,
                            cfg.mc_floor);
        if (i > 0 && analytic[i].bdma > analytic[i - 1].bdma * (1.0 + 1e-6) + 1e-12)
            row.flags.push_back("non_monotone");
        r.metadata.emplace_back(fmt::format("block_sizes_N{}", n_list[i]), join_sizes(parts[i]));
        r.rows.push_back(std::move(row));
    }
    collect_errors(r, analytic, axis);
    return r;
}

SweepResult compare_phases(const config::RunConfig& cfg, std::size_t random_seeds)
{
    if (random_seeds < 1)
        throw ValidationError("random_seeds must be at least 1");
    const auto powers = power_grid(cfg.p_min, cfg.p_max, cfg.p_step);
    const auto los = channel::generate_los(cfg.system.M, cfg.system.los_angle_seed);
    const auto part = channel::bdma_partition(channel::jakes_matrix(cfg.system.N, cfg.system.W),
                                              config::partition_policy(cfg));
    SweepResult r;
    r.command = "compare-phases";
    r.axis_name = "P_dbm";
    add_metadata(r, cfg);
    r.metadata.emplace_back("random_seeds", fmt::format("{}", random_seeds));
    r.metadata.emplace_back("block_sizes", join_sizes(part));

    const auto optimal = optimize::optimal_phases(los.h_bar, los.g_bar).phases;
    const auto best = power_series(cfg, part, los, optimal, powers);

    const std::size_t n = powers.size();
    std::vector<AnalyticPoint> mean(n);
    std::vector<montecarlo::McEstimate> mean_mc(n, montecarlo::McEstimate{0.0, 0.0, 0});
    for (auto& pt : mean)
        pt = AnalyticPoint{0.0, 0.0, 0.0, 0.0, false, {}};
    const double share = 1.0 / static_cast<double>(random_seeds);

    auto mc_cfg = cfg;
    mc_cfg.mc_floor = -1.0; // always simulate; reporting is decided on the mean
    for (std::size_t s = 0; s < random_seeds; ++s) {
        const auto phases = optimize::random_phases(cfg.system.M, cfg.phase_seed + s);
        const auto series = power_series(mc_cfg, part, los, phases, powers);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = series.analytic[i];
            mean[i].bdma += share * a.bdma;
            mean[i].upper += share * a.upper;
            mean[i].lower += share * a.lower;
            mean[i].asymptotic += share * a.asymptotic;
            mean[i].underflow = mean[i].underflow || a.underflow;
            if (mean[i].error.empty())
                mean[i].error = a.error;
            mean_mc[i].outage += share * series.mc[i].outage;
            mean_mc[i].ci_halfwidth += series.mc[i].ci_halfwidth * series.mc[i].ci_halfwidth;
            mean_mc[i].trials_used += series.mc[i].trials_used;
        }
    }
    for (auto& m : mean_mc)
        m.ci_halfwidth = std::sqrt(m.ci_halfwidth) * share;

    for (std::size_t i = 0; i < n; ++i) {
        r.rows.push_back(make_row(powers[i], "optimal", best.analytic[i], best.mc[i], cfg.mc_floor));
        r.rows.push_back(make_row(powers[i], "random", mean[i], mean_mc[i], cfg.mc_floor));
    }
    collect_errors(r, best.analytic, powers);
    collect_errors(r, mean, powers);
    return r;
}

std::string to_csv(const SweepResult& result)
{
    std::string out;
    for (const auto& [key, value] : result.metadata)
        out += fmt::format("# {}: {}\n", key, value);
    out += fmt::format("{},series,outage_bdma,outage_upper,outage_lower,outage_asymptotic,"
                       "outage_mc,mc_ci_halfwidth,flags\n",
                       result.axis_name);
    for (const auto& row : result.rows) {
        std::string flags;
        for (const auto& f : row.flags)
            flags += (flags.empty() ? "" : "|") + f;
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", row.axis_value, row.series,
                           format_prob(row.outage_bdma), format_prob(row.outage_upper),
                           format_prob(row.outage_lower), format_prob(row.outage_asymptotic),
                           format_prob(row.outage_mc), format_prob(row.mc_ci_halfwidth),
                           flags.empty() ? "ok" : flags);
    }
    return out;
}

std::string to_json(const SweepResult& result)
{
    using nlohmann::ordered_json;
    auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : result.metadata)
        meta[key] = value;
    meta["axis_name"] = result.axis_name;
    ordered_json rows = ordered_json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{result.axis_name, row.axis_value},
                        {"series", row.series},
                        {"outage_bdma", num(row.outage_bdma)},
                        {"outage_upper", num(row.outage_upper)},
                        {"outage_lower", num(row.outage_lower)},
                        {"outage_asymptotic", num(row.outage_asymptotic)},
                        {"outage_mc", num(row.outage_mc)},
                        {"mc_ci_halfwidth", num(row.mc_ci_halfwidth)},
                        {"flags", row.flags.empty() ? std::vector<std::string>{"ok"} : row.flags}});
    }
    ordered_json doc{{"metadata", meta}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

} // namespace fasris::experiments
