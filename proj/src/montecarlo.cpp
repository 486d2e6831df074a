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

#include "fasris/montecarlo.hpp"

#include "fasris/analysis.hpp"
#include "fasris/errors.hpp"
#include "fasris/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

namespace fasris::montecarlo {

namespace {

double max_gain_sq(const channel::ChannelRealization& r)
{
    double best = 0.0;
    for (const auto& g : r.port_gains)
        best = std::max(best, std::norm(g));
    return best;
}

unsigned worker_count(const McSpec& mc, std::uint64_t batches)
{
    unsigned n = mc.threads != 0 ? mc.threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(n, batches));
}

// Runs fn(first_trial, end_trial) over all batches on a small worker pool.
template <typename Fn>
void for_each_batch(const McSpec& mc, Fn&& fn)
{
    const std::uint64_t batches = (mc.trials + mc.batch - 1) / mc.batch;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < batches; b = next++)
            fn(b * mc.batch, std::min(mc.trials, (b + 1) * mc.batch));
    };
    const unsigned n = worker_count(mc, batches);
    if (n <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i)
        pool.emplace_back(worker);
}

channel::ChannelSampler make_sampler(const channel::SystemConfig& cfg,
                                     const channel::CorrelationPartition& part,
                                     const channel::LosChannels& los,
                                     const optimize::PhaseConfig& phases, const McSpec& mc)
{
    if (mc.model == CorrelationModel::toeplitz) {
        return channel::ChannelSampler(
            cfg, channel::correlation_factor(channel::jakes_matrix(cfg.N, cfg.W)), los, phases);
    }
    return channel::ChannelSampler(cfg, part, los, phases);
}

} // namespace

void validate(const McSpec& mc)
{
    if (mc.trials < 1 || mc.batch < 1)
        throw ValidationError("Monte-Carlo trials and batch size must be at least 1");
}

McEstimate make_estimate(std::uint64_t outages, std::uint64_t trials)
{
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(outages) / n;
    return {p, 1.96 * std::sqrt(p * (1.0 - p) / n), trials};
}

double best_port_snr(const channel::ChannelRealization& realization, double p_dbm,
                     double noise_dbm)
{
    if (realization.port_gains.empty())
        throw ValidationError("best_port_snr: empty realization");
    const double snr_scale = std::pow(10.0, (p_dbm - noise_dbm) / 10.0);
    return snr_scale * max_gain_sq(realization);
}

std::vector<double> best_port_gains(const channel::SystemConfig& cfg,
                                    const channel::CorrelationPartition& part,
                                    const channel::LosChannels& los,
                                    const optimize::PhaseConfig& phases, const McSpec& mc)
{
    validate(mc);
    const auto sampler = make_sampler(cfg, part, los, phases, mc);
    std::vector<double> out(mc.trials);
    for_each_batch(mc, [&](std::uint64_t first, std::uint64_t end) {
        for (std::uint64_t t = first; t < end; ++t) {
            CounterRng rng(mc.seed, t);
            out[t] = max_gain_sq(sampler.draw(rng));
        }
    });
    return out;
}

std::vector<McEstimate> empirical_outage_curve(const channel::SystemConfig& cfg,
                                               const channel::CorrelationPartition& part,
                                               const channel::LosChannels& los,
                                               const optimize::PhaseConfig& phases,
                                               const McSpec& mc,
                                               std::span<const double> gamma_thresholds)
{
    validate(mc);
    for (double g : gamma_thresholds) {
        if (!(g >= 0.0))
            throw ValidationError("thresholds must be non-negative");
    }
    const auto sampler = make_sampler(cfg, part, los, phases, mc);
    const std::size_t n = gamma_thresholds.size();
    std::vector<std::atomic<std::uint64_t>> counts(n);
    for_each_batch(mc, [&](std::uint64_t first, std::uint64_t end) {
        std::vector<std::uint64_t> local(n, 0);
        for (std::uint64_t t = first; t < end; ++t) {
            CounterRng rng(mc.seed, t);
            const double best = max_gain_sq(sampler.draw(rng));
            for (std::size_t i = 0; i < n; ++i) {
                if (best < gamma_thresholds[i])
                    ++local[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            counts[i] += local[i];
    });
    std::vector<McEstimate> out;
    out.reserve(n);
    for (auto& c : counts)
        out.push_back(make_estimate(c.load(), mc.trials));
    return out;
}

McEstimate empirical_outage(const channel::SystemConfig& cfg,
                            const channel::CorrelationPartition& part,
                            const channel::LosChannels& los, const optimize::PhaseConfig& phases,
                            const McSpec& mc)
{
    const double gamma = analysis::normalized_threshold(cfg.R, cfg.P, cfg.noise_power);
    return empirical_outage_curve(cfg, part, los, phases, mc, std::span<const double>(&gamma, 1))
        .front();
}

} // namespace fasris::montecarlo
