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

#pragma once

#include "fasris/channel.hpp"
#include "fasris/optimize.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fasris::montecarlo {

enum class CorrelationModel { toeplitz, block };

struct McSpec {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    CorrelationModel model = CorrelationModel::block;
    std::uint64_t batch = 4096; // trials per work unit
    unsigned threads = 0;       // 0: hardware concurrency
};

void validate(const McSpec& mc);

struct McEstimate {
    double outage = 0.0;
    double ci_halfwidth = 0.0; // 1.96 sqrt(p(1-p)/n)
    std::uint64_t trials_used = 0;
};

McEstimate make_estimate(std::uint64_t outages, std::uint64_t trials);

/// (P / sigma^2) max_k |g_k|^2 with both powers given in dBm.
double best_port_snr(const channel::ChannelRealization& realization, double p_dbm,
                     double noise_dbm);

/// Fraction of trials with log2(1 + SNR) < R, decided as
/// max_k |g_k|^2 < gamma_th. Trial t draws from CounterRng(mc.seed, t), so
/// the estimate does not depend on batching or thread count.
McEstimate empirical_outage(const channel::SystemConfig& cfg,
                            const channel::CorrelationPartition& part,
                            const channel::LosChannels& los, const optimize::PhaseConfig& phases,
                            const McSpec& mc);

/// Outage estimates for several thresholds from one set of draws (common
/// random numbers); entry i corresponds to gamma_thresholds[i]. The
/// partition is ignored for the Toeplitz model.
std::vector<McEstimate> empirical_outage_curve(const channel::SystemConfig& cfg,
                                               const channel::CorrelationPartition& part,
                                               const channel::LosChannels& los,
                                               const optimize::PhaseConfig& phases,
                                               const McSpec& mc,
                                               std::span<const double> gamma_thresholds);

/// max_k |g_k|^2 for every trial, in trial order.
std::vector<double> best_port_gains(const channel::SystemConfig& cfg,
                                    const channel::CorrelationPartition& part,
                                    const channel::LosChannels& los,
                                    const optimize::PhaseConfig& phases, const McSpec& mc);

} // namespace fasris::montecarlo
