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
#include "fasris/quadrature.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <utility>

namespace fasris::analysis {

/// Sufficient statistics of the cascaded channel: the deterministic LoS
/// cascade eta and the variance of the scattered part.
struct CascadedStatistics {
    std::complex<double> eta;
    double sigma_bar_sq = 1.0;
};

struct OutageQuery {
    double gamma_th = 0.0; // amplitude-squared threshold, same units as |eta|^2
    channel::CorrelationPartition partition;
    CascadedStatistics stats;
    // Reject partitions whose blocks do not share one mu^2.
    bool strict_common_mu = false;
};

/// An outage probability in [0, 1]. `underflow` is set when the log-domain
/// product fell below e^{-745} and the value was reported as 0.
struct OutageValue {
    double value = 0.0;
    double est_abs_err = 0.0;
    bool underflow = false;
};

/// (2^R - 1) * 10^{(noise_dbm - p_dbm)/10}; 0 for R = 0 and +inf for
/// p_dbm = -inf.
double normalized_threshold(double rate, double p_dbm, double noise_dbm);

/// M alpha beta / (K + 1).
double scatter_variance(std::size_t m, double alpha, double beta, double k);

/// sqrt(alpha K/(K+1)) sum_m h(m) exp(j theta_m) sqrt(beta) conj(g(m)).
std::complex<double> cascaded_los_gain(std::span<const std::complex<double>> h_bar,
                                       const optimize::PhaseConfig& phases,
                                       std::span<const std::complex<double>> g_bar, double alpha,
                                       double beta, double k);

/// eta and sigma_bar^2 for a configuration, LoS draw and phase setting.
CascadedStatistics cascaded_statistics(const channel::SystemConfig& cfg,
                                       const channel::LosChannels& los,
                                       const optimize::PhaseConfig& phases);

/// Outage under the block-diagonal correlation model.
///
/// Each block contributes the integral over its shared amplitude
/// Lambda_b ~ Rice(|eta|, sigma^2 mu_b^2) of the conditional probability that
/// all L_b ports stay below sqrt(gamma_th),
///   [1 - Q1(sqrt(2/(s(1-mu_b^2))) r, sqrt(2 gamma_th/(s(1-mu_b^2))))]^{L_b},
/// and the blocks multiply. Integration runs over
/// [0, |eta| + truncation_sigmas * sqrt(s mu_b^2 / 2)].
OutageValue outage_bdma(const OutageQuery& q, const QuadratureSpec& quad = {});

/// Independent-antenna equivalent: every block collapses to one port,
/// [1 - Q1(sqrt(2/s)|eta|, sqrt(2 gamma_th/s))]^B. Upper bound on outage_bdma.
OutageValue outage_upper(std::size_t blocks, const CascadedStatistics& stats, double gamma_th);

/// Closed-form lower bound obtained by dropping every I0 factor:
///   prod_b exp(-|eta|^2/(s mu_b^2)) (1-mu_b^2)/(1+(L_b-1)mu_b^2)
///          [1 - exp(-gamma_th/(s(1-mu_b^2)))]^{L_b}.
OutageValue outage_lower(const OutageQuery& q);

/// High-SNR form of outage_lower, a monomial of degree N in gamma_th.
/// Capped at 1.
OutageValue outage_asymptotic(const OutageQuery& q);

/// outage_bdma with I0 of the shared-amplitude density replaced by 1; the
/// objective behind the phase design.
OutageValue outage_approx_for_design(const OutageQuery& q, const QuadratureSpec& quad = {});

/// Least-squares slope of log(outage) against log(gamma_th) over the last
/// decade of points (gamma_th descending). Throws DomainError for
/// non-positive outage values.
double diversity_order_estimate(std::span<const std::pair<double, double>> curve);

} // namespace fasris::analysis
