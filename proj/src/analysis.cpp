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

#include "fasris/analysis.hpp"

#include "fasris/errors.hpp"
#include "fasris/specfun.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace fasris::analysis {

namespace {

// log of the smallest positive double; products below it report 0.
constexpr double kLogFloor = -745.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate(const OutageQuery& q)
{
    if (!(q.gamma_th >= 0.0))
        throw ValidationError("gamma_th must be non-negative");
    if (!(q.stats.sigma_bar_sq > 0.0) || !std::isfinite(q.stats.sigma_bar_sq))
        throw ValidationError("sigma_bar_sq must be positive and finite");
    channel::validate(q.partition);
    if (q.strict_common_mu) {
        const auto& mu = q.partition.block_mu_sq;
        if (std::adjacent_find(mu.begin(), mu.end(), std::not_equal_to<>()) != mu.end())
            throw ValidationError("strict_common_mu: blocks have different correlations");
    }
}

void require_positive_mu(const OutageQuery& q)
{
    for (double mu_sq : q.partition.block_mu_sq) {
        if (mu_sq <= 0.0)
            throw DomainError("closed-form bounds are undefined for mu^2 = 0");
    }
}

// Accumulates log-probabilities and turns the sum into an OutageValue.
struct LogProduct {
    double log_value = 0.0;
    double rel_err = 0.0;
    bool exact_zero = false;
    bool underflow = false;

    void add(double factor, double abs_err)
    {
        if (factor <= 0.0) {
            underflow = true;
            return;
        }
        log_value += std::log(factor);
        rel_err += abs_err / factor;
    }

    void add_log(double log_factor)
    {
        if (log_factor == kNegInf)
            exact_zero = true;
        else
            log_value += log_factor;
    }

    OutageValue finish() const
    {
        if (exact_zero)
            return {0.0, 0.0, false};
        if (underflow || log_value < kLogFloor)
            return {0.0, 0.0, true};
        const double value = std::min(1.0, std::exp(log_value));
        return {value, value * rel_err, false};
    }
};

struct BlockIntegrand {
    std::size_t ports;
    double mu_sq;
};

bool operator<(const BlockIntegrand& x, const BlockIntegrand& y)
{
    return std::tie(x.ports, x.mu_sq) < std::tie(y.ports, y.mu_sq);
}

// Integral over the shared block amplitude of the conditional all-ports-below
// probability. With drop_bessel the I0 factor (and the exp(-|eta|^2/(s mu^2))
// factor, which the caller adds in log form) leave the density.
specfun::EvalResult block_integral(const BlockIntegrand& blk, const CascadedStatistics& st,
                                   double gamma_th, const QuadratureSpec& quad, bool drop_bessel)
{
    const double s = st.sigma_bar_sq;
    const double c = drop_bessel ? 0.0 : std::abs(st.eta);
    const double shared_var = s * blk.mu_sq;
    const double own_var = s * (1.0 - blk.mu_sq);
    const double scale = std::sqrt(2.0 / own_var);
    const double b = std::sqrt(2.0 * gamma_th / own_var);
    const auto ports = static_cast<double>(blk.ports);

    auto integrand = [&](double r) {
        if (r <= 0.0)
            return 0.0;
        const double p = specfun::marcum_p1(scale * r, b);
        if (p <= 0.0)
            return 0.0;
        return std::exp(specfun::log_rician_pdf(r, c, shared_var) + ports * std::log(p));
    };
    const double r_max = c + quad.truncation_sigmas * std::sqrt(shared_var / 2.0);
    auto result = integrate(integrand, 0.0, r_max, quad);

    if (result.value > 1.0 + result.est_abs_err + 1e-13) {
        throw NumericError(fmt::format("block probability {:.17g} exceeds 1 beyond its error "
                                       "estimate {:.3e}",
                                       result.value, result.est_abs_err),
                           result.est_abs_err);
    }
    if (result.value < -result.est_abs_err) {
        throw NumericError(fmt::format("block probability {:.17g} is negative beyond its error "
                                       "estimate {:.3e}",
                                       result.value, result.est_abs_err),
                           result.est_abs_err);
    }
    result.value = std::clamp(result.value, 0.0, 1.0);
    return result;
}

OutageValue integrated_outage(const OutageQuery& q, const QuadratureSpec& quad, bool drop_bessel)
{
    validate(q);
    validate(quad);
    for (double mu_sq : q.partition.block_mu_sq) {
        if (mu_sq <= 0.0)
            throw DomainError("the block integral needs mu^2 > 0");
    }
    if (q.gamma_th == 0.0)
        return {0.0, 0.0, false};

    const double s = q.stats.sigma_bar_sq;
    const double eta_sq = std::norm(q.stats.eta);
    std::map<BlockIntegrand, specfun::EvalResult> cache;
    LogProduct product;
    for (std::size_t b = 0; b < q.partition.block_count(); ++b) {
        const BlockIntegrand blk{q.partition.block_sizes[b], q.partition.block_mu_sq[b]};
        auto it = cache.find(blk);
        if (it == cache.end())
            it = cache.emplace(blk, block_integral(blk, q.stats, q.gamma_th, quad, drop_bessel)).first;
        product.add(it->second.value, it->second.est_abs_err);
        if (drop_bessel)
            product.add_log(-eta_sq / (s * blk.mu_sq));
    }
    return product.finish();
}

} // namespace

double normalized_threshold(double rate, double p_dbm, double noise_dbm)
{
    if (!(rate >= 0.0))
        throw DomainError("rate must be non-negative");
    if (rate == 0.0)
        return 0.0;
    const double budget = std::expm1(rate * std::numbers::ln2);
    if (p_dbm == -std::numeric_limits<double>::infinity())
        return std::numeric_limits<double>::infinity();
    return budget * std::pow(10.0, (noise_dbm - p_dbm) / 10.0);
}

double scatter_variance(std::size_t m, double alpha, double beta, double k)
{
    if (m < 1 || !(alpha > 0.0) || !(beta > 0.0) || !(k >= 0.0))
        throw DomainError("scatter_variance: need M >= 1, alpha, beta > 0 and K >= 0");
    return static_cast<double>(m) * alpha * beta / (k + 1.0);
}

std::complex<double> cascaded_los_gain(std::span<const std::complex<double>> h_bar,
                                       const optimize::PhaseConfig& phases,
                                       std::span<const std::complex<double>> g_bar, double alpha,
                                       double beta, double k)
{
    if (h_bar.size() != g_bar.size() || h_bar.size() != phases.size())
        throw ValidationError("LoS vectors and phase configuration differ in length");
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < h_bar.size(); ++m)
        sum += h_bar[m] * std::polar(1.0, phases.thetas[m]) * std::conj(g_bar[m]);
    return std::sqrt(alpha * k / (k + 1.0)) * std::sqrt(beta) * sum;
}

CascadedStatistics cascaded_statistics(const channel::SystemConfig& cfg,
                                       const channel::LosChannels& los,
                                       const optimize::PhaseConfig& phases)
{
    channel::validate(cfg);
    const auto gains = channel::large_scale_gains(cfg);
    return {cascaded_los_gain(los.h_bar, phases, los.g_bar, gains.alpha, gains.beta, cfg.K),
            scatter_variance(cfg.M, gains.alpha, gains.beta, cfg.K)};
}

OutageValue outage_bdma(const OutageQuery& q, const QuadratureSpec& quad)
{
    return integrated_outage(q, quad, false);
}

OutageValue outage_approx_for_design(const OutageQuery& q, const QuadratureSpec& quad)
{
    return integrated_outage(q, quad, true);
}

OutageValue outage_upper(std::size_t blocks, const CascadedStatistics& stats, double gamma_th)
{
    if (blocks < 1)
        throw ValidationError("outage_upper: need at least one block");
    if (!(gamma_th >= 0.0))
        throw ValidationError("gamma_th must be non-negative");
    if (!(stats.sigma_bar_sq > 0.0))
        throw ValidationError("sigma_bar_sq must be positive");
    if (gamma_th == 0.0)
        return {0.0, 0.0, false};
    const double s = stats.sigma_bar_sq;
    const double p = specfun::marcum_p1(std::sqrt(2.0 / s) * std::abs(stats.eta),
                                        std::sqrt(2.0 * gamma_th / s));
    LogProduct product;
    for (std::size_t b = 0; b < blocks; ++b)
        product.add(p, 0.0);
    auto out = product.finish();
    out.est_abs_err = out.value * static_cast<double>(blocks) * 1e-13;
    return out;
}

OutageValue outage_lower(const OutageQuery& q)
{
    validate(q);
    require_positive_mu(q);
    const double s = q.stats.sigma_bar_sq;
    const double eta_sq = std::norm(q.stats.eta);
    LogProduct product;
    for (std::size_t b = 0; b < q.partition.block_count(); ++b) {
        const double mu_sq = q.partition.block_mu_sq[b];
        const auto ports = static_cast<double>(q.partition.block_sizes[b]);
        const double bracket = -std::expm1(-q.gamma_th / (s * (1.0 - mu_sq)));
        product.add_log(-eta_sq / (s * mu_sq) + std::log1p(-mu_sq) -
                        std::log1p((ports - 1.0) * mu_sq));
        product.add_log(bracket > 0.0 ? ports * std::log(bracket) : kNegInf);
    }
    return product.finish();
}

OutageValue outage_asymptotic(const OutageQuery& q)
{
    validate(q);
    require_positive_mu(q);
    const double s = q.stats.sigma_bar_sq;
    const double eta_sq = std::norm(q.stats.eta);
    LogProduct product;
    for (std::size_t b = 0; b < q.partition.block_count(); ++b) {
        const double mu_sq = q.partition.block_mu_sq[b];
        const auto ports = static_cast<double>(q.partition.block_sizes[b]);
        product.add_log(-eta_sq / (s * mu_sq) + std::log1p(-mu_sq) -
                        std::log1p((ports - 1.0) * mu_sq));
        product.add_log(q.gamma_th > 0.0
                            ? ports * (std::log(q.gamma_th) - std::log(s * (1.0 - mu_sq)))
                            : kNegInf);
    }
    return product.finish();
}

double diversity_order_estimate(std::span<const std::pair<double, double>> curve)
{
    if (curve.size() < 2)
        throw ValidationError("diversity_order_estimate: need at least two points");
    for (const auto& [gamma, outage] : curve) {
        if (!(outage > 0.0) || !(gamma > 0.0))
            throw DomainError("diversity_order_estimate: thresholds and outages must be positive");
    }
    const double last = curve.back().first;
    std::size_t first = curve.size() - 2;
    while (first > 0 && curve[first - 1].first <= 10.0 * last * (1.0 + 1e-12))
        --first;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(curve.size() - first);
    for (std::size_t i = first; i < curve.size(); ++i) {
        const double x = std::log(curve[i].first);
        const double y = std::log(curve[i].second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0))
        throw DomainError("diversity_order_estimate: thresholds must be distinct");
    return (n * sxy - sx * sy) / denom;
}

} // namespace fasris::analysis
