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
#include "fasris/channel.hpp"
#include "fasris/errors.hpp"
#include "fasris/montecarlo.hpp"
#include "fasris/optimize.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace an = fasris::analysis;
namespace ch = fasris::channel;
namespace opt = fasris::optimize;
using fasris::testing::unit_geometry;

namespace {

an::OutageQuery query(double gamma, ch::CorrelationPartition part, double eta, double s2 = 1.0)
{
    return an::OutageQuery{gamma, std::move(part), an::CascadedStatistics{{eta, 0.0}, s2}, false};
}

} // namespace

TEST_CASE("analysis - threshold and scatter variance")
{
    CHECK(an::normalized_threshold(0.0, 14.0, -104.0) == 0.0);
    CHECK(an::normalized_threshold(1.0, -30.0, -30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(an::normalized_threshold(5.0, 14.0, -104.0) ==
          doctest::Approx(31.0 * std::pow(10.0, -11.8)).epsilon(1e-14));
    CHECK(an::normalized_threshold(5.0, 14.0, -104.0) == doctest::Approx(4.913168896629444e-11).epsilon(1e-13));
    CHECK(std::isinf(an::normalized_threshold(2.0, -INFINITY, -104.0)));
    CHECK_THROWS_AS(an::normalized_threshold(-1.0, 0.0, 0.0), fasris::DomainError);

    CHECK(an::scatter_variance(1, 1.0, 1.0, 0.0) == 1.0);
    CHECK(an::scatter_variance(18, 0.3, 0.2, 1.0) == 2.0 * an::scatter_variance(9, 0.3, 0.2, 1.0));
    // reference deployment: 9 alpha beta / 2 with alpha, beta from the geometry
    const ch::SystemConfig cfg;
    const double alpha = 1e-3 * std::pow(std::sqrt(35.0 * 35 + 15 * 15 + 25), -2.8);
    const double beta = 1.206330295823407e-06;
    const auto g = ch::large_scale_gains(cfg);
    CHECK(g.alpha == doctest::Approx(alpha).epsilon(1e-13));
    CHECK(g.beta == doctest::Approx(beta).epsilon(1e-13));
    CHECK(an::scatter_variance(9, g.alpha, g.beta, 1.0) == doctest::Approx(4.5 * alpha * beta).epsilon(1e-13));
}

TEST_CASE("analysis - cascaded LoS gain")
{
    const auto los = ch::generate_los(9, 4);
    const auto best = opt::optimal_phases(los.h_bar, los.g_bar).phases;
    CHECK(std::abs(an::cascaded_los_gain(los.h_bar, best, los.g_bar, 0.3, 0.2, 0.0)) == 0.0);
    const double coherent = std::sqrt(0.3 * 0.2 * 1.0 / 2.0) * 9.0;
    CHECK(std::abs(an::cascaded_los_gain(los.h_bar, best, los.g_bar, 0.3, 0.2, 1.0)) ==
          doctest::Approx(coherent).epsilon(1e-13));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto rnd = opt::random_phases(9, s);
        CHECK(std::abs(an::cascaded_los_gain(los.h_bar, rnd, los.g_bar, 0.3, 0.2, 1.0)) <= coherent * (1 + 1e-14));
    }
    CHECK_THROWS_AS(an::cascaded_los_gain(los.h_bar, opt::random_phases(3, 1), los.g_bar, 1, 1, 1),
                    fasris::ValidationError);

    // |eta|^2 never exceeds M^2 alpha beta K/(K+1)
    auto cfg = ch::SystemConfig{};
    const auto stats = an::cascaded_statistics(cfg, los, best);
    const auto g = ch::large_scale_gains(cfg);
    CHECK(std::norm(stats.eta) <= 81.0 * g.alpha * g.beta * 0.5 * (1 + 1e-12));
}

TEST_CASE("analysis - BDMA outage limits and Monte-Carlo cross-check")
{
    const ch::CorrelationPartition part{{2, 3}, {0.7, 0.4}};
    CHECK(an::outage_bdma(query(0.0, part, 1.5)).value == 0.0);
    CHECK(std::abs(an::outage_bdma(query(1e6, part, 1.5)).value - 1.0) <= 1e-9);

    // N = 4, M = 4, one block with mu^2 = 0.5, K = 1, alpha = beta = 1, gamma = sigma^2
    auto cfg = unit_geometry(4, 4, 1.0);
    cfg.noise_power = 0.0;
    cfg.P = 0.0;
    cfg.R = std::log2(3.0);
    const auto los = ch::generate_los(4, 12);
    const auto phases = opt::optimal_phases(los.h_bar, los.g_bar).phases;
    const ch::CorrelationPartition single{{4}, {0.5}};
    const auto stats = an::cascaded_statistics(cfg, los, phases);
    REQUIRE(stats.sigma_bar_sq == doctest::Approx(2.0));
    const double gamma = an::normalized_threshold(cfg.R, cfg.P, cfg.noise_power);
    REQUIRE(gamma == doctest::Approx(stats.sigma_bar_sq));
    const auto analytic = an::outage_bdma(an::OutageQuery{gamma, single, stats, false});

    fasris::montecarlo::McSpec mc;
    mc.trials = 1000000;
    mc.seed = 3;
    const auto est = fasris::montecarlo::empirical_outage(cfg, single, los, phases, mc);
    const double se = std::sqrt(analytic.value * (1 - analytic.value) / mc.trials);
    CAPTURE(analytic.value);
    CAPTURE(est.outage);
    CHECK(std::abs(est.outage - analytic.value) <= 3.0 * se);
}

TEST_CASE("analysis - upper bound")
{
    an::CascadedStatistics stats{{0.0, 0.0}, 2.0};
    CHECK(an::outage_upper(3, stats, 0.0).value == 0.0);
    CHECK(an::outage_upper(1, stats, 0.7).value == doctest::Approx(1.0 - std::exp(-0.35)).epsilon(1e-13));
    stats.eta = {1.1, -0.4};
    const double one = an::outage_upper(1, stats, 0.9).value;
    CHECK(an::outage_upper(2, stats, 0.9).value == doctest::Approx(one * one).epsilon(1e-13));
    CHECK_THROWS_AS(an::outage_upper(0, stats, 0.9), fasris::ValidationError);
}

TEST_CASE("analysis - lower bound")
{
    const ch::CorrelationPartition part{{1}, {0.6}};
    CHECK(an::outage_lower(query(0.0, part, 0.5)).value == 0.0);
    const double g = 0.8, s2 = 1.3;
    CHECK(an::outage_lower(query(g, part, 0.0, s2)).value ==
          doctest::Approx(0.4 * (1.0 - std::exp(-g / (s2 * 0.4)))).epsilon(1e-13));
    CHECK_THROWS_AS(an::outage_lower(query(g, ch::CorrelationPartition{{2}, {0.0}}, 0.3)),
                    fasris::DomainError);

    // heterogeneous blocks can be refused
    auto q = query(g, ch::CorrelationPartition{{2, 2}, {0.5, 0.6}}, 0.3);
    CHECK_NOTHROW(an::outage_lower(q));
    q.strict_common_mu = true;
    CHECK_THROWS_AS(an::outage_lower(q), fasris::ValidationError);
}

TEST_CASE("analysis - asymptote")
{
    const ch::CorrelationPartition part{{2, 3, 1}, {0.9, 0.5, 0.7}};
    const double a = an::outage_asymptotic(query(1e-4, part, 0.8)).value;
    const double b = an::outage_asymptotic(query(1e-3, part, 0.8)).value;
    CHECK(b / a == doctest::Approx(1e6).epsilon(1e-12));

    CHECK(an::outage_asymptotic(query(0.02, ch::CorrelationPartition{{1}, {0.6}}, 0.0, 2.0)).value ==
          doctest::Approx(0.01).epsilon(1e-13));

    const ch::CorrelationPartition common{{3, 2}, {0.8, 0.8}};
    const double gamma = 1e-3 * 1.0 * 0.2;
    const double lo = an::outage_lower(query(gamma, common, 0.6)).value;
    const double as = an::outage_asymptotic(query(gamma, common, 0.6)).value;
    CHECK(std::abs(as / lo - 1.0) <= 0.01);
    // the asymptote is capped at certain outage
    CHECK(an::outage_asymptotic(query(1e3, common, 0.0)).value == 1.0);
}

TEST_CASE("analysis - design approximation")
{
    const ch::CorrelationPartition part{{3, 2}, {0.8, 0.8}};
    const auto q0 = query(0.7, part, 0.0);
    CHECK(an::outage_approx_for_design(q0).value ==
          doctest::Approx(an::outage_bdma(q0).value).epsilon(1e-12));
    CHECK(an::outage_approx_for_design(query(0.0, part, 1.0)).value == 0.0);
    double prev = 2.0;
    for (int i = 0; i <= 30; ++i) {
        const double v = an::outage_approx_for_design(query(0.7, part, 0.1 * i)).value;
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("analysis - diversity order")
{
    std::vector<std::pair<double, double>> pts;
    const ch::CorrelationPartition four{{2, 2}, {0.6, 0.6}};
    for (double g = 1e-2; g >= 0.99e-4; g /= std::sqrt(10.0))
        pts.emplace_back(g, an::outage_asymptotic(query(g, four, 0.5)).value);
    CHECK(an::diversity_order_estimate(pts) == doctest::Approx(4.0).epsilon(1e-6));

    pts.clear();
    for (double g = 1.0; g >= 1e-3; g /= 2.0)
        pts.emplace_back(g, 3.0 * g * g);
    CHECK(an::diversity_order_estimate(pts) == doctest::Approx(2.0).epsilon(1e-12));

    pts.clear();
    for (double g = 1e-2; g >= 0.99e-4; g /= std::sqrt(10.0))
        pts.emplace_back(g, an::outage_bdma(query(g, four, 0.5)).value);
    const double d = an::diversity_order_estimate(pts);
    CHECK(d >= 3.6);
    CHECK(d <= 4.4);

    pts.back().second = 0.0;
    CHECK_THROWS_AS(an::diversity_order_estimate(pts), fasris::DomainError);
}

TEST_CASE("analysis - range, monotonicity and limits")
{
    const ch::CorrelationPartition part{{4, 3, 3}, {0.97, 0.97, 0.97}};
    const double eta = 2.5;
    double prev[4] = {-1, -1, -1, -1};
    int bad = 0;
    // 20 points per decade from 1e-4 to 1e2 (sigma^2 = 1)
    for (int i = 0; i <= 120; ++i) {
        const double g = std::pow(10.0, -4.0 + i / 20.0);
        const auto q = query(g, part, eta);
        const double v[4] = {an::outage_bdma(q).value, an::outage_upper(3, q.stats, g).value,
                             an::outage_lower(q).value, an::outage_approx_for_design(q).value};
        for (int k = 0; k < 4; ++k) {
            bad += v[k] < 0.0 || v[k] > 1.0;
            bad += v[k] < prev[k];
            prev[k] = v[k];
        }
        bad += v[2] > v[0] + 1e-6;
        bad += v[0] > v[1] + 1e-6;
    }
    CHECK(bad == 0);

    // mu^2 close to one approaches the independent-block bound
    const ch::CorrelationPartition tight{{4, 3, 3}, {ch::kMuSqMax, ch::kMuSqMax, ch::kMuSqMax}};
    for (double g : {0.5, 2.0, 6.0}) {
        const auto q = query(g, tight, eta);
        const double up = an::outage_upper(3, q.stats, g).value;
        CHECK(std::abs(an::outage_bdma(q).value / up - 1.0) <= 0.01);
    }

    // asymptote over lower bound tends to one
    const double g = 1e-4 * (1.0 - 0.97);
    const auto q = query(g, part, eta);
    CHECK(std::abs(an::outage_asymptotic(q).value / an::outage_lower(q).value - 1.0) <= 0.01);

    // tighter tolerances move the result by no more than its error estimate allows
    an::QuadratureSpec loose;
    loose.rel_tol = 1e-8;
    an::QuadratureSpec tight_q = loose;
    tight_q.rel_tol = 0.5e-8;
    tight_q.abs_tol = 0.5e-300;
    const auto q2 = query(4.0, part, eta);
    const auto a = an::outage_bdma(q2, loose);
    const auto b = an::outage_bdma(q2, tight_q);
    CHECK(std::abs(a.value - b.value) <= 10.0 * a.est_abs_err);
}

TEST_CASE("analysis - deep tail underflows to a flagged zero")
{
    const ch::CorrelationPartition part{std::vector<std::size_t>(40, 1), std::vector<double>(40, 0.97)};
    const auto v = an::outage_bdma(query(1e-20, part, 30.0));
    CHECK(v.value == 0.0);
    CHECK(v.underflow);
    const auto u = an::outage_upper(40, an::CascadedStatistics{{30.0, 0.0}, 1.0}, 1e-20);
    CHECK(u.value == 0.0);
    CHECK(u.underflow);
}
