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

#include "fasris/channel.hpp"

#include "fasris/errors.hpp"
#include "fasris/specfun.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace fasris::channel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CN(0, 1): independent N(0, 1/2) real and imaginary parts.
cdouble complex_normal(std::normal_distribution<double>& nd, CounterRng& rng)
{
    const double re = nd(rng);
    const double im = nd(rng);
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

void check_position(const Vec3& p, const char* name)
{
    for (double v : p) {
        if (!std::isfinite(v))
            throw ValidationError(fmt::format("{} has a non-finite coordinate", name));
    }
}

} // namespace

void validate(const SystemConfig& cfg)
{
    if (cfg.N < 1 || cfg.M < 1)
        throw ValidationError("N and M must be at least 1");
    if (!(cfg.W > 0.0))
        throw ValidationError("W must be positive");
    if (!(cfg.K >= 0.0) || !(cfg.K_bs_ris >= 0.0))
        throw ValidationError("Rician factors must be non-negative");
    if (!(cfg.pl_exp_bs_ris > 0.0) || !(cfg.pl_exp_ris_user > 0.0))
        throw ValidationError("path-loss exponents must be positive");
    if (!(cfg.R >= 0.0))
        throw ValidationError("rate must be non-negative");
    if (std::isnan(cfg.P) || std::isnan(cfg.noise_power) || std::isnan(cfg.pl_ref_db))
        throw ValidationError("power levels must not be NaN");
    check_position(cfg.bs_pos, "bs_pos");
    check_position(cfg.ris_pos, "ris_pos");
    check_position(cfg.user_pos, "user_pos");
    if (cfg.bs_pos == cfg.ris_pos || cfg.ris_pos == cfg.user_pos || cfg.bs_pos == cfg.user_pos)
        throw ValidationError("BS, RIS and user positions must be pairwise distinct");
}

double distance(const Vec3& a, const Vec3& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

double path_loss(double dist, double exponent, double ref_db)
{
    if (!(dist > 0.0))
        throw DomainError("path_loss: distance must be positive");
    return std::pow(10.0, -ref_db / 10.0) * std::pow(dist, -exponent);
}

LargeScaleGains large_scale_gains(const SystemConfig& cfg)
{
    return {path_loss(distance(cfg.ris_pos, cfg.user_pos), cfg.pl_exp_ris_user, cfg.pl_ref_db),
            path_loss(distance(cfg.bs_pos, cfg.ris_pos), cfg.pl_exp_bs_ris, cfg.pl_ref_db)};
}

LosChannels generate_los(std::size_t m, std::uint64_t seed)
{
    CounterRng rng(seed, streams::kLos);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LosChannels los;
    los.g_bar.reserve(m);
    los.h_bar.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        los.g_bar.push_back(std::polar(1.0, kTwoPi * unit(rng)));
    for (std::size_t i = 0; i < m; ++i)
        los.h_bar.push_back(std::polar(1.0, kTwoPi * unit(rng)));
    return los;
}

Eigen::MatrixXd jakes_matrix(std::size_t n, double w)
{
    if (n < 1)
        throw ValidationError("jakes_matrix: N must be at least 1");
    if (!(w > 0.0))
        throw ValidationError("jakes_matrix: W must be positive");
    if (n == 1)
        return Eigen::MatrixXd::Identity(1, 1);
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k)
        row[k] = specfun::bessel_j0(kTwoPi * static_cast<double>(k) * w / static_cast<double>(n - 1));
    Eigen::MatrixXd sigma(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            sigma(i, j) = row[i > j ? i - j : j - i];
    }
    return sigma;
}

std::size_t CorrelationPartition::port_count() const
{
    return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void validate(const CorrelationPartition& part, std::size_t n)
{
    if (part.block_sizes.empty())
        throw ValidationError("partition has no blocks");
    if (part.block_sizes.size() != part.block_mu_sq.size())
        throw ValidationError("partition sizes and correlations differ in length");
    for (std::size_t b = 0; b < part.block_count(); ++b) {
        if (part.block_sizes[b] < 1)
            throw ValidationError("partition block sizes must be at least 1");
        const double mu_sq = part.block_mu_sq[b];
        if (!(mu_sq >= 0.0 && mu_sq <= kMuSqMax))
            throw ValidationError(fmt::format("block correlation {} outside [0, 1-1e-6]", mu_sq));
    }
    if (n > 0 && part.port_count() != n)
        throw ValidationError(
            fmt::format("partition covers {} ports, expected {}", part.port_count(), n));
}

namespace {

CorrelationPartition heuristic_partition(const Eigen::MatrixXd& sigma, double tau)
{
    if (!(tau > 0.0 && tau <= 1.0))
        throw ValidationError("heuristic threshold must lie in (0, 1]");
    const auto n = static_cast<std::size_t>(sigma.rows());
    CorrelationPartition part;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1; // exclusive
        double block_min = 1.0;
        while (end < n) {
            double candidate = block_min;
            for (std::size_t i = start; i < end; ++i) {
                const double c = sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(end));
                candidate = std::min(candidate, c * c);
            }
            if (candidate < tau)
                break;
            block_min = candidate;
            ++end;
        }
        part.block_sizes.push_back(end - start);
        part.block_mu_sq.push_back(end - start == 1 ? std::min(tau, kMuSqMax)
                                                    : std::min(block_min, kMuSqMax));
        start = end;
    }
    return part;
}

CorrelationPartition eigen_partition(const Eigen::MatrixXd& sigma, double mu_sq)
{
    const auto n = static_cast<std::size_t>(sigma.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigenvalue decomposition of the correlation matrix failed");
    std::vector<double> lambda(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());

    std::size_t blocks = 0;
    while (blocks < n && lambda[blocks] >= 0.5)
        ++blocks;
    blocks = std::max<std::size_t>(blocks, 1);
    const double total = std::accumulate(lambda.begin(), lambda.begin() + blocks, 0.0);

    // Hamilton apportionment of N seats, every block getting at least one.
    std::vector<std::size_t> sizes(blocks, 1);
    std::size_t assigned = blocks;
    std::vector<double> remainder(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const double quota = static_cast<double>(n) * lambda[b] / total;
        const auto whole = static_cast<std::size_t>(std::floor(quota));
        if (whole > 1) {
            sizes[b] = whole;
            assigned += whole - 1;
        }
        remainder[b] = quota - std::floor(quota);
    }
    std::vector<std::size_t> order(blocks);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
    for (std::size_t i = 0; assigned < n; i = (i + 1) % blocks, ++assigned)
        ++sizes[order[i]];
    while (assigned > n) {
        // only possible when many quotas were below one; trim the largest blocks
        auto largest = std::max_element(sizes.begin(), sizes.end());
        --*largest;
        --assigned;
    }

    CorrelationPartition part;
    part.block_sizes = sizes;
    part.block_mu_sq.assign(blocks, std::min(mu_sq, kMuSqMax));
    return part;
}

} // namespace

CorrelationPartition bdma_partition(const Eigen::MatrixXd& sigma, const PartitionPolicy& policy)
{
    if (sigma.rows() < 1 || sigma.rows() != sigma.cols())
        throw ValidationError("correlation matrix must be square and non-empty");
    const auto n = static_cast<std::size_t>(sigma.rows());

    CorrelationPartition part;
    if (const auto* h = std::get_if<HeuristicPartition>(&policy)) {
        part = heuristic_partition(sigma, h->tau);
    } else if (const auto* e = std::get_if<EigenPartition>(&policy)) {
        if (!(e->mu_sq >= 0.0 && e->mu_sq < 1.0))
            throw ValidationError("block correlation must lie in [0, 1)");
        part = eigen_partition(sigma, e->mu_sq);
    } else {
        const auto& x = std::get<ExplicitPartition>(policy);
        part.block_sizes = x.sizes;
        if (x.mu_sq.size() == 1)
            part.block_mu_sq.assign(x.sizes.size(), x.mu_sq.front());
        else
            part.block_mu_sq = x.mu_sq;
        for (double mu_sq : part.block_mu_sq) {
            if (!(mu_sq >= 0.0 && mu_sq < 1.0))
                throw ValidationError(fmt::format("block correlation {} outside [0, 1)", mu_sq));
        }
        for (double& mu_sq : part.block_mu_sq)
            mu_sq = std::min(mu_sq, kMuSqMax);
    }
    validate(part, n);
    return part;
}

CorrelationFactor correlation_factor(const Eigen::MatrixXd& sigma)
{
    if (sigma.rows() < 1 || sigma.rows() != sigma.cols())
        throw ValidationError("correlation matrix must be square and non-empty");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigenvalue decomposition of the correlation matrix failed");
    Eigen::VectorXd lambda = solver.eigenvalues();
    const double floor = -1e-8 * static_cast<double>(sigma.rows());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < floor)
            throw NumericError(fmt::format("correlation matrix is not positive semi-definite "
                                           "(eigenvalue {:.6e})",
                                           lambda(i)),
                               lambda(i));
        lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
    }
    const Eigen::MatrixXd& v = solver.eigenvectors();
    return {v * lambda.asDiagonal() * v.transpose()};
}

ChannelSampler::ChannelSampler(const SystemConfig& cfg, const CorrelationPartition& part,
                               const LosChannels& los, const optimize::PhaseConfig& phases)
    : part_(part)
{
    validate(part, cfg.N);
    init_common(cfg, los, phases);
}

ChannelSampler::ChannelSampler(const SystemConfig& cfg, const CorrelationFactor& factor,
                               const LosChannels& los, const optimize::PhaseConfig& phases)
    : toeplitz_(true), root_(factor.root)
{
    if (static_cast<std::size_t>(root_.rows()) != cfg.N || root_.rows() != root_.cols())
        throw ValidationError("correlation factor does not match N");
    init_common(cfg, los, phases);
}

void ChannelSampler::init_common(const SystemConfig& cfg, const LosChannels& los,
                                 const optimize::PhaseConfig& phases)
{
    validate(cfg);
    optimize::validate(phases, cfg.M);
    if (los.g_bar.size() != cfg.M || los.h_bar.size() != cfg.M)
        throw ValidationError("LoS vectors do not match M");
    n_ = cfg.N;
    m_ = cfg.M;
    const auto gains = large_scale_gains(cfg);
    los_amp_ = std::sqrt(gains.alpha * cfg.K / (cfg.K + 1.0));
    nlos_std_ = std::sqrt(gains.alpha / (cfg.K + 1.0));
    sqrt_beta_ = std::sqrt(gains.beta);
    rician_bs_ris_ = cfg.bs_ris_model == BsRisModel::rician;
    k_bs_ris_ = cfg.K_bs_ris;
    h_bar_ = los.h_bar;
    g_bar_ = los.g_bar;
    reflection_ = optimize::reflection_coefficients(phases);
    fixed_weights_.resize(m_);
    for (std::size_t m = 0; m < m_; ++m)
        fixed_weights_[m] = reflection_[m] * std::conj(sqrt_beta_ * g_bar_[m]);
}

std::vector<cdouble> ChannelSampler::weights(CounterRng& rng) const
{
    if (!rician_bs_ris_)
        return fixed_weights_;
    std::normal_distribution<double> nd;
    const double los = std::sqrt(k_bs_ris_ / (k_bs_ris_ + 1.0));
    const double scatter = std::sqrt(1.0 / (k_bs_ris_ + 1.0));
    std::vector<cdouble> w(m_);
    for (std::size_t m = 0; m < m_; ++m) {
        const cdouble g = sqrt_beta_ * (los * g_bar_[m] + scatter * complex_normal(nd, rng));
        w[m] = reflection_[m] * std::conj(g);
    }
    return w;
}

ChannelRealization ChannelSampler::draw(CounterRng& rng) const
{
    const auto w = weights(rng);
    cdouble los_term = 0.0;
    for (std::size_t m = 0; m < m_; ++m)
        los_term += h_bar_[m] * w[m];
    los_term *= los_amp_;

    std::normal_distribution<double> nd;
    auto projected = [&] {
        cdouble s = 0.0;
        for (std::size_t m = 0; m < m_; ++m)
            s += complex_normal(nd, rng) * w[m];
        return nlos_std_ * s;
    };

    ChannelRealization out;
    out.port_gains.resize(n_);
    if (!toeplitz_) {
        std::size_t k = 0;
        for (std::size_t b = 0; b < part_.block_count(); ++b) {
            const double mu = std::sqrt(part_.block_mu_sq[b]);
            const double rest = std::sqrt(1.0 - part_.block_mu_sq[b]);
            const cdouble shared = projected();
            for (std::size_t i = 0; i < part_.block_sizes[b]; ++i, ++k)
                out.port_gains[k] = los_term + mu * shared + rest * projected();
        }
        return out;
    }

    // u = sum_m z_m w_m with z_m the m-th i.i.d. column; gains = los + std * L u
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t m = 0; m < m_; ++m) {
        for (std::size_t k = 0; k < n_; ++k)
            u(static_cast<Eigen::Index>(k)) += complex_normal(nd, rng) * w[m];
    }
    const Eigen::VectorXd re = root_ * u.real();
    const Eigen::VectorXd im = root_ * u.imag();
    for (std::size_t k = 0; k < n_; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        out.port_gains[k] = los_term + nlos_std_ * cdouble(re(i), im(i));
    }
    return out;
}

Eigen::MatrixXcd ChannelSampler::draw_port_channels(CounterRng& rng) const
{
    // consume the BS-RIS draw so both views of a trial stay aligned
    (void)weights(rng);
    std::normal_distribution<double> nd;
    const auto n = static_cast<Eigen::Index>(n_);
    const auto mm = static_cast<Eigen::Index>(m_);
    Eigen::RowVectorXcd los(mm);
    for (Eigen::Index m = 0; m < mm; ++m)
        los(m) = los_amp_ * h_bar_[static_cast<std::size_t>(m)];
    auto scatter = [&] {
        Eigen::RowVectorXcd v(mm);
        for (Eigen::Index m = 0; m < mm; ++m)
            v(m) = nlos_std_ * complex_normal(nd, rng);
        return v;
    };

    Eigen::MatrixXcd h(n, mm);
    if (!toeplitz_) {
        Eigen::Index k = 0;
        for (std::size_t b = 0; b < part_.block_count(); ++b) {
            const double mu = std::sqrt(part_.block_mu_sq[b]);
            const double rest = std::sqrt(1.0 - part_.block_mu_sq[b]);
            const Eigen::RowVectorXcd shared = scatter();
            for (std::size_t i = 0; i < part_.block_sizes[b]; ++i, ++k)
                h.row(k) = los + mu * shared + rest * scatter();
        }
        return h;
    }
    Eigen::MatrixXcd z(n, mm);
    for (Eigen::Index m = 0; m < mm; ++m) {
        for (Eigen::Index k = 0; k < n; ++k)
            z(k, m) = nlos_std_ * complex_normal(nd, rng);
    }
    h = root_.cast<cdouble>() * z;
    h.rowwise() += los;
    return h;
}

ChannelRealization sample_block_channels(const SystemConfig& cfg, const CorrelationPartition& part,
                                         const LosChannels& los,
                                         const optimize::PhaseConfig& phases, CounterRng& rng)
{
    return ChannelSampler(cfg, part, los, phases).draw(rng);
}

ChannelRealization sample_toeplitz_channels(const SystemConfig& cfg, const Eigen::MatrixXd& sigma,
                                            const LosChannels& los,
                                            const optimize::PhaseConfig& phases, CounterRng& rng)
{
    return ChannelSampler(cfg, correlation_factor(sigma), los, phases).draw(rng);
}

} // namespace fasris::channel
