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

#include "fasris/optimize.hpp"
#include "fasris/rng.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace fasris::channel {

using Vec3 = std::array<double, 3>;
using cdouble = std::complex<double>;

enum class BsRisModel { los, rician };

/// Physical parameters of one FAS-RIS link. Defaults reproduce the reference
/// deployment: BS at (0,0,5), RIS at (15,15,5), user at (50,0,0), 50 ports
/// over 5 wavelengths, Rician factor 1, rate 5 bit/s/Hz, -104 dBm noise.
struct SystemConfig {
    Vec3 bs_pos{0.0, 0.0, 5.0};
    Vec3 ris_pos{15.0, 15.0, 5.0};
    Vec3 user_pos{50.0, 0.0, 0.0};
    std::size_t N = 50;        // FAS ports
    std::size_t M = 9;         // RIS elements
    double W = 5.0;            // FAS length in wavelengths
    double K = 1.0;            // RIS-user Rician factor (linear)
    double P = 14.0;           // transmit power, dBm
    double noise_power = -104.0; // dBm
    double R = 5.0;            // target rate, bit/s/Hz
    double pl_exp_bs_ris = 2.2;
    double pl_exp_ris_user = 2.8;
    double pl_ref_db = 30.0;   // loss at 1 m
    std::uint64_t seed = 1;
    std::uint64_t los_angle_seed = 7;
    BsRisModel bs_ris_model = BsRisModel::los;
    double K_bs_ris = 1.0;     // only used with BsRisModel::rician
};

void validate(const SystemConfig& cfg);

double distance(const Vec3& a, const Vec3& b);

/// Linear gain 10^{-ref_db/10} dist^{-exponent}.
double path_loss(double dist, double exponent, double ref_db);

struct LargeScaleGains {
    double alpha; // RIS -> user
    double beta;  // BS -> RIS
};

LargeScaleGains large_scale_gains(const SystemConfig& cfg);

/// Unit-modulus far-field LoS components, common to all ports.
struct LosChannels {
    std::vector<cdouble> g_bar; // BS -> RIS
    std::vector<cdouble> h_bar; // RIS -> user
};

/// Draws exp(j theta) with theta uniform on [0, 2pi), g_bar first.
LosChannels generate_los(std::size_t m, std::uint64_t seed);

/// Toeplitz port correlation with first row J0(2pi k W / (N-1)).
Eigen::MatrixXd jakes_matrix(std::size_t n, double w);

inline constexpr double kMuSqEpsilon = 1e-6;
inline constexpr double kMuSqMax = 1.0 - kMuSqEpsilon;

/// Block-diagonal approximation of the port correlation: block b holds
/// block_sizes[b] contiguous ports with common pairwise correlation
/// block_mu_sq[b].
struct CorrelationPartition {
    std::vector<std::size_t> block_sizes;
    std::vector<double> block_mu_sq;

    std::size_t block_count() const { return block_sizes.size(); }
    std::size_t port_count() const;
};

/// Throws ValidationError for empty blocks, mismatched lengths, mu^2 outside
/// [0, 1 - 1e-6], or (when n > 0) sizes not summing to n.
void validate(const CorrelationPartition& part, std::size_t n = 0);

/// Greedy contiguous growth: a block keeps absorbing the next port while the
/// smallest squared correlation inside it stays >= tau; that minimum becomes
/// the block's mu^2 (singletons get tau).
struct HeuristicPartition {
    double tau = 0.97;
};

/// Block sizes apportioned from the eigenvalues of the correlation matrix that
/// are >= 0.5 (largest-remainder rounding so the sizes sum to N), all blocks
/// sharing mu_sq.
struct EigenPartition {
    double mu_sq = 0.97;
};

/// User-supplied structure. A single mu_sq entry is broadcast to all blocks.
struct ExplicitPartition {
    std::vector<std::size_t> sizes;
    std::vector<double> mu_sq;
};

using PartitionPolicy = std::variant<HeuristicPartition, EigenPartition, ExplicitPartition>;

CorrelationPartition bdma_partition(const Eigen::MatrixXd& sigma, const PartitionPolicy& policy);

/// Per-port cascaded amplitudes h_k Phi g^H, path loss included.
struct ChannelRealization {
    std::vector<cdouble> port_gains;
};

/// Symmetric square root of a correlation matrix (eigenvalues floored at 0).
struct CorrelationFactor {
    Eigen::MatrixXd root;
};

/// Throws NumericError (detail() = eigenvalue) if an eigenvalue is below
/// -1e-8 * N.
CorrelationFactor correlation_factor(const Eigen::MatrixXd& sigma);

/// Draws channel realizations for a fixed experiment. Construction does all
/// per-experiment work (path loss, reflection weights, matrix factor); each
/// draw consumes only the supplied generator.
class ChannelSampler {
public:
    /// Block model: per block one shared scatter vector and per port an
    /// innovation, both CN(0, alpha/(K+1) I).
    ChannelSampler(const SystemConfig& cfg, const CorrelationPartition& part,
                   const LosChannels& los, const optimize::PhaseConfig& phases);

    /// Correlated model: NLoS columns L z with L L^T = Sigma.
    ChannelSampler(const SystemConfig& cfg, const CorrelationFactor& factor,
                   const LosChannels& los, const optimize::PhaseConfig& phases);

    ChannelRealization draw(CounterRng& rng) const;

    /// Same draw as `draw` for the block model, returned as the N x M port
    /// channel matrix (rows h_k) instead of the cascaded gains.
    Eigen::MatrixXcd draw_port_channels(CounterRng& rng) const;

    std::size_t port_count() const { return n_; }

private:
    void init_common(const SystemConfig& cfg, const LosChannels& los,
                     const optimize::PhaseConfig& phases);
    // exp(j theta_m) conj(g_m) for this draw
    std::vector<cdouble> weights(CounterRng& rng) const;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    double los_amp_ = 0.0;     // sqrt(alpha K/(K+1))
    double nlos_std_ = 0.0;    // sqrt(alpha/(K+1))
    double sqrt_beta_ = 0.0;
    bool rician_bs_ris_ = false;
    double k_bs_ris_ = 0.0;
    std::vector<cdouble> h_bar_;
    std::vector<cdouble> g_bar_;
    std::vector<cdouble> reflection_;
    std::vector<cdouble> fixed_weights_;
    bool toeplitz_ = false;
    CorrelationPartition part_;
    Eigen::MatrixXd root_;
};

ChannelRealization sample_block_channels(const SystemConfig& cfg, const CorrelationPartition& part,
                                         const LosChannels& los,
                                         const optimize::PhaseConfig& phases, CounterRng& rng);

ChannelRealization sample_toeplitz_channels(const SystemConfig& cfg, const Eigen::MatrixXd& sigma,
                                            const LosChannels& los,
                                            const optimize::PhaseConfig& phases, CounterRng& rng);

} // namespace fasris::channel
