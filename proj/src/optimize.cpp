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

#include "fasris/optimize.hpp"

#include "fasris/errors.hpp"
#include "fasris/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fasris::optimize {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_lengths(std::size_t h, std::size_t g, std::size_t phases)
{
    if (h != g || h != phases)
        throw ValidationError("LoS vectors and phase configuration differ in length");
}

} // namespace

double canonical_phase(double theta)
{
    if (!std::isfinite(theta))
        throw DomainError("phase must be finite");
    double t = std::fmod(theta, kTwoPi);
    if (t <= 0.0)
        t += kTwoPi;
    return t;
}

void validate(const PhaseConfig& phases, std::size_t m)
{
    if (phases.size() != m)
        throw ValidationError("phase configuration length does not match M");
    for (double t : phases.thetas) {
        if (!std::isfinite(t) || t <= 0.0 || t > kTwoPi)
            throw ValidationError("phase outside (0, 2pi]");
    }
}

std::vector<std::complex<double>> reflection_coefficients(const PhaseConfig& phases)
{
    std::vector<std::complex<double>> out;
    out.reserve(phases.size());
    for (double t : phases.thetas)
        out.push_back(std::polar(1.0, t));
    return out;
}

double los_objective(std::span<const std::complex<double>> h_bar, const PhaseConfig& phases,
                     std::span<const std::complex<double>> g_bar)
{
    check_lengths(h_bar.size(), g_bar.size(), phases.size());
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < h_bar.size(); ++m)
        sum += h_bar[m] * std::polar(1.0, phases.thetas[m]) * std::conj(g_bar[m]);
    return std::abs(sum);
}

PhaseDesign optimal_phases(std::span<const std::complex<double>> h_bar,
                           std::span<const std::complex<double>> g_bar)
{
    if (h_bar.size() != g_bar.size())
        throw ValidationError("LoS vectors differ in length");
    PhaseDesign design;
    design.phases.thetas.resize(h_bar.size());
    for (std::size_t m = 0; m < h_bar.size(); ++m) {
        if (h_bar[m] == 0.0 || g_bar[m] == 0.0) {
            design.phases.thetas[m] = kTwoPi;
            design.neutral_entries.push_back(m);
            continue;
        }
        design.phases.thetas[m] = canonical_phase(-(std::arg(h_bar[m]) - std::arg(g_bar[m])));
    }
    return design;
}

PhaseConfig random_phases(std::size_t m, std::uint64_t seed)
{
    CounterRng rng(seed, streams::kPhases);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PhaseConfig phases;
    phases.thetas.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        phases.thetas.push_back(canonical_phase(kTwoPi * (1.0 - unit(rng))));
    return phases;
}

} // namespace fasris::optimize
