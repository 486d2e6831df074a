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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fasris::optimize {

/// RIS phase shifts theta_m, each in (0, 2pi]. The reflection matrix is
/// diag{exp(j theta_m)}.
struct PhaseConfig {
    std::vector<double> thetas;

    std::size_t size() const { return thetas.size(); }
};

/// Maps any finite angle into (0, 2pi]; 0 becomes 2pi.
double canonical_phase(double theta);

/// Throws ValidationError unless there are `m` finite entries in (0, 2pi].
void validate(const PhaseConfig& phases, std::size_t m);

std::vector<std::complex<double>> reflection_coefficients(const PhaseConfig& phases);

/// |sum_m h(m) exp(j theta_m) conj(g(m))|, the path-loss-free LoS cascade
/// magnitude that the statistical-CSI design maximizes.
double los_objective(std::span<const std::complex<double>> h_bar, const PhaseConfig& phases,
                     std::span<const std::complex<double>> g_bar);

struct PhaseDesign {
    PhaseConfig phases;
    // Elements where h_bar or g_bar vanished; their phase was left at 2pi.
    std::vector<std::size_t> neutral_entries;
};

/// Co-phases every LoS term: theta_m = -(arg h(m) - arg g(m)).
/// Uses only the LoS components, never channel draws.
PhaseDesign optimal_phases(std::span<const std::complex<double>> h_bar,
                           std::span<const std::complex<double>> g_bar);

/// i.i.d. uniform phases on (0, 2pi], reproducible per seed.
PhaseConfig random_phases(std::size_t m, std::uint64_t seed);

} // namespace fasris::optimize
