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

#include "fasris/specfun.hpp"

#include <cstddef>
#include <functional>

namespace fasris::analysis {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    std::size_t max_subdivisions = 4000;
    // Integration domains for Rician-type densities extend this many
    // standard deviations past the LoS amplitude.
    double truncation_sigmas = 12.0;
    // Uniform pieces the domain is cut into before adaptive refinement.
    std::size_t initial_intervals = 16;
};

void validate(const QuadratureSpec& spec);

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [lo, hi].
///
/// The subinterval with the largest error estimate is bisected until the
/// summed estimate falls below max(abs_tol, rel_tol * |integral|). Throws
/// NumericError (detail() = worst subinterval error) when max_subdivisions
/// is exhausted first.
specfun::EvalResult integrate(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec);

} // namespace fasris::analysis
