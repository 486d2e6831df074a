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

#include "fasris/errors.hpp"
#include "fasris/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using fasris::analysis::integrate;
using fasris::analysis::QuadratureSpec;

TEST_CASE("quadrature - smooth integrands")
{
    QuadratureSpec spec;
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, spec);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.est_abs_err < 1e-12);

    r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, spec);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

    // narrow peak well inside a wide domain
    r = integrate([](double x) { return std::exp(-(x - 37.0) * (x - 37.0) * 50.0); }, 0.0, 100.0, spec);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi / 50.0)).epsilon(1e-10));

    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, spec).value == 0.0);
}

TEST_CASE("quadrature - endpoint singularity and budget exhaustion")
{
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));

    spec.rel_tol = 1e-14;
    spec.max_subdivisions = 3;
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
        FAIL("expected NumericError");
    } catch (const fasris::NumericError& e) {
        CHECK(e.detail() > 0.0);
    }
}

TEST_CASE("quadrature - settings validation")
{
    QuadratureSpec spec;
    CHECK_NOTHROW(fasris::analysis::validate(spec));
    spec.truncation_sigmas = 7.0;
    CHECK_THROWS_AS(fasris::analysis::validate(spec), fasris::ValidationError);
    spec = {};
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(fasris::analysis::validate(spec), fasris::ValidationError);
}
