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

#include "fasris/quadrature.hpp"

#include "fasris/errors.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fasris::analysis {

namespace {

// Kronrod abscissae (descending, last one is the centre) and weights;
// odd entries are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi)
{
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod))
        throw NumericError(fmt::format("integrand not finite on [{}, {}]", lo, hi));
    const double error = std::fabs(kronrod - gauss) +
                         50.0 * std::numeric_limits<double>::epsilon() * std::fabs(kronrod);
    return {lo, hi, kronrod, error};
}

} // namespace

void validate(const QuadratureSpec& spec)
{
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw ValidationError("quadrature tolerances must be positive");
    if (!(spec.truncation_sigmas >= 8.0))
        throw ValidationError("truncation_sigmas must be at least 8");
    if (spec.max_subdivisions < 1 || spec.initial_intervals < 1)
        throw ValidationError("quadrature subdivision counts must be positive");
}

specfun::EvalResult integrate(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec)
{
    validate(spec);
    if (!(hi > lo))
        return {0.0, 0.0};

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    const std::size_t pieces = spec.initial_intervals;
    const double width = (hi - lo) / static_cast<double>(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
        const double a = lo + width * static_cast<double>(i);
        const double b = i + 1 == pieces ? hi : a + width;
        auto seg = gauss_kronrod_15(f, a, b);
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }

    std::size_t subdivisions = pieces;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw NumericError(
                fmt::format("quadrature did not converge in {} subdivisions on [{}, {}]; "
                            "estimate {:.6e} +- {:.3e}, worst piece [{}, {}] err {:.3e}",
                            subdivisions, lo, hi, total, total_err, heap.top().lo,
                            heap.top().hi, heap.top().error),
                heap.top().error);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw NumericError(fmt::format("quadrature interval [{}, {}] cannot be bisected",
                                           worst.lo, worst.hi),
                               worst.error);
        }
        const Segment left = gauss_kronrod_15(f, worst.lo, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // re-sum to drop the drift of the running totals
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err};
}

} // namespace fasris::analysis
