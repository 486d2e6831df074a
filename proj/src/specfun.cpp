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

#include "fasris/specfun.hpp"

#include "fasris/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fasris::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Power series, alternating; long double keeps cancellation harmless up to 8.
double j0_series(double x)
{
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-21L)
            break;
    }
    return static_cast<double>(sum);
}

// Miller backward recurrence normalized by J0 + 2 sum J_2k = 1.
double j0_miller(double x)
{
    int start = static_cast<int>(x + 40.0 + 10.0 * std::cbrt(x));
    start += start % 2;
    double j_next = 0.0;
    double j = 1e-30;
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        const double j_prev = 2.0 * k / x * j - j_next;
        j_next = j;
        j = j_prev;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * j;
        if (std::fabs(j) > 1e200) {
            j *= 1e-200;
            j_next *= 1e-200;
            norm *= 1e-200;
        }
    }
    norm += j;
    return j / norm;
}

// Hankel asymptotic expansion, summed until the terms stop decreasing.
double j0_hankel(double x)
{
    double p = 1.0;
    double q = 0.0;
    double u = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = u * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > u)
            break;
        u = next;
        switch (k % 4) {
        case 1: q -= u; break;
        case 2: p -= u; break;
        case 3: q += u; break;
        case 0: p += u; break;
        }
        if (u < 1e-18)
            break;
    }
    // cos(x - pi/4) and sin(x - pi/4) without rounding pi/4 into x
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double cos_chi = (c + s) / std::numbers::sqrt2;
    const double sin_chi = (s - c) / std::numbers::sqrt2;
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

// sum_{k>=1} rho^k I_k(x) / I_0(x), 0 <= rho <= 1.
//
// Ratios I_{k+1}/I_k come from the backward recurrence
//   r_k = x / (2(k+1) + x r_{k+1}),
// started far enough out that the start error is damped by e^{-100}, and the
// sum is accumulated from the top as A_k = rho r_k (1 + A_{k+1}).
double bessel_ratio_tail(double x, double rho)
{
    if (x == 0.0 || rho == 0.0)
        return 0.0;
    const int start = 40 + static_cast<int>(std::ceil(10.0 * std::sqrt(x)));
    const double nu = start + 1.0;
    double r = x / (nu + std::sqrt(nu * nu + x * x));
    double acc = 0.0;
    for (int k = start - 1; k >= 0; --k) {
        r = x / (2.0 * (k + 1) + x * r);
        acc = rho * r * (1.0 + acc);
    }
    return acc;
}

// 1 - Q1(a, b) as a Poisson mixture of regularized lower incomplete gamma
// functions P(n+1, b^2/2); all terms positive. Used for a < b <= 2 where
// 1 - Q1 would otherwise cancel.
double marcum_p1_poisson(double a, double b)
{
    constexpr int n_max = 30;
    const double lambda = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (y == 0.0)
        return 0.0;

    // t[k] = e^{-y} y^k / k!
    std::array<double, n_max + 2> t{};
    t[0] = std::exp(-y);
    for (int k = 1; k <= n_max + 1; ++k)
        t[k] = t[k - 1] * y / k;

    // P(n_max + 1, y) from its own series, then P(n+1) = P(n+2) + t[n+1].
    double tail = 0.0;
    double term = 1.0;
    for (int j = 1; j < 200; ++j) {
        term *= y / (n_max + 1 + j);
        tail += term;
        if (term < 1e-18 * tail)
            break;
    }
    std::array<double, n_max + 1> lower{};
    lower[n_max] = t[n_max + 1] * (1.0 + tail);
    for (int n = n_max - 1; n >= 0; --n)
        lower[n] = lower[n + 1] + t[n + 1];

    double weight = std::exp(-lambda);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0)
            weight *= lambda / n;
        sum += weight * lower[n];
    }
    return sum;
}

} // namespace

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw DomainError("bessel_j0: argument must be finite");
    x = std::fabs(x);
    if (x <= 8.0)
        return j0_series(x);
    if (x <= 25.0)
        return j0_miller(x);
    return j0_hankel(x);
}

double bessel_i0_scaled(double x)
{
    if (!(x >= 0.0))
        throw DomainError("bessel_i0_scaled: argument must be non-negative");
    if (std::isinf(x))
        return 0.0;
    if (x <= 25.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum * std::exp(-x);
    }
    double sum = 1.0;
    double v = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = v * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > v)
            break;
        v = next;
        sum += v;
        if (v < 1e-18 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

MarcumPair marcum_q1_pair(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0))
        throw DomainError("marcum_q1: arguments must be non-negative");
    if (std::isinf(b))
        return {0.0, 1.0};
    if (std::isinf(a) || b == 0.0)
        return {1.0, 0.0};
    if (a == 0.0) {
        const double y = 0.5 * b * b;
        return {std::exp(-y), -std::expm1(-y)};
    }

    const double x = a * b;
    const double envelope = std::exp(-0.5 * (a - b) * (a - b)) * bessel_i0_scaled(x);
    MarcumPair out;
    if (a < b) {
        out.q = envelope * (1.0 + bessel_ratio_tail(x, a / b));
        out.p = b <= 2.0 ? marcum_p1_poisson(a, b) : 1.0 - out.q;
    } else {
        out.p = envelope * bessel_ratio_tail(x, b / a);
        out.q = 1.0 - out.p;
    }
    out.q = std::clamp(out.q, 0.0, 1.0);
    out.p = std::clamp(out.p, 0.0, 1.0);
    return out;
}

double marcum_q1(double a, double b)
{
    return marcum_q1_pair(a, b).q;
}

double marcum_p1(double a, double b)
{
    return marcum_q1_pair(a, b).p;
}

double log_rician_pdf(double r, double c, double s)
{
    if (!(s > 0.0) || !(c >= 0.0))
        throw DomainError("rician_pdf: need s > 0 and c >= 0");
    if (r <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double d = r - c;
    return std::log(2.0 * r / s) - d * d / s + std::log(bessel_i0_scaled(2.0 * r * c / s));
}

double rician_pdf(double r, double c, double s)
{
    return std::exp(log_rician_pdf(r, c, s));
}

} // namespace fasris::specfun
