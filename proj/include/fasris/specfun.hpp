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

namespace fasris::specfun {

// A computed value together with an estimate of its absolute error.
struct EvalResult {
    double value = 0.0;
    double est_abs_err = 0.0;
};

/// Bessel function of the first kind, order zero.
/// Absolute error below 1e-12 for |x| <= 500. Throws DomainError for
/// non-finite input.
double bessel_j0(double x);

/// Exponentially scaled modified Bessel function e^{-x} I0(x), x >= 0.
/// Never overflows; throws DomainError for negative or NaN input.
double bessel_i0_scaled(double x);

/// First-order Marcum Q-function and its complement, evaluated together.
///
/// The smaller of the two is always computed as a sum of positive terms, so
/// both carry full relative accuracy: q near 0 in the upper tail and p near 0
/// in the lower tail. The algorithm sums rho^k e^{-ab} I_k(ab) with
/// rho = min(a,b)/max(a,b) and the Bessel ratios obtained by backward
/// recurrence; when a < b <= 2 the complement comes from the Poisson-mixture
/// (incomplete gamma) series instead.
struct MarcumPair {
    double q = 1.0; // Q1(a, b)
    double p = 0.0; // 1 - Q1(a, b)
};

MarcumPair marcum_q1_pair(double a, double b);

/// Q1(a, b) for a, b >= 0. Throws DomainError for negative arguments.
double marcum_q1(double a, double b);

/// 1 - Q1(a, b), i.e. the Rician CDF, with relative accuracy in the lower tail.
double marcum_p1(double a, double b);

/// log of the Rician amplitude density
///   (2r/s) exp(-(r^2 + c^2)/s) I0(2rc/s)
/// with the exponents combined before exponentiation. Returns -inf at r = 0.
double log_rician_pdf(double r, double c, double s);

double rician_pdf(double r, double c, double s);

} // namespace fasris::specfun
