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

// Extended-precision reference implementations used to produce the golden
// tables under tests/golden. They share no code with the production kernels.

#include <filesystem>

namespace fasris::oracle {

// Power series sum (-1)^k (x/2)^{2k} / (k!)^2 at 260 significant digits.
double bessel_j0(double x);

// e^{-x} sum (x/2)^{2k} / (k!)^2 at 50 significant digits.
double bessel_i0_scaled(double x);

// Q1(a,b) and 1 - Q1(a,b) by adaptive Gauss-Kronrod integration of the
// Rician density at 50 significant digits.
struct MarcumReference {
    double q;
    double p;
};
MarcumReference marcum_q1(double a, double b);

// Writes j0.csv, i0_scaled.csv and marcum_q1.csv into `dir`.
void write_golden_tables(const std::filesystem::path& dir);

} // namespace fasris::oracle
