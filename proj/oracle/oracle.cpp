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

#include "oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fasris::oracle {

namespace mp = boost::multiprecision;
using wide = mp::number<mp::cpp_bin_float<260>>;
using real50 = mp::cpp_bin_float_50;

double bessel_j0(double x)
{
    const wide q = wide(x) * wide(x) / 4;
    wide term = 1;
    wide sum = 1;
    const wide eps("1e-45");
    for (int k = 1; k < 100000; ++k) {
        term *= -q / (wide(k) * k);
        sum += term;
        if (k > x && mp::abs(term) < eps)
            break;
    }
    return sum.convert_to<double>();
}

double bessel_i0_scaled(double x)
{
    const real50 q = real50(x) * real50(x) / 4;
    real50 term = 1;
    real50 sum = 1;
    for (int k = 1; k < 10000000; ++k) {
        term *= q / (real50(k) * k);
        sum += term;
        if (k > x && term < sum * real50("1e-45"))
            break;
    }
    return (sum * mp::exp(-real50(x))).convert_to<double>();
}

MarcumReference marcum_q1(double a, double b)
{
    const real50 ra = a;
    // x exp(-(x^2 + a^2)/2) I0(a x), written with the scaled Bessel factor.
    auto density = [&](const real50& x) -> real50 {
        const real50 ax = ra * x;
        const real50 d = x - ra;
        return x * mp::exp(-d * d / 2) * boost::math::cyl_bessel_i(0, ax) * mp::exp(-ax);
    };
    auto integrate = [&](real50 lo, real50 hi) -> real50 {
        if (hi <= lo)
            return 0;
        // split at the density mode so the peak is never straddled
        std::vector<real50> cuts{lo};
        for (real50 c : {ra - 8, ra, ra + 8}) {
            if (c > lo && c < hi)
                cuts.push_back(c);
        }
        cuts.push_back(hi);
        real50 total = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            real50 err;
            total += boost::math::quadrature::gauss_kronrod<real50, 31>::integrate(
                density, cuts[i], cuts[i + 1], 30, real50("1e-40"), &err);
        }
        return total;
    };
    const double upper = std::max(a, b) + 40.0;
    return {integrate(b, upper).convert_to<double>(), integrate(0, b).convert_to<double>()};
}

namespace {

std::ofstream open_table(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

} // namespace

void write_golden_tables(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const double pi = boost::math::constants::pi<double>();

    {
        auto out = open_table(dir / "j0.csv");
        out << "# J0(x), 260-digit power series\nx,value\n";
        const std::vector<double> grid{
            -3.0, 0.0, 1e-6, 0.1, 0.5, 1.0, 2.0, 2.404825557695773, 2.0 * pi * 5.0 / 49.0, 3.0,
            5.0, 7.5, 8.0, 8.5, 10.0, 12.0, 15.0, 20.0, 24.9, 25.0, 25.1, 30.0, 40.0, 50.0,
            75.0, 100.0, 150.0, 200.0, 250.0, 300.0, 400.0, 450.0, 499.0, 500.0};
        for (double x : grid)
            out << fmt17(x) << ',' << fmt17(bessel_j0(x)) << '\n';
    }
    {
        auto out = open_table(dir / "i0_scaled.csv");
        out << "# exp(-x) I0(x), 50-digit power series\nx,value\n";
        const std::vector<double> grid{0.0, 1e-8, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0,
                                       24.9, 25.0, 25.1, 30.0, 50.0, 100.0, 200.0, 500.0,
                                       700.0, 1000.0, 2000.0};
        for (double x : grid)
            out << fmt17(x) << ',' << fmt17(bessel_i0_scaled(x)) << '\n';
    }
    {
        auto out = open_table(dir / "marcum_q1.csv");
        out << "# Q1(a,b) and 1-Q1(a,b), 50-digit Gauss-Kronrod integration of the Rician density\n"
               "a,b,q,p\n";
        const std::vector<double> grid{0.0, 0.1, 0.5, 1.0, 1.5, 2.0, 3.0,
                                       5.0, 10.0, 20.0, 30.0, 45.0, 60.0};
        for (double a : grid) {
            for (double b : grid) {
                const auto ref = marcum_q1(a, b);
                out << fmt17(a) << ',' << fmt17(b) << ',' << fmt17(ref.q) << ',' << fmt17(ref.p)
                    << '\n';
            }
        }
    }
}

} // namespace fasris::oracle
