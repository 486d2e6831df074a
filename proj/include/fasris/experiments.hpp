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

#include "fasris/config.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fasris::experiments {

/// One grid point of a sweep. Missing values (numeric failure, Monte-Carlo
/// not run) are NaN.
struct SweepRow {
    double axis_value = 0.0;
    std::string series;
    double outage_bdma = 0.0;
    double outage_upper = 0.0;
    double outage_lower = 0.0;
    double outage_asymptotic = 0.0;
    double outage_mc = 0.0;
    double mc_ci_halfwidth = 0.0;
    // subset of underflow, mc_unavailable, numeric_error, non_monotone; empty = ok
    std::vector<std::string> flags;
};

struct SweepResult {
    std::string command;
    std::string axis_name;
    std::vector<SweepRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> errors; // messages of numeric failures, in row order

    bool had_numeric_error() const { return !errors.empty(); }
};

/// Power grid p_min, p_min + step, ... <= p_max (a single point when step
/// exceeds the range).
std::vector<double> power_grid(double p_min, double p_max, double step);

/// Outage versus transmit power at the configured N and M.
SweepResult sweep_power(const config::RunConfig& cfg, double p_min, double p_max, double step);

/// Outage versus port count at the configured power; the partition is
/// rebuilt for every N.
SweepResult sweep_ports(const config::RunConfig& cfg, const std::vector<std::size_t>& n_list);

/// Optimal phases against the mean over `random_seeds` random phase draws,
/// over the configured power grid. Rows alternate series "optimal" and
/// "random" per power.
SweepResult compare_phases(const config::RunConfig& cfg, std::size_t random_seeds);

/// CSV with '#' provenance comments; probabilities in %.16e, axis values in
/// shortest round-trip form, missing values as empty fields.
std::string to_csv(const SweepResult& result);

/// {"metadata": {...}, "rows": [{...}, ...]}; missing values as null.
std::string to_json(const SweepResult& result);

} // namespace fasris::experiments
