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

#include "fasris/channel.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fasris::testing {

// Rows of a golden CSV table (comment lines skipped).
inline std::vector<std::vector<double>> read_golden(const std::string& name)
{
    std::ifstream in(std::string(FASRIS_GOLDEN_DIR) + "/" + name);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        // comments and the column-name line
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

// Unit distances and zero reference loss: alpha = beta = 1.
inline channel::SystemConfig unit_geometry(std::size_t n, std::size_t m, double k)
{
    channel::SystemConfig cfg;
    cfg.bs_pos = {0.0, 0.0, 0.0};
    cfg.ris_pos = {1.0, 0.0, 0.0};
    cfg.user_pos = {1.0, 1.0, 0.0};
    cfg.pl_ref_db = 0.0;
    cfg.N = n;
    cfg.M = m;
    cfg.K = k;
    return cfg;
}

} // namespace fasris::testing
