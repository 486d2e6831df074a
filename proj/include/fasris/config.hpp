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

#include "fasris/analysis.hpp"
#include "fasris/channel.hpp"
#include "fasris/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fasris::config {

enum class PartitionKind { eigen, heuristic, explicit_sizes };
enum class PhaseScheme { optimal, random };

/// Everything a CLI run needs. Keys of the config file are the field names
/// below (system parameters keep the SystemConfig names).
struct RunConfig {
    channel::SystemConfig system;

    PartitionKind partition = PartitionKind::eigen;
    std::vector<double> block_mu_sq{0.97};
    double tau = 0.97;
    std::vector<std::size_t> block_sizes; // explicit partitions only
    bool strict_common_mu = false;

    PhaseScheme phases = PhaseScheme::optimal;
    std::uint64_t phase_seed = 11;

    std::uint64_t mc_trials = 100000;
    montecarlo::CorrelationModel mc_model = montecarlo::CorrelationModel::block;
    std::uint64_t mc_batch = 4096;
    double mc_floor = 1e-7; // below this analytic outage the MC column is left empty
    unsigned threads = 0;

    analysis::QuadratureSpec quadrature;

    double p_min = 0.0;
    double p_max = 20.0;
    double p_step = 2.0;
    std::vector<std::size_t> n_list{10, 20, 30, 40, 50};
    std::size_t random_seeds = 1;
};

// Unreadable or malformed configuration file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// and unparsable values throw ConfigError naming the line.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Commented template holding every key at its default value.
std::string default_config_template();

/// One `key = value` line per key in a fixed order; the basis of the config
/// hash in output provenance.
std::string canonical_form(const RunConfig& cfg);

/// 64-bit FNV-1a of canonical_form.
std::uint64_t config_hash(const RunConfig& cfg);

channel::PartitionPolicy partition_policy(const RunConfig& cfg);

montecarlo::McSpec mc_spec(const RunConfig& cfg);

std::string_view to_string(PartitionKind kind);
std::string_view to_string(PhaseScheme scheme);
std::string_view to_string(montecarlo::CorrelationModel model);

} // namespace fasris::config
