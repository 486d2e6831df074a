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

#include "fasris/config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace fasris::config {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    if (trim(s).empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(fmt::format("'{}' is not a number", s));
    return v;
}

std::uint64_t parse_uint(std::string_view s)
{
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(fmt::format("'{}' is not a non-negative integer", s));
    return v;
}

bool parse_bool(std::string_view s)
{
    s = trim(s);
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw ConfigError(fmt::format("'{}' is not a boolean", s));
}

channel::Vec3 parse_vec3(std::string_view s)
{
    const auto parts = split_list(s);
    if (parts.size() != 3)
        throw ConfigError(fmt::format("'{}' is not a 3-vector", s));
    return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

std::vector<double> parse_doubles(std::string_view s)
{
    std::vector<double> out;
    for (auto p : split_list(s))
        out.push_back(parse_double(p));
    return out;
}

std::vector<std::size_t> parse_sizes(std::string_view s)
{
    std::vector<std::size_t> out;
    for (auto p : split_list(s))
        out.push_back(static_cast<std::size_t>(parse_uint(p)));
    return out;
}

template <typename T>
std::string join(const std::vector<T>& v)
{
    return fmt::format("{}", fmt::join(v, ", "));
}

std::string vec3(const channel::Vec3& v)
{
    return fmt::format("{}, {}, {}", v[0], v[1], v[2]);
}

struct Field {
    std::string_view key;
    std::string_view help;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, std::string_view)> set;
};

const std::vector<Field>& fields()
{
    static const std::vector<Field> table{
        {"bs_pos", "BS position (m)", [](const RunConfig& c) { return vec3(c.system.bs_pos); },
         [](RunConfig& c, std::string_view v) { c.system.bs_pos = parse_vec3(v); }},
        {"ris_pos", "RIS position (m)", [](const RunConfig& c) { return vec3(c.system.ris_pos); },
         [](RunConfig& c, std::string_view v) { c.system.ris_pos = parse_vec3(v); }},
        {"user_pos", "user position (m)",
         [](const RunConfig& c) { return vec3(c.system.user_pos); },
         [](RunConfig& c, std::string_view v) { c.system.user_pos = parse_vec3(v); }},
        {"N", "FAS ports", [](const RunConfig& c) { return fmt::format("{}", c.system.N); },
         [](RunConfig& c, std::string_view v) { c.system.N = parse_uint(v); }},
        {"M", "RIS elements", [](const RunConfig& c) { return fmt::format("{}", c.system.M); },
         [](RunConfig& c, std::string_view v) { c.system.M = parse_uint(v); }},
        {"W", "FAS length in wavelengths",
         [](const RunConfig& c) { return fmt::format("{}", c.system.W); },
         [](RunConfig& c, std::string_view v) { c.system.W = parse_double(v); }},
        {"K", "RIS-user Rician factor (linear)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.K); },
         [](RunConfig& c, std::string_view v) { c.system.K = parse_double(v); }},
        {"P", "transmit power (dBm)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.P); },
         [](RunConfig& c, std::string_view v) { c.system.P = parse_double(v); }},
        {"noise_power", "noise power (dBm)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.noise_power); },
         [](RunConfig& c, std::string_view v) { c.system.noise_power = parse_double(v); }},
        {"R", "target rate (bit/s/Hz)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.R); },
         [](RunConfig& c, std::string_view v) { c.system.R = parse_double(v); }},
        {"pl_exp_bs_ris", "BS-RIS path-loss exponent",
         [](const RunConfig& c) { return fmt::format("{}", c.system.pl_exp_bs_ris); },
         [](RunConfig& c, std::string_view v) { c.system.pl_exp_bs_ris = parse_double(v); }},
        {"pl_exp_ris_user", "RIS-user path-loss exponent (free parameter)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.pl_exp_ris_user); },
         [](RunConfig& c, std::string_view v) { c.system.pl_exp_ris_user = parse_double(v); }},
        {"pl_ref_db", "path loss at 1 m (dB)",
         [](const RunConfig& c) { return fmt::format("{}", c.system.pl_ref_db); },
         [](RunConfig& c, std::string_view v) { c.system.pl_ref_db = parse_double(v); }},
        {"seed", "Monte-Carlo seed",
         [](const RunConfig& c) { return fmt::format("{}", c.system.seed); },
         [](RunConfig& c, std::string_view v) { c.system.seed = parse_uint(v); }},
        {"los_angle_seed", "seed of the LoS phase draw",
         [](const RunConfig& c) { return fmt::format("{}", c.system.los_angle_seed); },
         [](RunConfig& c, std::string_view v) { c.system.los_angle_seed = parse_uint(v); }},
        {"bs_ris_model", "los | rician (rician only affects Monte-Carlo)",
         [](const RunConfig& c) {
             return std::string(c.system.bs_ris_model == channel::BsRisModel::los ? "los"
                                                                                 : "rician");
         },
         [](RunConfig& c, std::string_view v) {
             v = trim(v);
             if (v == "los")
                 c.system.bs_ris_model = channel::BsRisModel::los;
             else if (v == "rician")
                 c.system.bs_ris_model = channel::BsRisModel::rician;
             else
                 throw ConfigError(fmt::format("'{}' is not los|rician", v));
         }},
        {"K_bs_ris", "BS-RIS Rician factor for bs_ris_model = rician",
         [](const RunConfig& c) { return fmt::format("{}", c.system.K_bs_ris); },
         [](RunConfig& c, std::string_view v) { c.system.K_bs_ris = parse_double(v); }},
        {"partition", "eigen | heuristic | explicit",
         [](const RunConfig& c) { return std::string(to_string(c.partition)); },
         [](RunConfig& c, std::string_view v) {
             v = trim(v);
             if (v == "eigen")
                 c.partition = PartitionKind::eigen;
             else if (v == "heuristic")
                 c.partition = PartitionKind::heuristic;
             else if (v == "explicit")
                 c.partition = PartitionKind::explicit_sizes;
             else
                 throw ConfigError(fmt::format("'{}' is not eigen|heuristic|explicit", v));
         }},
        {"block_mu_sq", "block correlation(s); one value is broadcast",
         [](const RunConfig& c) { return join(c.block_mu_sq); },
         [](RunConfig& c, std::string_view v) { c.block_mu_sq = parse_doubles(v); }},
        {"tau", "heuristic partition threshold",
         [](const RunConfig& c) { return fmt::format("{}", c.tau); },
         [](RunConfig& c, std::string_view v) { c.tau = parse_double(v); }},
        {"block_sizes", "explicit partition block sizes",
         [](const RunConfig& c) { return join(c.block_sizes); },
         [](RunConfig& c, std::string_view v) { c.block_sizes = parse_sizes(v); }},
        {"strict_common_mu", "reject blocks with different correlations",
         [](const RunConfig& c) { return std::string(c.strict_common_mu ? "true" : "false"); },
         [](RunConfig& c, std::string_view v) { c.strict_common_mu = parse_bool(v); }},
        {"phases", "optimal | random",
         [](const RunConfig& c) { return std::string(to_string(c.phases)); },
         [](RunConfig& c, std::string_view v) {
             v = trim(v);
             if (v == "optimal")
                 c.phases = PhaseScheme::optimal;
             else if (v == "random")
                 c.phases = PhaseScheme::random;
             else
                 throw ConfigError(fmt::format("'{}' is not optimal|random", v));
         }},
        {"phase_seed", "seed of random phase configurations",
         [](const RunConfig& c) { return fmt::format("{}", c.phase_seed); },
         [](RunConfig& c, std::string_view v) { c.phase_seed = parse_uint(v); }},
        {"mc_trials", "Monte-Carlo trials per point",
         [](const RunConfig& c) { return fmt::format("{}", c.mc_trials); },
         [](RunConfig& c, std::string_view v) { c.mc_trials = parse_uint(v); }},
        {"mc_model", "block | toeplitz",
         [](const RunConfig& c) { return std::string(to_string(c.mc_model)); },
         [](RunConfig& c, std::string_view v) {
             v = trim(v);
             if (v == "block")
                 c.mc_model = montecarlo::CorrelationModel::block;
             else if (v == "toeplitz")
                 c.mc_model = montecarlo::CorrelationModel::toeplitz;
             else
                 throw ConfigError(fmt::format("'{}' is not block|toeplitz", v));
         }},
        {"mc_batch", "trials per work unit",
         [](const RunConfig& c) { return fmt::format("{}", c.mc_batch); },
         [](RunConfig& c, std::string_view v) { c.mc_batch = parse_uint(v); }},
        {"mc_floor", "analytic outage below which Monte-Carlo is not reported",
         [](const RunConfig& c) { return fmt::format("{}", c.mc_floor); },
         [](RunConfig& c, std::string_view v) { c.mc_floor = parse_double(v); }},
        {"threads", "worker threads, 0 = all cores",
         [](const RunConfig& c) { return fmt::format("{}", c.threads); },
         [](RunConfig& c, std::string_view v) { c.threads = static_cast<unsigned>(parse_uint(v)); }},
        {"rel_tol", "quadrature relative tolerance",
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.rel_tol); },
         [](RunConfig& c, std::string_view v) { c.quadrature.rel_tol = parse_double(v); }},
        {"abs_tol", "quadrature absolute tolerance",
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.abs_tol); },
         [](RunConfig& c, std::string_view v) { c.quadrature.abs_tol = parse_double(v); }},
        {"max_subdivisions", "quadrature subdivision budget",
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.max_subdivisions); },
         [](RunConfig& c, std::string_view v) { c.quadrature.max_subdivisions = parse_uint(v); }},
        {"truncation_sigmas", "integration range past the LoS amplitude, in std devs",
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.truncation_sigmas); },
         [](RunConfig& c, std::string_view v) { c.quadrature.truncation_sigmas = parse_double(v); }},
        {"p_min", "power sweep start (dBm)",
         [](const RunConfig& c) { return fmt::format("{}", c.p_min); },
         [](RunConfig& c, std::string_view v) { c.p_min = parse_double(v); }},
        {"p_max", "power sweep end (dBm)",
         [](const RunConfig& c) { return fmt::format("{}", c.p_max); },
         [](RunConfig& c, std::string_view v) { c.p_max = parse_double(v); }},
        {"p_step", "power sweep step (dB)",
         [](const RunConfig& c) { return fmt::format("{}", c.p_step); },
         [](RunConfig& c, std::string_view v) { c.p_step = parse_double(v); }},
        {"n_list", "port counts for sweep-ports",
         [](const RunConfig& c) { return join(c.n_list); },
         [](RunConfig& c, std::string_view v) { c.n_list = parse_sizes(v); }},
        {"random_seeds", "random phase draws averaged by compare-phases",
         [](const RunConfig& c) { return fmt::format("{}", c.random_seeds); },
         [](RunConfig& c, std::string_view v) { c.random_seeds = parse_uint(v); }},
    };
    return table;
}

} // namespace

std::string_view to_string(PartitionKind kind)
{
    switch (kind) {
    case PartitionKind::eigen: return "eigen";
    case PartitionKind::heuristic: return "heuristic";
    case PartitionKind::explicit_sizes: return "explicit";
    }
    return "?";
}

std::string_view to_string(PhaseScheme scheme)
{
    return scheme == PhaseScheme::optimal ? "optimal" : "random";
}

std::string_view to_string(montecarlo::CorrelationModel model)
{
    return model == montecarlo::CorrelationModel::block ? "block" : "toeplitz";
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::set<std::string_view> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const Field& f) { return f.key == key; });
        if (it == table.end())
            throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key));
        if (!seen.insert(it->key).second)
            throw ConfigError(fmt::format("line {}: key '{}' given twice", line_no, key));
        try {
            it->set(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {}: {}", line_no, key, e.what()));
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string default_config_template()
{
    const RunConfig defaults;
    std::string out = "# fasris configuration; '#' starts a comment, lists are comma separated\n";
    for (const auto& f : fields())
        out += fmt::format("{} = {}    # {}\n", f.key, f.get(defaults), f.help);
    return out;
}

std::string canonical_form(const RunConfig& cfg)
{
    std::string out;
    for (const auto& f : fields())
        out += fmt::format("{}={}\n", f.key, f.get(cfg));
    return out;
}

std::uint64_t config_hash(const RunConfig& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_form(cfg)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

channel::PartitionPolicy partition_policy(const RunConfig& cfg)
{
    switch (cfg.partition) {
    case PartitionKind::heuristic:
        return channel::HeuristicPartition{cfg.tau};
    case PartitionKind::eigen:
        if (cfg.block_mu_sq.size() != 1)
            throw ConfigError("eigen partition takes a single block_mu_sq value");
        return channel::EigenPartition{cfg.block_mu_sq.front()};
    case PartitionKind::explicit_sizes:
        return channel::ExplicitPartition{cfg.block_sizes, cfg.block_mu_sq};
    }
    throw ConfigError("unknown partition kind");
}

montecarlo::McSpec mc_spec(const RunConfig& cfg)
{
    return {cfg.mc_trials, cfg.system.seed, cfg.mc_model, cfg.mc_batch, cfg.threads};
}

} // namespace fasris::config
