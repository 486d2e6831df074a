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

#include <array>
#include <cstdint>
#include <limits>

namespace fasris {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit key selects an experiment (seed), the upper half of the
/// 128-bit counter selects a stream (trial index) and the lower half counts
/// blocks within the stream. Stream (seed, trial) is therefore a pure
/// function of its two indices: splitting trials across batches or threads
/// cannot change what any trial draws.
class CounterRng {
public:
    using result_type = std::uint32_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // One Philox block for an explicit counter and key.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
};

// Stream-splitting rule: stream ids are derived from purposes so that LoS
// draws, phase draws and Monte-Carlo trials never share a stream.
namespace streams {
inline constexpr std::uint64_t kLos = 0xF000'0000'0000'0001ULL;
inline constexpr std::uint64_t kPhases = 0xF000'0000'0000'0002ULL;
// Monte-Carlo trial t uses stream t.
} // namespace streams

} // namespace fasris
