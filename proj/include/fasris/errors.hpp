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

#include <stdexcept>
#include <string>

namespace fasris {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Structurally invalid input (mismatched lengths, bad partitions, bad config).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its accuracy contract.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double detail = 0.0)
        : std::runtime_error(what), detail_(detail) {}

    // Worst subinterval error estimate for quadrature failures, offending
    // eigenvalue for factorization failures, 0 otherwise.
    double detail() const noexcept { return detail_; }

private:
    double detail_;
};

} // namespace fasris
