// Copyright 2026 The kqpd project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KQPD_COMMON_HPP
#define KQPD_COMMON_HPP

#include <stdexcept>
#include <string>

namespace kqpd {

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid user-supplied configuration (config files, CLI arguments,
/// malformed input files). Mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical diagnostic tripped (rejection sampler starved, all lambda
/// nodes cut off, eigensolver failure, ...). Mapped to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be > 0");
    }
}

inline void require_sigma2(int sigma2) {
    if (sigma2 != -1 && sigma2 != 1) {
        throw std::invalid_argument("sigma2 must be -1 or +1");
    }
}

}  // namespace detail
}  // namespace kqpd

#endif
