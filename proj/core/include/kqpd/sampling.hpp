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

#ifndef KQPD_SAMPLING_HPP
#define KQPD_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kqpd/common.hpp"

// Exact, seeded Monte Carlo samplers for the four measured distributions.
// Every sampler is an exact scheme (mixture decomposition or rejection from
// the positive mixture part), so outcomes are i.i.d. draws from the closed
// forms in kqpd/systems.hpp with no autocorrelation. Spin samplers draw from
// the balanced benchmark state.

namespace kqpd {

enum class SystemKind { fock_xp, spin };
enum class RecordKind { joint, single_1, single_2 };

std::string to_string(SystemKind k);
std::string to_string(RecordKind k);
SystemKind system_from_string(const std::string& s);
RecordKind kind_from_string(const std::string& s);

/// Seeded batch of sampled outcomes with full provenance. Outcomes are
/// columnar: a1 always filled, a2 filled for joint records only (spin sigma2
/// stored as +-1.0). Identical (system, kind, chi, seed, N) reproduce
/// identical outcomes.
struct MeasurementRecord {
    SystemKind system = SystemKind::fock_xp;
    RecordKind kind = RecordKind::joint;
    double chi = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> a1;
    std::vector<double> a2;

    std::size_t size() const { return a1.size(); }
};

/// Joint x/p outcomes. In polar form the density of u = r^2 is a mixture of
/// Exponential(a) and Gamma(2, a) components read off the closed form; the
/// angle is uniform.
MeasurementRecord sample_xp_joint(double chi, std::size_t n, std::uint64_t seed);

/// Single-quadrature outcomes: mixture of a Gaussian and an x^2-weighted
/// Gaussian (drawn as a sign-symmetrized scaled chi with 3 degrees of
/// freedom). `which` labels the record as the x or the p measurement.
MeasurementRecord sample_x_single(double chi, std::size_t n, std::uint64_t seed,
                                  RecordKind which = RecordKind::single_1);

/// Joint spin outcomes, two-stage: sigma2 from its closed-form marginal,
/// then sigma1 by rejection against the positive-weight Gaussian mixture
/// (the negative interference component only lowers the target). The
/// sigma2 = -1 branch accepts with analytic rate 1 - exp(-chi^2); throws
/// NumericalError when that rate is below 1%.
MeasurementRecord sample_spin_joint(double chi, std::size_t n, std::uint64_t seed);

/// Single-spin outcomes: exact two-Gaussian mixture.
MeasurementRecord sample_spin_single(double chi, std::size_t n, std::uint64_t seed);

}  // namespace kqpd

#endif
