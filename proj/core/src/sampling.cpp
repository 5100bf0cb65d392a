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

#include "kqpd/sampling.hpp"

#include <cmath>

#include "kqpd/rng.hpp"

namespace kqpd {

namespace {

void require_count(std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
}

}  // namespace

std::string to_string(SystemKind k) {
    return k == SystemKind::fock_xp ? "fock_xp" : "spin";
}

std::string to_string(RecordKind k) {
    switch (k) {
        case RecordKind::joint: return "joint";
        case RecordKind::single_1: return "single_1";
        default: return "single_2";
    }
}

SystemKind system_from_string(const std::string& s) {
    if (s == "fock_xp") return SystemKind::fock_xp;
    if (s == "spin") return SystemKind::spin;
    throw ConfigError("unknown system '" + s + "'");
}

RecordKind kind_from_string(const std::string& s) {
    if (s == "joint") return RecordKind::joint;
    if (s == "single_1") return RecordKind::single_1;
    if (s == "single_2") return RecordKind::single_2;
    throw ConfigError("unknown record kind '" + s + "'");
}

MeasurementRecord sample_xp_joint(double chi, std::size_t n, std::uint64_t seed) {
    detail::require_positive(chi, "chi");
    require_count(n);
    RandomStream rng(seed);

    const double c2 = chi * chi;
    const double d = 2.0 + c2;
    const double a = 4.0 * c2 / (d * d);
    const double b = 32.0 * c2 * c2;
    const double c = (4.0 - c2 * c2) * (4.0 - c2 * c2);
    // Density of u = r^2 is prop. to e^{-a u} (b u + c): an Exponential(a)
    // component of mass c/a plus a Gamma(2, a) component of mass b/a^2.
    const double mass_exp = c / a;
    const double mass_gamma = b / (a * a);
    const double p_exp = mass_exp / (mass_exp + mass_gamma);

    MeasurementRecord rec{SystemKind::fock_xp, RecordKind::joint, chi, seed, {}, {}};
    rec.a1.reserve(n);
    rec.a2.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u;
        if (rng.uniform() < p_exp) {
            u = rng.exponential(a);
        } else {
            u = rng.exponential(a) + rng.exponential(a);
        }
        const double theta = 2.0 * kPi * rng.uniform();
        const double r = std::sqrt(u);
        rec.a1.push_back(r * std::cos(theta));
        rec.a2.push_back(r * std::sin(theta));
    }
    return rec;
}

MeasurementRecord sample_x_single(double chi, std::size_t n, std::uint64_t seed,
                                  RecordKind which) {
    detail::require_positive(chi, "chi");
    require_count(n);
    if (which == RecordKind::joint) {
        throw std::invalid_argument("sample_x_single: record kind must be single_1 or single_2");
    }
    RandomStream rng(seed);

    const double c2 = chi * chi;
    const double sigma = std::sqrt((1.0 + c2) / (2.0 * c2));
    // Weights 1 : chi^2 between the plain Gaussian and the x^2-weighted
    // Gaussian read off the closed form.
    const double p_weighted = c2 / (1.0 + c2);

    MeasurementRecord rec{SystemKind::fock_xp, which, chi, seed, {}, {}};
    rec.a1.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x;
        if (rng.uniform() < p_weighted) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double z3 = rng.normal();
            const double magnitude = sigma * std::sqrt(z1 * z1 + z2 * z2 + z3 * z3);
            x = rng.uniform() < 0.5 ? -magnitude : magnitude;
        } else {
            x = sigma * rng.normal();
        }
        rec.a1.push_back(x);
    }
    return rec;
}

MeasurementRecord sample_spin_joint(double chi, std::size_t n, std::uint64_t seed) {
    detail::require_positive(chi, "chi");
    require_count(n);

    const double c2 = chi * chi;
    const double interference = 0.5 * std::exp(-c2);
    // Acceptance rate of the sigma2 = -1 rejection branch (analytic for the
    // balanced state).
    const double accept_rate = 1.0 - std::exp(-c2);
    if (accept_rate < 0.01) {
        throw NumericalError("sample_spin_joint: rejection acceptance rate " +
                             std::to_string(accept_rate) + " below 1% at chi = " +
                             std::to_string(chi));
    }
    const double p_plus = 0.5 + interference;
    const double sd = 1.0 / (chi * std::sqrt(2.0));

    RandomStream rng(seed);
    MeasurementRecord rec{SystemKind::spin, RecordKind::joint, chi, seed, {}, {}};
    rec.a1.reserve(n);
    rec.a2.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool plus = rng.uniform() < p_plus;
        double s1;
        if (plus) {
            // All three component weights are positive: exact mixture draw.
            const double pick = rng.uniform() * p_plus;
            const double mu = pick < 0.25 ? 1.0 : (pick < 0.5 ? -1.0 : 0.0);
            s1 = mu + sd * rng.normal();
        } else {
            // Negative interference component: rejection against the
            // positive part. target/proposal <= 1 everywhere.
            std::size_t attempts = 0;
            for (;;) {
                if (++attempts > 1000000) {
                    throw NumericalError("sample_spin_joint: rejection loop starved");
                }
                const double mu = rng.uniform() < 0.5 ? 1.0 : -1.0;
                const double cand = mu + sd * rng.normal();
                const double proposal =
                    0.25 * (std::exp(-c2 * (cand - 1.0) * (cand - 1.0)) +
                            std::exp(-c2 * (cand + 1.0) * (cand + 1.0)));
                const double target = proposal - interference * std::exp(-c2 * cand * cand);
                if (rng.uniform() * proposal < target) {
                    s1 = cand;
                    break;
                }
            }
        }
        rec.a1.push_back(s1);
        rec.a2.push_back(plus ? 1.0 : -1.0);
    }
    return rec;
}

MeasurementRecord sample_spin_single(double chi, std::size_t n, std::uint64_t seed) {
    detail::require_positive(chi, "chi");
    require_count(n);
    RandomStream rng(seed);
    const double sd = 1.0 / (chi * std::sqrt(2.0));
    MeasurementRecord rec{SystemKind::spin, RecordKind::single_1, chi, seed, {}, {}};
    rec.a1.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = rng.uniform() < 0.5 ? 1.0 : -1.0;
        rec.a1.push_back(mu + sd * rng.normal());
    }
    return rec;
}

}  // namespace kqpd
