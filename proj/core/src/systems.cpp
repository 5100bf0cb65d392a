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

#include "kqpd/systems.hpp"

#include <atomic>
#include <cmath>

namespace kqpd {

namespace {

std::atomic<std::uint64_t> g_spin_clamp_count{0};

double sq(double v) { return v * v; }

}  // namespace

double wigner_fock(double x, double p) {
    const double r2 = x * x + p * p;
    return (2.0 * r2 - 1.0) * std::exp(-r2) / kPi;
}

double wigner_detector(double r, double momentum) {
    return std::exp(-(r * r + momentum * momentum)) / kPi;
}

double kqpd_xp(double x, double p, double gamma_x, double gamma_p) {
    return wigner_fock(x - 0.5 * gamma_p, p + 0.5 * gamma_x);
}

SpinState SpinState::balanced() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return SpinState{{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}};
}

void SpinState::validate() const {
    const double n_state = std::norm(alpha) + std::norm(beta);
    const double n_axis = std::norm(gamma) + std::norm(delta);
    if (std::abs(n_state - 1.0) > 1e-10 || std::abs(n_axis - 1.0) > 1e-10) {
        throw std::invalid_argument("SpinState: amplitudes must be normalized within 1e-10");
    }
}

SignedAtomDistribution kqpd_spin_weights(const SpinState& state, double gamma1) {
    state.validate();
    const double pa = std::norm(state.alpha);
    const double pb = std::norm(state.beta);
    const double pg = std::norm(state.gamma);
    const double pd = std::norm(state.delta);
    const std::complex<double> phase(std::cos(2.0 * gamma1), -std::sin(2.0 * gamma1));
    const double interference =
        2.0 * std::real(phase * state.alpha * std::conj(state.beta) * std::conj(state.gamma) *
                        state.delta);
    SignedAtomDistribution dist;
    dist.gamma1 = gamma1;
    dist.atoms = {
        {+1.0, +1.0, pa * pg}, {-1.0, +1.0, pb * pd}, {0.0, +1.0, +interference},
        {+1.0, -1.0, pa * pd}, {-1.0, -1.0, pb * pg}, {0.0, -1.0, -interference},
    };
    return dist;
}

double pdf_xp_joint(double x, double p, double chi) {
    detail::require_positive(chi, "chi");
    const double r2 = x * x + p * p;
    const double c2 = chi * chi;
    const double d = 2.0 + c2;
    const double a = 4.0 * c2 / (d * d);
    const double b = 32.0 * c2 * c2;
    const double c = sq(4.0 - c2 * c2);
    return 4.0 * c2 / (kPi * std::pow(d, 6)) * std::exp(-a * r2) * (b * r2 + c);
}

double cf_xp_joint(double lambda_x, double lambda_p, double chi) {
    detail::require_positive(chi, "chi");
    const double l2 = lambda_x * lambda_x + lambda_p * lambda_p;
    const double c2 = chi * chi;
    return 0.5 * std::exp(-sq(2.0 + c2) / (16.0 * c2) * l2) * (2.0 - l2);
}

double pdf_x_single(double x, double chi) {
    detail::require_positive(chi, "chi");
    const double c2 = chi * chi;
    const double one_c2 = 1.0 + c2;
    return chi / std::sqrt(kPi * std::pow(one_c2, 5)) * (one_c2 + 2.0 * x * x * c2 * c2) *
           std::exp(-c2 * x * x / one_c2);
}

double cf_x_single(double lambda, double chi) {
    detail::require_positive(chi, "chi");
    const double c2 = chi * chi;
    return 0.5 * std::exp(-(1.0 + c2) * lambda * lambda / (4.0 * c2)) * (2.0 - lambda * lambda);
}

double imprecision_ratio_xp(double lambda, double chi, double chi_prime) {
    detail::require_positive(chi, "chi");
    detail::require_positive(chi_prime, "chi_prime");
    return std::exp(-0.25 * lambda * lambda *
                    (1.0 / (chi_prime * chi_prime) - 1.0 / (chi * chi)));
}

double exact_k_xp(double x, double p, double chi, double chi_prime) {
    detail::require_positive(chi, "chi");
    detail::require_positive(chi_prime, "chi_prime");
    const double g = sq(0.5 * chi) + 1.0 / sq(chi_prime);
    const double r2 = x * x + p * p;
    const double s = 1.0 + g;
    return std::exp(-r2 / s) * (2.0 * r2 - 1.0 + g * g) / (kPi * s * s * s);
}

double pdf_spin_joint(double sigma1, int sigma2, double chi, const SpinState& state) {
    detail::require_positive(chi, "chi");
    detail::require_sigma2(sigma2);
    const double c2 = chi * chi;
    const double backaction_damp = std::exp(-c2);
    double sum = 0.0;
    for (const auto& atom : kqpd_spin_weights(state, 0.0).atoms) {
        if (static_cast<int>(atom.a2) != sigma2) continue;
        const double damp = atom.a1 == 0.0 ? backaction_damp : 1.0;
        sum += damp * atom.weight * std::exp(-c2 * sq(sigma1 - atom.a1));
    }
    double value = chi / std::sqrt(kPi) * sum;
    if (value < 0.0 && value > -1e-12) {
        // Floating-point cancellation between the Gaussian peaks and the
        // negative interference term; the analytic value is >= 0.
        g_spin_clamp_count.fetch_add(1, std::memory_order_relaxed);
        value = 0.0;
    }
    return value;
}

std::complex<double> cf_spin_joint(double lambda1, int sigma2, double chi,
                                   const SpinState& state) {
    detail::require_positive(chi, "chi");
    detail::require_sigma2(sigma2);
    const double c2 = chi * chi;
    const double backaction_damp = std::exp(-c2);
    std::complex<double> sum = 0.0;
    for (const auto& atom : kqpd_spin_weights(state, 0.0).atoms) {
        if (static_cast<int>(atom.a2) != sigma2) continue;
        const double damp = atom.a1 == 0.0 ? backaction_damp : 1.0;
        sum += damp * atom.weight *
               std::complex<double>(std::cos(lambda1 * atom.a1), -std::sin(lambda1 * atom.a1));
    }
    return std::exp(-lambda1 * lambda1 / (4.0 * c2)) * sum;
}

double pdf_spin_single(double sigma1, double chi, const SpinState& state) {
    detail::require_positive(chi, "chi");
    state.validate();
    const double c2 = chi * chi;
    return chi / std::sqrt(kPi) *
           (std::norm(state.alpha) * std::exp(-c2 * sq(sigma1 - 1.0)) +
            std::norm(state.beta) * std::exp(-c2 * sq(sigma1 + 1.0)));
}

std::complex<double> cf_spin_single(double lambda1, double chi, const SpinState& state) {
    detail::require_positive(chi, "chi");
    state.validate();
    const double asym = std::norm(state.beta) - std::norm(state.alpha);
    return std::exp(-lambda1 * lambda1 / (4.0 * chi * chi)) *
           std::complex<double>(std::cos(lambda1), asym * std::sin(lambda1));
}

double exact_k_spin(double sigma1, int sigma2, double chi, double chi_prime,
                    const SpinState& state) {
    detail::require_positive(chi, "chi");
    detail::require_positive(chi_prime, "chi_prime");
    detail::require_sigma2(sigma2);
    const double backaction_damp = std::exp(-chi * chi);
    const double cp2 = chi_prime * chi_prime;
    double sum = 0.0;
    for (const auto& atom : kqpd_spin_weights(state, 0.0).atoms) {
        if (static_cast<int>(atom.a2) != sigma2) continue;
        const double damp = atom.a1 == 0.0 ? backaction_damp : 1.0;
        sum += damp * atom.weight * std::exp(-cp2 * sq(atom.a1 - sigma1));
    }
    return chi_prime / std::sqrt(kPi) * sum;
}

std::uint64_t pdf_spin_joint_clamp_count() {
    return g_spin_clamp_count.load(std::memory_order_relaxed);
}

void pdf_spin_joint_clamp_reset() { g_spin_clamp_count.store(0, std::memory_order_relaxed); }

}  // namespace kqpd
