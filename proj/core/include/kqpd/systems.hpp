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

#ifndef KQPD_SYSTEMS_HPP
#define KQPD_SYSTEMS_HPP

#include <complex>
#include <cstdint>

#include "kqpd/atoms.hpp"
#include "kqpd/common.hpp"

// Closed-form physics of the two benchmark systems:
//
//  * fock_xp: simultaneous position/momentum measurement of a single-photon
//    Fock state with two Gaussian detectors of equal strength chi.
//  * spin: weak sigma_z measurement (strength chi) followed by a projective
//    sigma_x measurement on a qubit.
//
// All measurement strengths are the coupling constants of von Neumann
// detectors with minimal-uncertainty Gaussian states; chi controls both the
// imprecision (position spread) and the backaction (momentum spread) of a
// detector. Units are dimensionless throughout (hbar = 1).

namespace kqpd {

/// Wigner function of the single-photon Fock state,
/// (1/pi) [2(x^2+p^2) - 1] exp(-(x^2+p^2)). Negative at the origin.
double wigner_fock(double x, double p);

/// Wigner function of the Gaussian detector state,
/// (1/pi) exp(-(r^2 + momentum^2)). Factorizes into an r part (imprecision)
/// times a momentum part (backaction).
double wigner_detector(double r, double momentum);

/// Quasi-probability distribution of the simultaneous x/p measurement at
/// backaction kicks (gamma_x, gamma_p): wigner_fock(x - gamma_p/2, p + gamma_x/2).
double kqpd_xp(double x, double p, double gamma_x, double gamma_p);

/// Qubit pair (initial state, second measurement axis) expressed in the
/// eigenbasis of the first measured observable:
///   |psi>  = alpha |+1> + beta |-1>
///   |+2>   = gamma |+1> + delta |-1>
/// Both rows must be normalized within 1e-10.
struct SpinState {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
    std::complex<double> gamma{1.0, 0.0};
    std::complex<double> delta{0.0, 0.0};

    /// |+> state probed by sigma_z then sigma_x: all amplitudes 1/sqrt(2).
    static SpinState balanced();

    void validate() const;
};

/// Discrete quasi-probability distribution of the sequential qubit
/// measurement: six atoms at sigma1 in {-1, 0, +1} x sigma2 in {-1, +1}.
/// The sigma1 = 0 atoms carry the interference weight
/// +-2 Re{exp(-2 i gamma1) alpha beta* gamma* delta}.
SignedAtomDistribution kqpd_spin_weights(const SpinState& state, double gamma1);

/// Measured joint x/p distribution at strength chi (closed form).
double pdf_xp_joint(double x, double p, double chi);

/// Characteristic function of pdf_xp_joint; real-valued,
/// (1/2) exp(-((2+chi^2)^2/(16 chi^2)) L^2) (2 - L^2) with L^2 = lx^2 + lp^2.
double cf_xp_joint(double lambda_x, double lambda_p, double chi);

/// Measured distribution of a single-quadrature measurement at strength chi.
/// By rotational invariance the same law holds for x and for p.
double pdf_x_single(double x, double chi);

/// Characteristic function of pdf_x_single; real-valued,
/// (1/2) exp(-(1+chi^2) l^2 / (4 chi^2)) (2 - l^2).
double cf_x_single(double lambda, double chi);

/// Ratio cf_x_single(lambda, chi_prime) / cf_x_single(lambda, chi) with the
/// common polynomial factor cancelled analytically:
/// exp(-(lambda^2/4)(1/chi_prime^2 - 1/chi^2)). Finite at lambda = sqrt(2)
/// where both characteristic functions vanish.
double imprecision_ratio_xp(double lambda, double chi, double chi_prime);

/// Exact K for the x/p example. With g = (chi/2)^2 + 1/chi_prime^2,
///   K = [1 / (pi (1+g)^3)] exp(-r^2/(1+g)) [2 r^2 - 1 + g^2].
/// Negative at the origin iff g < 1.
double exact_k_xp(double x, double p, double chi, double chi_prime);

/// Measured joint distribution of the qubit example: density in the
/// continuous first outcome sigma1, probability in sigma2 = +-1. Tiny
/// negative values from floating-point cancellation (above -1e-12) are
/// clamped to zero and counted, see pdf_spin_joint_clamp_count().
double pdf_spin_joint(double sigma1, int sigma2, double chi,
                      const SpinState& state = SpinState::balanced());

/// Hybrid characteristic function of pdf_spin_joint: Fourier transform in
/// sigma1 only, at fixed sigma2.
std::complex<double> cf_spin_joint(double lambda1, int sigma2, double chi,
                                   const SpinState& state = SpinState::balanced());

/// Measured distribution of the first spin observable alone: two-Gaussian
/// mixture with weights |alpha|^2 and |beta|^2.
double pdf_spin_single(double sigma1, double chi,
                       const SpinState& state = SpinState::balanced());

/// Characteristic function of pdf_spin_single:
/// exp(-l^2/(4 chi^2)) [cos(l) + (|beta|^2 - |alpha|^2) i sin(l)].
std::complex<double> cf_spin_single(double lambda1, double chi,
                                    const SpinState& state = SpinState::balanced());

/// Exact K for the qubit example: the discrete weights smeared by Gaussians
/// of width 1/chi_prime, with the interference atom damped by exp(-chi^2).
double exact_k_spin(double sigma1, int sigma2, double chi, double chi_prime,
                    const SpinState& state = SpinState::balanced());

/// Number of pdf_spin_joint evaluations clamped from a tiny negative value
/// to zero since process start (or the last reset). Thread-safe.
std::uint64_t pdf_spin_joint_clamp_count();
void pdf_spin_joint_clamp_reset();

}  // namespace kqpd

#endif
