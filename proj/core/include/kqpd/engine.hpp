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

#ifndef KQPD_ENGINE_HPP
#define KQPD_ENGINE_HPP

#include <Eigen/Dense>
#include <string>

#include "kqpd/atoms.hpp"
#include "kqpd/common.hpp"

namespace kqpd {

/// Finite-dimensional quantum state. Validates hermiticity (1e-12), unit
/// trace (1e-12) and positive semidefiniteness (min eigenvalue >= -1e-10)
/// on construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

  private:
    Eigen::MatrixXcd entries_;
};

/// Hermitian observable with a display label.
class Observable {
  public:
    Observable(Eigen::MatrixXcd entries, std::string label);

    static Observable pauli_x();
    static Observable pauli_y();
    static Observable pauli_z();

    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    const std::string& label() const { return label_; }

  private:
    Eigen::MatrixXcd entries_;
    std::string label_;
};

/// Generic discrete quasi-probability distribution for two sequentially
/// measured observables of a finite-dimensional system.
///
/// Expanding the state in the eigenbasis {a_m, |m>} of a1 and tracing in the
/// eigenbasis {b_k, |b_k>} of a2 turns the Fourier integrals over lambda into
/// exact delta atoms: one atom per (m, n, k) at outcome
/// ((a_m + a_n)/2, b_k) with weight Re{rho_mn e^{-i gamma1 (a_m - a_n)}
/// <b_k|m><n|b_k>}. Atoms whose outcome tuples coincide within 1e-9 are
/// merged (degenerate spectra). gamma2 enters only as a pure phase on a2
/// eigenstates and cancels inside the trace, so the weights are independent
/// of it; the parameter is kept for interface symmetry.
///
/// Throws NumericalError if the summed imaginary residue of the merged
/// weights reaches 1e-10, or if an eigendecomposition fails.
SignedAtomDistribution kqpd_generic_sequential(const DensityMatrix& rho, const Observable& a1,
                                               const Observable& a2, double gamma1,
                                               double gamma2);

}  // namespace kqpd

#endif
