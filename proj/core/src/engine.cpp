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

#include "kqpd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace kqpd {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kMergeTol = 1e-9;
constexpr double kImagResidueTol = 1e-10;

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol) {
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    require_hermitian(entries_, "DensityMatrix");
    const double trace_dev = std::abs(entries_.trace() - std::complex<double>(1.0, 0.0));
    if (trace_dev > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix: trace must be 1 (deviation " +
                                    std::to_string(trace_dev) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("DensityMatrix: eigendecomposition failed");
    }
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                    std::to_string(solver.eigenvalues().minCoeff()) + ")");
    }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double norm = psi.norm();
    if (norm <= 0.0) throw std::invalid_argument("DensityMatrix::pure: zero state");
    const Eigen::VectorXcd unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("DensityMatrix::maximally_mixed: dim must be >= 1");
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

Observable::Observable(Eigen::MatrixXcd entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
    require_hermitian(entries_, "Observable");
}

Observable Observable::pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return Observable(m, "sigma_x");
}

Observable Observable::pauli_y() {
    Eigen::MatrixXcd m(2, 2);
    m << std::complex<double>(0, 0), std::complex<double>(0, -1), std::complex<double>(0, 1),
        std::complex<double>(0, 0);
    return Observable(m, "sigma_y");
}

Observable Observable::pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return Observable(m, "sigma_z");
}

SignedAtomDistribution kqpd_generic_sequential(const DensityMatrix& rho, const Observable& a1,
                                               const Observable& a2, double gamma1,
                                               double gamma2) {
    if (rho.dim() != a1.dim() || rho.dim() != a2.dim()) {
        throw std::invalid_argument("kqpd_generic_sequential: dimension mismatch");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver1(a1.entries());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver2(a2.entries());
    if (solver1.info() != Eigen::Success || solver2.info() != Eigen::Success) {
        throw NumericalError("kqpd_generic_sequential: eigendecomposition failed");
    }
    const Eigen::VectorXd& ev1 = solver1.eigenvalues();
    const Eigen::VectorXd& ev2 = solver2.eigenvalues();

    // rho in the a1 eigenbasis and the <b_k|m> overlaps.
    const Eigen::MatrixXcd rho1 = solver1.eigenvectors().adjoint() * rho.entries() *
                                  solver1.eigenvectors();
    const Eigen::MatrixXcd overlap = solver2.eigenvectors().adjoint() * solver1.eigenvectors();

    struct RawAtom {
        double a1;
        double a2;
        std::complex<double> weight;
    };
    const Eigen::Index dim = rho.dim();
    std::vector<RawAtom> raw;
    raw.reserve(static_cast<std::size_t>(dim * dim * dim));
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double phi = gamma1 * (ev1(m) - ev1(n));
            const std::complex<double> phase(std::cos(phi), -std::sin(phi));
            const std::complex<double> rho_phase = rho1(m, n) * phase;
            const double outcome1 = 0.5 * (ev1(m) + ev1(n));
            for (Eigen::Index k = 0; k < dim; ++k) {
                raw.push_back({outcome1, ev2(k),
                               rho_phase * overlap(k, m) * std::conj(overlap(k, n))});
            }
        }
    }

    std::sort(raw.begin(), raw.end(), [](const RawAtom& lhs, const RawAtom& rhs) {
        if (lhs.a1 != rhs.a1) return lhs.a1 < rhs.a1;
        return lhs.a2 < rhs.a2;
    });

    SignedAtomDistribution dist;
    dist.gamma1 = gamma1;
    dist.gamma2 = gamma2;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::complex<double> total = raw[i].weight;
        std::size_t j = i + 1;
        while (j < raw.size() && std::abs(raw[j].a1 - raw[i].a1) <= kMergeTol &&
               std::abs(raw[j].a2 - raw[i].a2) <= kMergeTol) {
            total += raw[j].weight;
            ++j;
        }
        dist.imag_residue += std::abs(total.imag());
        dist.atoms.push_back({raw[i].a1, raw[i].a2, total.real()});
        i = j;
    }
    if (dist.imag_residue >= kImagResidueTol) {
        throw NumericalError("kqpd_generic_sequential: imaginary residue " +
                             std::to_string(dist.imag_residue) + " exceeds tolerance");
    }
    return dist;
}

}  // namespace kqpd
