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

#ifndef KQPD_ATOMS_HPP
#define KQPD_ATOMS_HPP

#include <vector>

namespace kqpd {

/// One point mass of a discrete quasi-probability distribution. Weights may
/// be negative.
struct SignedAtom {
    double a1 = 0.0;
    double a2 = 0.0;
    double weight = 0.0;
};

/// Discrete quasi-probability distribution over joint outcomes of two
/// observables, evaluated at fixed backaction variables (gamma1, gamma2).
/// Weights sum to one; outcome tuples are unique.
struct SignedAtomDistribution {
    std::vector<SignedAtom> atoms;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    /// Sum of |imaginary parts| dropped when collapsing weights to reals.
    double imag_residue = 0.0;

    double weight_sum() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.weight;
        return s;
    }
};

}  // namespace kqpd

#endif
