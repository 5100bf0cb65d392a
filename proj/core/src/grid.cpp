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

#include "kqpd/grid.hpp"

#include <stdexcept>

namespace kqpd {

std::vector<double> trapezoid_weights(const Axis& axis) {
    if (axis.n < 2) throw std::invalid_argument("trapezoid_weights: axis needs >= 2 nodes");
    std::vector<double> w(axis.n, axis.step());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

double DensityGrid::integral() const {
    if (axes.size() == 1) {
        const auto w = trapezoid_weights(axes[0]);
        double s = 0.0;
        for (std::size_t i = 0; i < axes[0].n; ++i) s += w[i] * values[i];
        return s;
    }
    if (axes.size() == 2) {
        const auto wx = trapezoid_weights(axes[0]);
        const auto wy = trapezoid_weights(axes[1]);
        double s = 0.0;
        for (std::size_t i = 0; i < axes[0].n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < axes[1].n; ++j) row += wy[j] * at(i, j);
            s += wx[i] * row;
        }
        return s;
    }
    throw std::invalid_argument("DensityGrid::integral: only 1D and 2D grids supported");
}

Axis default_xp_axis() { return Axis{-6.0, 6.0, 241}; }

Axis default_sigma1_axis() { return Axis{-4.0, 4.0, 801}; }

}  // namespace kqpd
