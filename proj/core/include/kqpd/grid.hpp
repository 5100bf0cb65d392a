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

#ifndef KQPD_GRID_HPP
#define KQPD_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "kqpd/common.hpp"

namespace kqpd {

/// Uniform 1D axis with n nodes on [lo, hi].
struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;

    double step() const { return n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0; }
    double node(std::size_t i) const { return lo + static_cast<double>(i) * step(); }

    static Axis symmetric(double half_width, std::size_t n) {
        return Axis{-half_width, half_width, n};
    }
};

/// Composite trapezoidal weights (end nodes carry half a step).
std::vector<double> trapezoid_weights(const Axis& axis);

/// Real-valued density tabulated on a uniform grid (1D or 2D, row-major).
struct DensityGrid {
    std::vector<Axis> axes;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double& at(std::size_t i) { return values[i]; }
    double& at(std::size_t i, std::size_t j) { return values[i * axes[1].n + j]; }
    double at(std::size_t i) const { return values[i]; }
    double at(std::size_t i, std::size_t j) const { return values[i * axes[1].n + j]; }

    /// Trapezoidal integral over all axes.
    double integral() const;
};

/// Complex characteristic-function values on a uniform lambda grid (1D or
/// 2D, row-major).
struct CharFnGrid {
    std::vector<Axis> axes;
    std::vector<std::complex<double>> values;

    std::size_t size() const { return values.size(); }
    std::complex<double>& at(std::size_t i) { return values[i]; }
    std::complex<double>& at(std::size_t i, std::size_t j) { return values[i * axes[1].n + j]; }
    std::complex<double> at(std::size_t i) const { return values[i]; }
    std::complex<double> at(std::size_t i, std::size_t j) const {
        return values[i * axes[1].n + j];
    }
};

/// Default evaluation grids. The x/p and sigma1 grids resolve the narrowest
/// Gaussians appearing at the benchmark measurement strengths.
Axis default_xp_axis();      // [-6, 6], step 0.05
Axis default_sigma1_axis();  // [-4, 4], step 0.01

template <typename F>
DensityGrid tabulate_1d(F&& f, const Axis& axis) {
    DensityGrid g;
    g.axes = {axis};
    g.values.resize(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) g.values[i] = f(axis.node(i));
    return g;
}

template <typename F>
DensityGrid tabulate_2d(F&& f, const Axis& ax, const Axis& ay) {
    DensityGrid g;
    g.axes = {ax, ay};
    g.values.resize(ax.n * ay.n);
    for (std::size_t i = 0; i < ax.n; ++i)
        for (std::size_t j = 0; j < ay.n; ++j) g.values[i * ay.n + j] = f(ax.node(i), ay.node(j));
    return g;
}

template <typename F>
CharFnGrid tabulate_cf_1d(F&& f, const Axis& axis) {
    CharFnGrid g;
    g.axes = {axis};
    g.values.resize(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) g.values[i] = f(axis.node(i));
    return g;
}

template <typename F>
CharFnGrid tabulate_cf_2d(F&& f, const Axis& ax, const Axis& ay) {
    CharFnGrid g;
    g.axes = {ax, ay};
    g.values.resize(ax.n * ay.n);
    for (std::size_t i = 0; i < ax.n; ++i)
        for (std::size_t j = 0; j < ay.n; ++j) g.values[i * ay.n + j] = f(ax.node(i), ay.node(j));
    return g;
}

}  // namespace kqpd

#endif
