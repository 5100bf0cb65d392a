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

#ifndef KQPD_ESTIMATION_HPP
#define KQPD_ESTIMATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kqpd/grid.hpp"
#include "kqpd/sampling.hpp"

// Empirical characteristic functions and the cutoff-regularized K estimator.
//
// K is recovered by Fourier inversion of the joint-measurement
// characteristic function multiplied by the single-observable ratio
// Y'(lambda)/Y(lambda), which swaps the measurement imprecision at strength
// chi for the one at chi_prime. Two cutoffs stabilize the estimator: nodes
// where the denominator magnitude |Y(lambda)| fails to exceed c_o are zeroed
// (applied per lambda node; a global zeroing would trigger at any large
// lambda and return 0 almost always), and the inversion integral is
// truncated at |lambda| <= lambda_c.

namespace kqpd {

/// Cutoff and quadrature configuration of the K estimator. n_lambda is odd
/// so lambda = 0 (where Y = 1 exactly) is always a node. c_o = 0 disables
/// the magnitude floor (used by oracle-mode checks on exact characteristic
/// functions); user-facing configs require c_o in (0, 1].
struct CutoffConfig {
    double c_o = 0.01;
    double lambda_c = 10.0;
    std::size_t n_lambda = 401;

    Axis lambda_axis() const { return Axis::symmetric(lambda_c, n_lambda); }

    /// Validates the user-facing contract: c_o in (0, 1], lambda_c > 0,
    /// n_lambda odd and >= 11. Estimator entry points do not call this;
    /// edge values (c_o = 0, c_o > 1, lambda_c = 0) have defined semantics.
    void validate() const;
};

/// Result of one K evaluation. `value` is the real part of the quadrature;
/// the imaginary part is dropped and reported as a diagnostic. `all_cut`
/// flags an estimate where no lambda node contributed (every node cut off,
/// or an empty integration domain).
struct KEstimate {
    double value = 0.0;
    double imag_part = 0.0;
    std::size_t active_nodes = 0;
    bool all_cut = false;
};

/// Empirical characteristic function of a single-observable record:
/// Y(lambda) = (1/N) sum_j exp(-i lambda x_j), an unbiased estimator of the
/// true characteristic function at every node. Throws on empty or joint
/// records.
CharFnGrid empirical_cf(const MeasurementRecord& record, const Axis& lambda);

/// 2D empirical characteristic function of a joint x/p record.
CharFnGrid empirical_cf_joint_xp(const MeasurementRecord& record, const Axis& lambda_x,
                                 const Axis& lambda_p);

/// Per-sigma2 empirical characteristic functions of a joint spin record,
/// each normalized by the total sample count N so the two values at
/// lambda = 0 sum to one.
struct SpinCfPair {
    CharFnGrid minus;  // sigma2 = -1
    CharFnGrid plus;   // sigma2 = +1
};
SpinCfPair empirical_cf_spin(const MeasurementRecord& record, const Axis& lambda);

/// K estimator for the x/p example from characteristic-function grids
/// (empirical or exact). Trapezoidal quadrature over [-lambda_c, lambda_c]^2
/// of exp(i lambda.A) Y_joint (Y'_x/Y_x)(Y'_p/Y_p), with the integrand
/// zeroed at nodes where either denominator magnitude is <= c_o. All grids
/// must share one lambda axis.
KEstimate estimate_k_xp_from_cfs(const CharFnGrid& joint_cf, const CharFnGrid& den_x,
                                 const CharFnGrid& den_p, const CharFnGrid& num_x,
                                 const CharFnGrid& num_p, double x, double p, double c_o);

/// K estimator for the x/p example from measurement records. Builds the
/// four single-observable empirical CFs, then evaluates the same quadrature
/// in factorized form,
///   K = (1/N) sum_j [sum_k w_k R_x(l_k) e^{i l_k (x - x_j)}]
///               * [sum_k w_k R_p(l_k) e^{i l_k (p - p_j)}] / (2 pi)^2,
/// which is algebraically identical to the 2D grid quadrature but never
/// materializes the joint CF. Denominator records must carry the joint
/// record's strength chi; numerator records carry chi_prime.
KEstimate estimate_k_xp(const MeasurementRecord& joint, const MeasurementRecord& single_x_chi,
                        const MeasurementRecord& single_p_chi,
                        const MeasurementRecord& single_x_chip,
                        const MeasurementRecord& single_p_chip, double x, double p,
                        const CutoffConfig& cutoffs);

/// 1D analogue for the qubit example at fixed sigma2.
KEstimate estimate_k_spin_from_cfs(const CharFnGrid& joint_cf_sigma2, const CharFnGrid& den,
                                   const CharFnGrid& num, double sigma1, double c_o);

KEstimate estimate_k_spin(const MeasurementRecord& joint, const MeasurementRecord& single_chi,
                          const MeasurementRecord& single_chip, double sigma1, int sigma2,
                          const CutoffConfig& cutoffs);

/// K evaluated on a probe grid from one shared set of characteristic
/// functions (records are sampled once and reused across probes).
DensityGrid k_surface_xp_from_cfs(const CharFnGrid& joint_cf, const CharFnGrid& den_x,
                                  const CharFnGrid& den_p, const CharFnGrid& num_x,
                                  const CharFnGrid& num_p, const Axis& probe_x,
                                  const Axis& probe_p, double c_o);

DensityGrid k_surface_xp(const MeasurementRecord& joint, const MeasurementRecord& single_x_chi,
                         const MeasurementRecord& single_p_chi,
                         const MeasurementRecord& single_x_chip,
                         const MeasurementRecord& single_p_chip, const Axis& probe_x,
                         const Axis& probe_p, const CutoffConfig& cutoffs);

/// Spin K surface: axes {probe_sigma1, sigma2 in {-1, +1}}; value(i, 0) is
/// the sigma2 = -1 branch, value(i, 1) the sigma2 = +1 branch.
DensityGrid k_surface_spin_from_cfs(const CharFnGrid& joint_minus, const CharFnGrid& joint_plus,
                                    const CharFnGrid& den, const CharFnGrid& num,
                                    const Axis& probe_sigma1, double c_o);

DensityGrid k_surface_spin(const MeasurementRecord& joint, const MeasurementRecord& single_chi,
                           const MeasurementRecord& single_chip, const Axis& probe_sigma1,
                           const CutoffConfig& cutoffs);

enum class Verdict { classical_rejected, inconclusive };

std::string to_string(Verdict v);

/// One repeat-trial experiment: sample fresh records at derived seeds and
/// estimate K at a fixed probe, R times.
struct ExperimentSpec {
    SystemKind system = SystemKind::fock_xp;
    double chi = 1.0;
    double chi_prime = 5.0;
    std::size_t n_single = 15000;
    std::size_t n_joint = 30000;
    CutoffConfig cutoffs;
    /// (x, p) for fock_xp; (sigma1, sigma2 as +-1.0) for spin.
    std::array<double, 2> probe{0.0, 0.0};
    double z_threshold = 5.0;
};

/// Estimated K at one probe with repeat-trial statistics and the
/// non-classicality verdict: classical_rejected iff mean/std_error is below
/// -z_threshold (a classical model obeys K >= 0).
struct KEstimateReport {
    ExperimentSpec spec;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> k_estimates;
    std::vector<double> imag_parts;
    double mean = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    std::optional<double> exact_k;
    Verdict verdict = Verdict::inconclusive;
};

/// Runs `trials` independent sample-and-estimate pipelines with seeds
/// mix_seed(master_seed, t); record r of trial t uses
/// mix_seed(mix_seed(master_seed, t), r). Results are identical for any
/// worker count: trial outputs are stored by index and reduced in trial
/// order. Requires trials >= 2 and distinct derived seeds.
KEstimateReport repeat_trials(const ExperimentSpec& spec, std::size_t trials,
                              std::uint64_t master_seed, unsigned threads = 1);

/// Exact K of the benchmark system at the spec's probe and strengths.
double exact_k_for(const ExperimentSpec& spec);

}  // namespace kqpd

#endif
