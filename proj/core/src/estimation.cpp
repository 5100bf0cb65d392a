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

#include "kqpd/estimation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "kqpd/parallel.hpp"
#include "kqpd/rng.hpp"
#include "kqpd/systems.hpp"

namespace kqpd {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_nonempty(const MeasurementRecord& rec) {
    if (rec.size() == 0) throw std::invalid_argument("empty measurement record");
}

void require_single(const MeasurementRecord& rec) {
    require_nonempty(rec);
    if (rec.kind == RecordKind::joint) {
        throw std::invalid_argument("expected a single-observable record");
    }
}

void require_axis_match(const Axis& a, const Axis& b, const char* what) {
    if (a.lo != b.lo || a.hi != b.hi || a.n != b.n) {
        throw std::invalid_argument(std::string(what) + ": lambda axes differ");
    }
}

// Adds sum_k coeff[k] * exp(-i lambda_k x) for the uniform lambda axis via a
// phasor recurrence: two trig evaluations per sample instead of one per
// node. Unit-phasor drift over ~1e3 multiplies stays below 1e-12.
inline std::complex<double> phasor_dot(const std::vector<std::complex<double>>& coeff,
                                       const Axis& lambda, double x) {
    std::complex<double> phasor(std::cos(lambda.lo * x), -std::sin(lambda.lo * x));
    const double h = lambda.step();
    const std::complex<double> rot(std::cos(h * x), -std::sin(h * x));
    std::complex<double> acc = 0.0;
    for (const auto& c : coeff) {
        acc += c * phasor;
        phasor *= rot;
    }
    return acc;
}

void accumulate_phasors(std::vector<std::complex<double>>& grid, const Axis& lambda, double x) {
    std::complex<double> phasor(std::cos(lambda.lo * x), -std::sin(lambda.lo * x));
    const double h = lambda.step();
    const std::complex<double> rot(std::cos(h * x), -std::sin(h * x));
    for (auto& g : grid) {
        g += phasor;
        phasor *= rot;
    }
}

// Masked ratio num/den with trapezoid weight folded in:
// coeff[k] = w_k num_k / den_k where |den_k| > c_o, else 0.
std::vector<std::complex<double>> weighted_masked_ratio(const CharFnGrid& num,
                                                        const CharFnGrid& den, double c_o,
                                                        std::size_t* active) {
    const Axis& axis = den.axes[0];
    require_axis_match(axis, num.axes[0], "weighted_masked_ratio");
    const auto w = trapezoid_weights(axis);
    std::vector<std::complex<double>> coeff(axis.n, 0.0);
    std::size_t count = 0;
    for (std::size_t k = 0; k < axis.n; ++k) {
        if (std::abs(den.values[k]) > c_o) {
            coeff[k] = w[k] * num.values[k] / den.values[k];
            ++count;
        }
    }
    if (active) *active = count;
    return coeff;
}

struct RatioPair {
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> p;
    std::size_t active_x = 0;
    std::size_t active_p = 0;
};

RatioPair make_xp_ratios(const CharFnGrid& den_x, const CharFnGrid& den_p,
                         const CharFnGrid& num_x, const CharFnGrid& num_p, double c_o) {
    RatioPair r;
    r.x = weighted_masked_ratio(num_x, den_x, c_o, &r.active_x);
    r.p = weighted_masked_ratio(num_p, den_p, c_o, &r.active_p);
    return r;
}

double sample_std(const std::vector<double>& v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void CutoffConfig::validate() const {
    if (!(c_o > 0.0) || c_o > 1.0) throw ConfigError("c_o must be in (0, 1]");
    if (!(lambda_c > 0.0)) throw ConfigError("lambda_c must be > 0");
    if (n_lambda < 11 || n_lambda % 2 == 0) throw ConfigError("n_lambda must be odd and >= 11");
}

std::string to_string(Verdict v) {
    return v == Verdict::classical_rejected ? "classical_rejected" : "inconclusive";
}

CharFnGrid empirical_cf(const MeasurementRecord& record, const Axis& lambda) {
    require_single(record);
    CharFnGrid grid;
    grid.axes = {lambda};
    grid.values.assign(lambda.n, 0.0);
    for (double x : record.a1) accumulate_phasors(grid.values, lambda, x);
    const double inv_n = 1.0 / static_cast<double>(record.size());
    for (auto& v : grid.values) v *= inv_n;
    return grid;
}

CharFnGrid empirical_cf_joint_xp(const MeasurementRecord& record, const Axis& lambda_x,
                                 const Axis& lambda_p) {
    require_nonempty(record);
    if (record.kind != RecordKind::joint || record.system != SystemKind::fock_xp) {
        throw std::invalid_argument("empirical_cf_joint_xp: expected a joint x/p record");
    }
    const std::size_t n = record.size();
    const Eigen::Index nx = static_cast<Eigen::Index>(lambda_x.n);
    const Eigen::Index np = static_cast<Eigen::Index>(lambda_p.n);

    // Blocked rank-B updates J += Vx^T Vp keep this a dense matrix product.
    constexpr Eigen::Index kBlock = 256;
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(nx, np);
    Eigen::MatrixXcd vx(kBlock, nx), vp(kBlock, np);
    std::size_t done = 0;
    while (done < n) {
        const Eigen::Index rows = static_cast<Eigen::Index>(std::min<std::size_t>(kBlock, n - done));
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double x = record.a1[done + r];
            const double p = record.a2[done + r];
            std::complex<double> phx(std::cos(lambda_x.lo * x), -std::sin(lambda_x.lo * x));
            const std::complex<double> rotx(std::cos(lambda_x.step() * x),
                                            -std::sin(lambda_x.step() * x));
            for (Eigen::Index k = 0; k < nx; ++k) {
                vx(r, k) = phx;
                phx *= rotx;
            }
            std::complex<double> php(std::cos(lambda_p.lo * p), -std::sin(lambda_p.lo * p));
            const std::complex<double> rotp(std::cos(lambda_p.step() * p),
                                            -std::sin(lambda_p.step() * p));
            for (Eigen::Index k = 0; k < np; ++k) {
                vp(r, k) = php;
                php *= rotp;
            }
        }
        joint.noalias() += vx.topRows(rows).transpose() * vp.topRows(rows);
        done += static_cast<std::size_t>(rows);
    }
    joint /= static_cast<double>(n);

    CharFnGrid grid;
    grid.axes = {lambda_x, lambda_p};
    grid.values.resize(lambda_x.n * lambda_p.n);
    for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index j = 0; j < np; ++j)
            grid.values[static_cast<std::size_t>(i) * lambda_p.n + static_cast<std::size_t>(j)] =
                joint(i, j);
    return grid;
}

SpinCfPair empirical_cf_spin(const MeasurementRecord& record, const Axis& lambda) {
    require_nonempty(record);
    if (record.kind != RecordKind::joint || record.system != SystemKind::spin) {
        throw std::invalid_argument("empirical_cf_spin: expected a joint spin record");
    }
    SpinCfPair pair;
    pair.minus.axes = {lambda};
    pair.plus.axes = {lambda};
    pair.minus.values.assign(lambda.n, 0.0);
    pair.plus.values.assign(lambda.n, 0.0);
    for (std::size_t j = 0; j < record.size(); ++j) {
        auto& branch = record.a2[j] > 0.0 ? pair.plus.values : pair.minus.values;
        accumulate_phasors(branch, lambda, record.a1[j]);
    }
    const double inv_n = 1.0 / static_cast<double>(record.size());
    for (auto& v : pair.minus.values) v *= inv_n;
    for (auto& v : pair.plus.values) v *= inv_n;
    return pair;
}

KEstimate estimate_k_xp_from_cfs(const CharFnGrid& joint_cf, const CharFnGrid& den_x,
                                 const CharFnGrid& den_p, const CharFnGrid& num_x,
                                 const CharFnGrid& num_p, double x, double p, double c_o) {
    if (joint_cf.axes.size() != 2) {
        throw std::invalid_argument("estimate_k_xp_from_cfs: joint grid must be 2D");
    }
    const Axis& axis = joint_cf.axes[0];
    require_axis_match(axis, joint_cf.axes[1], "estimate_k_xp_from_cfs");
    require_axis_match(axis, den_x.axes[0], "estimate_k_xp_from_cfs");
    if (axis.n < 2) return KEstimate{0.0, 0.0, 0, true};

    const auto ratios = make_xp_ratios(den_x, den_p, num_x, num_p, c_o);
    if (ratios.active_x == 0 || ratios.active_p == 0) return KEstimate{0.0, 0.0, 0, true};

    // Contract the p axis first, then the x axis.
    std::vector<std::complex<double>> inner(axis.n, 0.0);
    for (std::size_t i = 0; i < axis.n; ++i) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < axis.n; ++j) {
            if (ratios.p[j] == 0.0) continue;
            const double lp = axis.node(j);
            acc += joint_cf.at(i, j) * ratios.p[j] *
                   std::complex<double>(std::cos(lp * p), std::sin(lp * p));
        }
        inner[i] = acc;
    }
    std::complex<double> total = 0.0;
    for (std::size_t i = 0; i < axis.n; ++i) {
        if (ratios.x[i] == 0.0) continue;
        const double lx = axis.node(i);
        total += inner[i] * ratios.x[i] *
                 std::complex<double>(std::cos(lx * x), std::sin(lx * x));
    }
    total /= kTwoPi * kTwoPi;
    return KEstimate{total.real(), total.imag(), ratios.active_x * ratios.active_p, false};
}

KEstimate estimate_k_xp(const MeasurementRecord& joint, const MeasurementRecord& single_x_chi,
                        const MeasurementRecord& single_p_chi,
                        const MeasurementRecord& single_x_chip,
                        const MeasurementRecord& single_p_chip, double x, double p,
                        const CutoffConfig& cutoffs) {
    require_nonempty(joint);
    if (joint.kind != RecordKind::joint || joint.system != SystemKind::fock_xp) {
        throw std::invalid_argument("estimate_k_xp: expected a joint x/p record");
    }
    require_single(single_x_chi);
    require_single(single_p_chi);
    require_single(single_x_chip);
    require_single(single_p_chip);
    if (single_x_chi.chi != joint.chi || single_p_chi.chi != joint.chi) {
        throw std::invalid_argument(
            "estimate_k_xp: denominator records must match the joint record's chi");
    }
    if (single_x_chip.chi != single_p_chip.chi) {
        throw std::invalid_argument("estimate_k_xp: numerator records must share one chi_prime");
    }
    if (cutoffs.lambda_c <= 0.0 || cutoffs.n_lambda < 2) return KEstimate{0.0, 0.0, 0, true};

    const Axis axis = cutoffs.lambda_axis();
    const auto den_x = empirical_cf(single_x_chi, axis);
    const auto den_p = empirical_cf(single_p_chi, axis);
    const auto num_x = empirical_cf(single_x_chip, axis);
    const auto num_p = empirical_cf(single_p_chip, axis);
    auto ratios = make_xp_ratios(den_x, den_p, num_x, num_p, cutoffs.c_o);
    if (ratios.active_x == 0 || ratios.active_p == 0) return KEstimate{0.0, 0.0, 0, true};

    // Fold the probe phase e^{i lambda x} into the coefficients, then the
    // remaining sum factorizes per joint sample.
    for (std::size_t k = 0; k < axis.n; ++k) {
        const double l = axis.node(k);
        ratios.x[k] *= std::complex<double>(std::cos(l * x), std::sin(l * x));
        ratios.p[k] *= std::complex<double>(std::cos(l * p), std::sin(l * p));
    }
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < joint.size(); ++j) {
        acc += phasor_dot(ratios.x, axis, joint.a1[j]) * phasor_dot(ratios.p, axis, joint.a2[j]);
    }
    acc /= static_cast<double>(joint.size()) * kTwoPi * kTwoPi;
    return KEstimate{acc.real(), acc.imag(), ratios.active_x * ratios.active_p, false};
}

KEstimate estimate_k_spin_from_cfs(const CharFnGrid& joint_cf_sigma2, const CharFnGrid& den,
                                   const CharFnGrid& num, double sigma1, double c_o) {
    const Axis& axis = joint_cf_sigma2.axes[0];
    require_axis_match(axis, den.axes[0], "estimate_k_spin_from_cfs");
    if (axis.n < 2) return KEstimate{0.0, 0.0, 0, true};

    std::size_t active = 0;
    const auto coeff = weighted_masked_ratio(num, den, c_o, &active);
    if (active == 0) return KEstimate{0.0, 0.0, 0, true};

    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < axis.n; ++k) {
        if (coeff[k] == 0.0) continue;
        const double l = axis.node(k);
        acc += joint_cf_sigma2.values[k] * coeff[k] *
               std::complex<double>(std::cos(l * sigma1), std::sin(l * sigma1));
    }
    acc /= kTwoPi;
    return KEstimate{acc.real(), acc.imag(), active, false};
}

KEstimate estimate_k_spin(const MeasurementRecord& joint, const MeasurementRecord& single_chi,
                          const MeasurementRecord& single_chip, double sigma1, int sigma2,
                          const CutoffConfig& cutoffs) {
    require_nonempty(joint);
    if (joint.kind != RecordKind::joint || joint.system != SystemKind::spin) {
        throw std::invalid_argument("estimate_k_spin: expected a joint spin record");
    }
    require_single(single_chi);
    require_single(single_chip);
    detail::require_sigma2(sigma2);
    if (single_chi.chi != joint.chi) {
        throw std::invalid_argument(
            "estimate_k_spin: denominator record must match the joint record's chi");
    }
    if (cutoffs.lambda_c <= 0.0 || cutoffs.n_lambda < 2) return KEstimate{0.0, 0.0, 0, true};

    const Axis axis = cutoffs.lambda_axis();
    const auto pair = empirical_cf_spin(joint, axis);
    const auto& branch = sigma2 > 0 ? pair.plus : pair.minus;
    return estimate_k_spin_from_cfs(branch, empirical_cf(single_chi, axis),
                                    empirical_cf(single_chip, axis), sigma1, cutoffs.c_o);
}

DensityGrid k_surface_xp_from_cfs(const CharFnGrid& joint_cf, const CharFnGrid& den_x,
                                  const CharFnGrid& den_p, const CharFnGrid& num_x,
                                  const CharFnGrid& num_p, const Axis& probe_x,
                                  const Axis& probe_p, double c_o) {
    const Axis& axis = joint_cf.axes[0];
    const auto ratios = make_xp_ratios(den_x, den_p, num_x, num_p, c_o);
    const Eigen::Index nl = static_cast<Eigen::Index>(axis.n);
    const Eigen::Index nx = static_cast<Eigen::Index>(probe_x.n);
    const Eigen::Index np = static_cast<Eigen::Index>(probe_p.n);

    Eigen::MatrixXcd joint(nl, nl);
    for (Eigen::Index i = 0; i < nl; ++i)
        for (Eigen::Index j = 0; j < nl; ++j)
            joint(i, j) = joint_cf.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    // inner(lambda_x, p) = sum_lp J * coeff_p * e^{i lp p}; then contract
    // lambda_x against coeff_x * e^{i lx x}.
    Eigen::MatrixXcd phase_p(nl, np);
    for (Eigen::Index k = 0; k < nl; ++k) {
        const double l = axis.node(static_cast<std::size_t>(k));
        for (Eigen::Index j = 0; j < np; ++j) {
            const double pv = probe_p.node(static_cast<std::size_t>(j));
            phase_p(k, j) = ratios.p[static_cast<std::size_t>(k)] *
                            std::complex<double>(std::cos(l * pv), std::sin(l * pv));
        }
    }
    const Eigen::MatrixXcd inner = joint * phase_p;

    Eigen::MatrixXcd phase_x(nx, nl);
    for (Eigen::Index i = 0; i < nx; ++i) {
        const double xv = probe_x.node(static_cast<std::size_t>(i));
        for (Eigen::Index k = 0; k < nl; ++k) {
            const double l = axis.node(static_cast<std::size_t>(k));
            phase_x(i, k) = ratios.x[static_cast<std::size_t>(k)] *
                            std::complex<double>(std::cos(l * xv), std::sin(l * xv));
        }
    }
    const Eigen::MatrixXcd surface = phase_x * inner / (kTwoPi * kTwoPi);

    DensityGrid grid;
    grid.axes = {probe_x, probe_p};
    grid.values.resize(probe_x.n * probe_p.n);
    for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index j = 0; j < np; ++j)
            grid.values[static_cast<std::size_t>(i) * probe_p.n + static_cast<std::size_t>(j)] =
                surface(i, j).real();
    return grid;
}

DensityGrid k_surface_xp(const MeasurementRecord& joint, const MeasurementRecord& single_x_chi,
                         const MeasurementRecord& single_p_chi,
                         const MeasurementRecord& single_x_chip,
                         const MeasurementRecord& single_p_chip, const Axis& probe_x,
                         const Axis& probe_p, const CutoffConfig& cutoffs) {
    const Axis axis = cutoffs.lambda_axis();
    return k_surface_xp_from_cfs(empirical_cf_joint_xp(joint, axis, axis),
                                 empirical_cf(single_x_chi, axis),
                                 empirical_cf(single_p_chi, axis),
                                 empirical_cf(single_x_chip, axis),
                                 empirical_cf(single_p_chip, axis), probe_x, probe_p,
                                 cutoffs.c_o);
}

DensityGrid k_surface_spin_from_cfs(const CharFnGrid& joint_minus, const CharFnGrid& joint_plus,
                                    const CharFnGrid& den, const CharFnGrid& num,
                                    const Axis& probe_sigma1, double c_o) {
    DensityGrid grid;
    grid.axes = {probe_sigma1, Axis{-1.0, 1.0, 2}};
    grid.values.resize(probe_sigma1.n * 2);
    for (std::size_t i = 0; i < probe_sigma1.n; ++i) {
        const double s1 = probe_sigma1.node(i);
        grid.at(i, 0) = estimate_k_spin_from_cfs(joint_minus, den, num, s1, c_o).value;
        grid.at(i, 1) = estimate_k_spin_from_cfs(joint_plus, den, num, s1, c_o).value;
    }
    return grid;
}

DensityGrid k_surface_spin(const MeasurementRecord& joint, const MeasurementRecord& single_chi,
                           const MeasurementRecord& single_chip, const Axis& probe_sigma1,
                           const CutoffConfig& cutoffs) {
    const Axis axis = cutoffs.lambda_axis();
    const auto pair = empirical_cf_spin(joint, axis);
    return k_surface_spin_from_cfs(pair.minus, pair.plus, empirical_cf(single_chi, axis),
                                   empirical_cf(single_chip, axis), probe_sigma1, cutoffs.c_o);
}

double exact_k_for(const ExperimentSpec& spec) {
    if (spec.system == SystemKind::fock_xp) {
        return exact_k_xp(spec.probe[0], spec.probe[1], spec.chi, spec.chi_prime);
    }
    return exact_k_spin(spec.probe[0], static_cast<int>(spec.probe[1]), spec.chi,
                        spec.chi_prime);
}

KEstimateReport repeat_trials(const ExperimentSpec& spec, std::size_t trials,
                              std::uint64_t master_seed, unsigned threads) {
    if (trials < 2) throw std::invalid_argument("repeat_trials: need at least 2 trials");
    if (spec.system == SystemKind::spin) {
        detail::require_sigma2(static_cast<int>(spec.probe[1]));
    }

    KEstimateReport report;
    report.spec = spec;
    report.master_seed = master_seed;
    report.trial_seeds.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) report.trial_seeds[t] = mix_seed(master_seed, t);
    if (std::set<std::uint64_t>(report.trial_seeds.begin(), report.trial_seeds.end()).size() !=
        trials) {
        throw NumericalError("repeat_trials: derived trial seeds collide");
    }

    report.k_estimates.resize(trials);
    report.imag_parts.resize(trials);
    run_indexed(trials, threads, [&](std::size_t t) {
        const std::uint64_t ts = report.trial_seeds[t];
        KEstimate est;
        if (spec.system == SystemKind::fock_xp) {
            const auto joint = sample_xp_joint(spec.chi, spec.n_joint, mix_seed(ts, 0));
            const auto sx = sample_x_single(spec.chi, spec.n_single, mix_seed(ts, 1),
                                            RecordKind::single_1);
            const auto sp = sample_x_single(spec.chi, spec.n_single, mix_seed(ts, 2),
                                            RecordKind::single_2);
            const auto sxp = sample_x_single(spec.chi_prime, spec.n_single, mix_seed(ts, 3),
                                             RecordKind::single_1);
            const auto spp = sample_x_single(spec.chi_prime, spec.n_single, mix_seed(ts, 4),
                                             RecordKind::single_2);
            est = estimate_k_xp(joint, sx, sp, sxp, spp, spec.probe[0], spec.probe[1],
                                spec.cutoffs);
        } else {
            const auto joint = sample_spin_joint(spec.chi, spec.n_joint, mix_seed(ts, 0));
            const auto s = sample_spin_single(spec.chi, spec.n_single, mix_seed(ts, 1));
            const auto sp = sample_spin_single(spec.chi_prime, spec.n_single, mix_seed(ts, 2));
            est = estimate_k_spin(joint, s, sp, spec.probe[0],
                                  static_cast<int>(spec.probe[1]), spec.cutoffs);
        }
        report.k_estimates[t] = est.value;
        report.imag_parts[t] = est.imag_part;
    });

    double sum = 0.0;
    for (double k : report.k_estimates) sum += k;
    report.mean = sum / static_cast<double>(trials);
    report.std_error =
        sample_std(report.k_estimates, report.mean) / std::sqrt(static_cast<double>(trials));
    report.z_score = report.std_error > 0.0 ? report.mean / report.std_error : 0.0;
    report.exact_k = exact_k_for(spec);
    report.verdict = report.z_score < -spec.z_threshold ? Verdict::classical_rejected
                                                        : Verdict::inconclusive;
    return report;
}

}  // namespace kqpd
