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

#ifndef KQPD_HARNESS_HPP
#define KQPD_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kqpd/estimation.hpp"

// Declarative experiment configs and the command implementations behind the
// CLI. Config files are flat key = value text with one section per concern:
//
//   [experiment]
//   system      = fock            # fock | spin
//   chi         = 0.75 1.0 1.5    # one value or a sweep list
//   chi_prime   = 5.0
//   n_single    = 15000
//   n_joint     = 30000
//   c_o         = 0.011
//   lambda_c    = 10.0
//   n_lambda    = 401
//   probes      = 0 0; 1 0.5      # outcome tuples, ';'-separated
//   trials      = 20
//   master_seed = 1
//   z_threshold = 5.0
//   output_dir  = out
//
//   [exact]
//   axis1 = -3 3 121              # probe-grid axis: lo hi n
//   axis2 = -3 3 121              # fock only
//
// Unknown keys or sections are errors (fail-fast).

namespace kqpd {

struct ExperimentConfig {
    SystemKind system = SystemKind::fock_xp;
    std::vector<double> chi_values;
    double chi_prime = 0.0;
    std::size_t n_single = 15000;
    std::size_t n_joint = 30000;
    CutoffConfig cutoffs;
    std::vector<std::array<double, 2>> probes;
    std::size_t trials = 20;
    std::uint64_t master_seed = 1;
    double z_threshold = 5.0;
    std::filesystem::path output_dir = "out";
    Axis exact_axis1;
    Axis exact_axis2;

    void validate() const;
};

/// Parses a config file. Probe defaults are the maximal-negativity points:
/// (0, 0) for fock, (0, -1) for spin. Cutoff defaults follow the system:
/// fock (c_o 0.011, lambda_c 10), spin (c_o 0.01, lambda_c 12).
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canned configs behind reproduce-fig2a / reproduce-fig2b.
ExperimentConfig fig2a_config();
ExperimentConfig fig2b_config();

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<std::filesystem::path> out_override;
    unsigned threads = 1;
    bool verbose = false;
};

// Command implementations. Each writes its data files plus a manifest.json
// capturing the config snapshot, code version, derived seeds, wall-clock
// duration and file inventory, and returns the process exit code.
int run_exact(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log);
int run_simulate(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log);
int run_estimate(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log);
/// When `records_dir` is set, estimates once from record files previously
/// written by run_simulate instead of sampling fresh trials.
int run_estimate_from_records(const ExperimentConfig& config, const RunOptions& opts,
                              const std::filesystem::path& records_dir, std::ostream& log);
int run_sweep(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log);
int run_reproduce_fig2(char panel, const RunOptions& opts, std::ostream& log);

/// Seed scheme shared by the commands: sweep point i derives
/// chi_master = mix_seed(master_seed, i); trials inside a sweep point derive
/// from chi_master as in repeat_trials.
std::uint64_t chi_master_seed(std::uint64_t master_seed, std::size_t chi_index);

}  // namespace kqpd

#endif
