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

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "kqpd/harness.hpp"
#include "kqpd/version.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 numerical diagnostic.
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Von Neumann measurement simulation and K estimation for two benchmark systems"};
    app.set_version_flag("--version", kqpd::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    unsigned threads = 1;
    bool verbose = false;
    app.add_option("--config", config_path, "Experiment config file");
    app.add_option("--seed", seed, "Override the config's master seed");
    app.add_option("--out", out_dir, "Override the config's output directory");
    app.add_option("--threads", threads, "Worker pool size for trials")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "List every file written");

    auto* cmd_exact = app.add_subcommand("exact", "Write the exact K surface/curve CSV");
    auto* cmd_simulate = app.add_subcommand("simulate", "Sample measurement records to CSV");
    auto* cmd_estimate =
        app.add_subcommand("estimate", "Run repeat-trial K estimation and write reports");
    std::string records_dir;
    cmd_estimate->add_option("--from-records", records_dir,
                             "Estimate once from record CSVs in this directory");
    auto* cmd_sweep =
        app.add_subcommand("sweep", "Sweep chi and write chi,exact_k,mean_k_est,std_error");
    auto* cmd_fig2a = app.add_subcommand(
        "reproduce-fig2a", "Canned x/p experiment: chi sweep, chi_prime=5, c_o=0.011, lambda_c=10");
    auto* cmd_fig2b = app.add_subcommand(
        "reproduce-fig2b", "Canned spin experiment: chi sweep, chi_prime=3, c_o=0.01, lambda_c=12");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    kqpd::RunOptions opts;
    opts.seed_override = seed;
    if (out_dir) opts.out_override = *out_dir;
    opts.threads = threads;
    opts.verbose = verbose;

    try {
        if (cmd_fig2a->parsed()) return kqpd::run_reproduce_fig2('a', opts, std::cout);
        if (cmd_fig2b->parsed()) return kqpd::run_reproduce_fig2('b', opts, std::cout);

        if (config_path.empty()) {
            std::cerr << "error: this command requires --config <path>\n";
            return kExitConfig;
        }
        const kqpd::ExperimentConfig config = kqpd::load_config(config_path);
        if (cmd_exact->parsed()) return kqpd::run_exact(config, opts, std::cout);
        if (cmd_simulate->parsed()) return kqpd::run_simulate(config, opts, std::cout);
        if (cmd_estimate->parsed()) {
            if (!records_dir.empty()) {
                return kqpd::run_estimate_from_records(config, opts, records_dir, std::cout);
            }
            return kqpd::run_estimate(config, opts, std::cout);
        }
        if (cmd_sweep->parsed()) return kqpd::run_sweep(config, opts, std::cout);
        std::cerr << "error: unknown command\n";
        return kExitConfig;
    } catch (const kqpd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const kqpd::NumericalError& e) {
        std::cerr << "numerical diagnostic: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
