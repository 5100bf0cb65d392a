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

#include "kqpd/harness.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kqpd/record_io.hpp"
#include "kqpd/rng.hpp"
#include "kqpd/systems.hpp"
#include "kqpd/version.hpp"

namespace kqpd {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + s + "' for key '" + key + "'");
    }
}

std::uint64_t to_u64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + s + "' for key '" + key + "'");
    }
}

Axis parse_axis(const std::string& value, const std::string& key) {
    const auto parts = split_ws(value);
    if (parts.size() != 3) throw ConfigError("config: '" + key + "' expects 'lo hi n'");
    Axis axis{to_double(parts[0], key), to_double(parts[1], key),
              static_cast<std::size_t>(to_u64(parts[2], key))};
    if (axis.n < 1 || axis.hi < axis.lo) throw ConfigError("config: bad axis for '" + key + "'");
    return axis;
}

json axis_to_json(const Axis& a) { return json{{"lo", a.lo}, {"hi", a.hi}, {"n", a.n}}; }

json config_to_json(const ExperimentConfig& c) {
    json probes = json::array();
    for (const auto& p : c.probes) probes.push_back({p[0], p[1]});
    return json{{"system", to_string(c.system)},
                {"chi", c.chi_values},
                {"chi_prime", c.chi_prime},
                {"n_single", c.n_single},
                {"n_joint", c.n_joint},
                {"c_o", c.cutoffs.c_o},
                {"lambda_c", c.cutoffs.lambda_c},
                {"n_lambda", c.cutoffs.n_lambda},
                {"probes", probes},
                {"trials", c.trials},
                {"master_seed", c.master_seed},
                {"z_threshold", c.z_threshold},
                {"output_dir", c.output_dir.string()},
                {"exact_axis1", axis_to_json(c.exact_axis1)},
                {"exact_axis2", axis_to_json(c.exact_axis2)}};
}

// Applies CLI overrides and creates the output directory.
ExperimentConfig effective_config(const ExperimentConfig& config, const RunOptions& opts) {
    ExperimentConfig c = config;
    if (opts.seed_override) c.master_seed = *opts.seed_override;
    if (opts.out_override) c.output_dir = *opts.out_override;
    c.validate();
    std::filesystem::create_directories(c.output_dir);
    return c;
}

ExperimentSpec make_spec(const ExperimentConfig& c, double chi,
                         const std::array<double, 2>& probe) {
    ExperimentSpec spec;
    spec.system = c.system;
    spec.chi = chi;
    spec.chi_prime = c.chi_prime;
    spec.n_single = c.n_single;
    spec.n_joint = c.n_joint;
    spec.cutoffs = c.cutoffs;
    spec.probe = probe;
    spec.z_threshold = c.z_threshold;
    return spec;
}

struct ManifestWriter {
    explicit ManifestWriter(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    json seeds = json::object();
    std::vector<std::string> files;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish(const ExperimentConfig& config, std::ostream& log, bool verbose) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        json manifest{{"command", command},
                      {"code_version", kVersion},
                      {"created_utc", utc_timestamp()},
                      {"duration_ms", elapsed.count()},
                      {"config", config_to_json(config)},
                      {"seeds", seeds},
                      {"files", files}};
        const auto path = config.output_dir / (command + "_manifest.json");
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
        out << manifest.dump(2) << "\n";
        if (verbose) {
            for (const auto& f : files) log << "wrote " << f << "\n";
        }
        log << command << ": " << files.size() << " data file(s) in " << config.output_dir.string()
            << " (" << elapsed.count() << " ms)\n";
    }
};

std::ofstream open_csv(const std::filesystem::path& path, ManifestWriter& manifest) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    manifest.files.push_back(path.string());
    return out;
}

std::string chi_tag(double chi) { return "chi" + format_double(chi); }

// Record roles inside one sweep point, in seed-derivation order. These match
// the per-trial record seeds used by repeat_trials.
std::vector<std::pair<std::string, int>> record_roles(SystemKind system) {
    if (system == SystemKind::fock_xp) {
        return {{"joint", 0}, {"single_1", 1}, {"single_2", 2}, {"single_1_prime", 3},
                {"single_2_prime", 4}};
    }
    return {{"joint", 0}, {"single_1", 1}, {"single_1_prime", 2}};
}

MeasurementRecord make_role_record(const ExperimentConfig& c, double chi, int role,
                                   std::uint64_t trial_seed) {
    const std::uint64_t seed = mix_seed(trial_seed, static_cast<std::uint64_t>(role));
    if (c.system == SystemKind::fock_xp) {
        switch (role) {
            case 0: return sample_xp_joint(chi, c.n_joint, seed);
            case 1: return sample_x_single(chi, c.n_single, seed, RecordKind::single_1);
            case 2: return sample_x_single(chi, c.n_single, seed, RecordKind::single_2);
            case 3: return sample_x_single(c.chi_prime, c.n_single, seed, RecordKind::single_1);
            default: return sample_x_single(c.chi_prime, c.n_single, seed, RecordKind::single_2);
        }
    }
    switch (role) {
        case 0: return sample_spin_joint(chi, c.n_joint, seed);
        case 1: return sample_spin_single(chi, c.n_single, seed);
        default: return sample_spin_single(c.chi_prime, c.n_single, seed);
    }
}

json report_to_json(const KEstimateReport& r) {
    json probe = {r.spec.probe[0], r.spec.probe[1]};
    return json{{"probe", probe},
                {"chi", r.spec.chi},
                {"chi_prime", r.spec.chi_prime},
                {"n_single", r.spec.n_single},
                {"n_joint", r.spec.n_joint},
                {"c_o", r.spec.cutoffs.c_o},
                {"lambda_c", r.spec.cutoffs.lambda_c},
                {"n_lambda", r.spec.cutoffs.n_lambda},
                {"z_threshold", r.spec.z_threshold},
                {"master_seed", r.master_seed},
                {"trial_seeds", r.trial_seeds},
                {"k_estimates", r.k_estimates},
                {"imag_parts", r.imag_parts},
                {"mean", r.mean},
                {"std_error", r.std_error},
                {"z_score", r.z_score},
                {"exact_k", r.exact_k ? json(*r.exact_k) : json()},
                {"verdict", to_string(r.verdict)}};
}

void write_report_csv(std::ostream& out, SystemKind system,
                      const std::vector<KEstimateReport>& reports) {
    out << (system == SystemKind::fock_xp ? "x,p,trial,k_estimate"
                                          : "sigma1,sigma2,trial,k_estimate")
        << "\n";
    for (const auto& r : reports) {
        for (std::size_t t = 0; t < r.k_estimates.size(); ++t) {
            out << format_double(r.spec.probe[0]) << ',' << format_double(r.spec.probe[1]) << ','
                << t << ',' << format_double(r.k_estimates[t]) << "\n";
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (chi_values.empty()) throw ConfigError("config: chi sweep list is empty");
    for (double chi : chi_values) {
        if (!(chi > 0.0)) throw ConfigError("config: chi values must be > 0");
    }
    if (!(chi_prime > 0.0)) throw ConfigError("config: chi_prime must be > 0");
    if (n_single < 100 || n_joint < 100) {
        throw ConfigError("config: n_single and n_joint must be >= 100");
    }
    cutoffs.validate();
    if (probes.empty()) throw ConfigError("config: probes must be non-empty");
    if (system == SystemKind::spin) {
        for (const auto& p : probes) {
            if (p[1] != -1.0 && p[1] != 1.0) {
                throw ConfigError("config: spin probes need sigma2 = -1 or +1");
            }
        }
    }
    if (trials < 2) throw ConfigError("config: trials must be >= 2");
    if (exact_axis1.n < 1 || exact_axis2.n < 1) throw ConfigError("config: bad exact axes");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");

    static const std::set<std::string> kExperimentKeys{
        "system",  "chi",    "chi_prime",   "n_single",   "n_joint",    "c_o",
        "lambda_c", "n_lambda", "probes",   "trials",     "master_seed", "z_threshold",
        "output_dir"};
    static const std::set<std::string> kExactKeys{"axis1", "axis2"};

    std::map<std::string, std::string> experiment;
    std::map<std::string, std::string> exact;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config: unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "experiment" && section != "exact") {
                throw ConfigError("config: unknown section '" + section + "'");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "experiment" || section.empty()) {
            if (!kExperimentKeys.count(key)) {
                throw ConfigError("config: unknown key '" + key + "' in [experiment]");
            }
            experiment[key] = value;
        } else {
            if (!kExactKeys.count(key)) {
                throw ConfigError("config: unknown key '" + key + "' in [exact]");
            }
            exact[key] = value;
        }
    }

    if (!experiment.count("system")) throw ConfigError("config: missing 'system'");
    ExperimentConfig c;
    const std::string system_name = experiment.at("system");
    if (system_name == "fock" || system_name == "fock_xp") {
        c.system = SystemKind::fock_xp;
    } else if (system_name == "spin") {
        c.system = SystemKind::spin;
    } else {
        throw ConfigError("config: system must be 'fock' or 'spin'");
    }

    // System-dependent defaults: cutoffs from the benchmark configurations,
    // probes at the maximal-negativity points.
    const bool fock = c.system == SystemKind::fock_xp;
    c.cutoffs.c_o = fock ? 0.011 : 0.01;
    c.cutoffs.lambda_c = fock ? 10.0 : 12.0;
    c.probes = {fock ? std::array<double, 2>{0.0, 0.0} : std::array<double, 2>{0.0, -1.0}};
    c.exact_axis1 = fock ? Axis{-3.0, 3.0, 121} : Axis{-2.5, 2.5, 201};
    c.exact_axis2 = fock ? Axis{-3.0, 3.0, 121} : Axis{-1.0, 1.0, 2};

    if (!experiment.count("chi")) throw ConfigError("config: missing 'chi'");
    for (const auto& tok : split_ws(experiment.at("chi"))) {
        c.chi_values.push_back(to_double(tok, "chi"));
    }
    if (!experiment.count("chi_prime")) throw ConfigError("config: missing 'chi_prime'");
    c.chi_prime = to_double(experiment.at("chi_prime"), "chi_prime");

    if (experiment.count("n_single")) {
        c.n_single = static_cast<std::size_t>(to_u64(experiment.at("n_single"), "n_single"));
    }
    if (experiment.count("n_joint")) {
        c.n_joint = static_cast<std::size_t>(to_u64(experiment.at("n_joint"), "n_joint"));
    }
    if (experiment.count("c_o")) c.cutoffs.c_o = to_double(experiment.at("c_o"), "c_o");
    if (experiment.count("lambda_c")) {
        c.cutoffs.lambda_c = to_double(experiment.at("lambda_c"), "lambda_c");
    }
    if (experiment.count("n_lambda")) {
        c.cutoffs.n_lambda = static_cast<std::size_t>(to_u64(experiment.at("n_lambda"),
                                                             "n_lambda"));
    }
    if (experiment.count("probes")) {
        c.probes.clear();
        std::stringstream ss(experiment.at("probes"));
        std::string tuple;
        while (std::getline(ss, tuple, ';')) {
            const auto parts = split_ws(trim(tuple));
            if (parts.size() != 2) {
                throw ConfigError("config: each probe needs two outcome components");
            }
            c.probes.push_back({to_double(parts[0], "probes"), to_double(parts[1], "probes")});
        }
    }
    if (experiment.count("trials")) {
        c.trials = static_cast<std::size_t>(to_u64(experiment.at("trials"), "trials"));
    }
    if (experiment.count("master_seed")) {
        c.master_seed = to_u64(experiment.at("master_seed"), "master_seed");
    }
    if (experiment.count("z_threshold")) {
        c.z_threshold = to_double(experiment.at("z_threshold"), "z_threshold");
    }
    if (experiment.count("output_dir")) c.output_dir = experiment.at("output_dir");
    if (exact.count("axis1")) c.exact_axis1 = parse_axis(exact.at("axis1"), "axis1");
    if (exact.count("axis2")) c.exact_axis2 = parse_axis(exact.at("axis2"), "axis2");

    c.validate();
    return c;
}

std::uint64_t chi_master_seed(std::uint64_t master_seed, std::size_t chi_index) {
    return mix_seed(master_seed, chi_index);
}

ExperimentConfig fig2a_config() {
    ExperimentConfig c;
    c.system = SystemKind::fock_xp;
    c.chi_values = {0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0};
    c.chi_prime = 5.0;
    c.n_single = 15000;
    c.n_joint = 30000;
    c.cutoffs = CutoffConfig{0.011, 10.0, 401};
    c.probes = {{0.0, 0.0}};
    c.trials = 20;
    c.master_seed = 1;
    c.output_dir = "out/fig2a";
    c.exact_axis1 = Axis{-3.0, 3.0, 121};
    c.exact_axis2 = Axis{-3.0, 3.0, 121};
    return c;
}

ExperimentConfig fig2b_config() {
    ExperimentConfig c;
    c.system = SystemKind::spin;
    c.chi_values = {0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0};
    c.chi_prime = 3.0;
    c.n_single = 15000;
    c.n_joint = 30000;
    c.cutoffs = CutoffConfig{0.01, 12.0, 401};
    c.probes = {{0.0, -1.0}};
    c.trials = 20;
    c.master_seed = 1;
    c.output_dir = "out/fig2b";
    c.exact_axis1 = Axis{-2.5, 2.5, 201};
    c.exact_axis2 = Axis{-1.0, 1.0, 2};
    return c;
}

int run_exact(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log) {
    const ExperimentConfig c = effective_config(config, opts);
    ManifestWriter manifest{"exact"};
    for (double chi : c.chi_values) {
        auto out = open_csv(c.output_dir / ("exact_" + to_string(c.system) + "_" + chi_tag(chi) +
                                            ".csv"),
                            manifest);
        if (c.system == SystemKind::fock_xp) {
            out << "x,p,k\n";
            for (std::size_t i = 0; i < c.exact_axis1.n; ++i) {
                for (std::size_t j = 0; j < c.exact_axis2.n; ++j) {
                    const double x = c.exact_axis1.node(i);
                    const double p = c.exact_axis2.node(j);
                    out << format_double(x) << ',' << format_double(p) << ','
                        << format_double(exact_k_xp(x, p, chi, c.chi_prime)) << "\n";
                }
            }
        } else {
            out << "sigma1,sigma2,k\n";
            for (std::size_t i = 0; i < c.exact_axis1.n; ++i) {
                for (int sigma2 : {-1, 1}) {
                    const double s1 = c.exact_axis1.node(i);
                    out << format_double(s1) << ',' << sigma2 << ','
                        << format_double(exact_k_spin(s1, sigma2, chi, c.chi_prime)) << "\n";
                }
            }
        }
    }
    manifest.finish(c, log, opts.verbose);
    return 0;
}

int run_simulate(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log) {
    const ExperimentConfig c = effective_config(config, opts);
    ManifestWriter manifest{"simulate"};
    for (std::size_t ci = 0; ci < c.chi_values.size(); ++ci) {
        const double chi = c.chi_values[ci];
        const std::uint64_t trial_seed = mix_seed(chi_master_seed(c.master_seed, ci), 0);
        json role_seeds = json::object();
        for (const auto& [role, index] : record_roles(c.system)) {
            const auto rec = make_role_record(c, chi, index, trial_seed);
            const auto base = "record_" + to_string(c.system) + "_" + chi_tag(chi) + "_" + role;
            write_record_csv(rec, c.output_dir / (base + ".csv"));
            write_record_manifest(rec, c.output_dir / (base + ".manifest.json"));
            manifest.files.push_back((c.output_dir / (base + ".csv")).string());
            role_seeds[role] = rec.seed;
        }
        manifest.seeds[chi_tag(chi)] = role_seeds;
    }
    manifest.finish(c, log, opts.verbose);
    return 0;
}

int run_estimate(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log) {
    const ExperimentConfig c = effective_config(config, opts);
    ManifestWriter manifest{"estimate"};
    for (std::size_t ci = 0; ci < c.chi_values.size(); ++ci) {
        const double chi = c.chi_values[ci];
        const std::uint64_t chi_seed = chi_master_seed(c.master_seed, ci);
        std::vector<KEstimateReport> reports;
        reports.reserve(c.probes.size());
        for (const auto& probe : c.probes) {
            reports.push_back(
                repeat_trials(make_spec(c, chi, probe), c.trials, chi_seed, opts.threads));
        }
        manifest.seeds[chi_tag(chi)] = reports.front().trial_seeds;

        const auto base = "report_" + to_string(c.system) + "_" + chi_tag(chi);
        json jreports = json::array();
        for (const auto& r : reports) jreports.push_back(report_to_json(r));
        std::ofstream jout(c.output_dir / (base + ".json"));
        if (!jout) throw ConfigError("cannot open report JSON for writing");
        jout << json{{"code_version", kVersion}, {"reports", jreports}}.dump(2) << "\n";
        manifest.files.push_back((c.output_dir / (base + ".json")).string());

        auto cout_ = open_csv(c.output_dir / (base + ".csv"), manifest);
        write_report_csv(cout_, c.system, reports);

        for (const auto& r : reports) {
            log << to_string(c.system) << " chi=" << format_double(chi) << " probe=("
                << format_double(r.spec.probe[0]) << "," << format_double(r.spec.probe[1])
                << "): mean=" << format_double(r.mean) << " se=" << format_double(r.std_error)
                << " z=" << format_double(r.z_score) << " -> " << to_string(r.verdict) << "\n";
        }
    }
    manifest.finish(c, log, opts.verbose);
    return 0;
}

int run_estimate_from_records(const ExperimentConfig& config, const RunOptions& opts,
                              const std::filesystem::path& records_dir, std::ostream& log) {
    const ExperimentConfig c = effective_config(config, opts);
    if (c.chi_values.size() != 1) {
        throw ConfigError("estimate --from-records: config must pin exactly one chi value");
    }
    const double chi = c.chi_values.front();

    std::map<std::string, MeasurementRecord> records;
    for (const auto& [role, index] : record_roles(c.system)) {
        (void)index;
        const auto path = records_dir / ("record_" + to_string(c.system) + "_" + chi_tag(chi) +
                                         "_" + role + ".csv");
        records.emplace(role, read_record_csv(path));
    }

    ManifestWriter manifest{"estimate_from_records"};
    const auto base = "report_from_records_" + to_string(c.system) + "_" + chi_tag(chi);
    json results = json::array();
    auto csv = open_csv(c.output_dir / (base + ".csv"), manifest);
    csv << (c.system == SystemKind::fock_xp ? "x,p,trial,k_estimate"
                                            : "sigma1,sigma2,trial,k_estimate")
        << "\n";
    for (const auto& probe : c.probes) {
        KEstimate est;
        if (c.system == SystemKind::fock_xp) {
            est = estimate_k_xp(records.at("joint"), records.at("single_1"),
                                records.at("single_2"), records.at("single_1_prime"),
                                records.at("single_2_prime"), probe[0], probe[1], c.cutoffs);
        } else {
            est = estimate_k_spin(records.at("joint"), records.at("single_1"),
                                  records.at("single_1_prime"), probe[0],
                                  static_cast<int>(probe[1]), c.cutoffs);
        }
        if (est.all_cut) {
            throw NumericalError("estimate --from-records: every lambda node was cut off");
        }
        results.push_back(json{{"probe", {probe[0], probe[1]}},
                               {"k_estimate", est.value},
                               {"imag_part", est.imag_part},
                               {"active_nodes", est.active_nodes}});
        csv << format_double(probe[0]) << ',' << format_double(probe[1]) << ",0,"
            << format_double(est.value) << "\n";
        log << "k_estimate(" << format_double(probe[0]) << "," << format_double(probe[1])
            << ") = " << format_double(est.value) << "\n";
    }
    std::ofstream jout(c.output_dir / (base + ".json"));
    if (!jout) throw ConfigError("cannot open report JSON for writing");
    jout << json{{"code_version", kVersion}, {"chi", chi}, {"results", results}}.dump(2) << "\n";
    manifest.files.push_back((c.output_dir / (base + ".json")).string());
    manifest.finish(c, log, opts.verbose);
    return 0;
}

int run_sweep(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log) {
    const ExperimentConfig c = effective_config(config, opts);
    ManifestWriter manifest{"sweep"};
    const auto& probe = c.probes.front();

    auto sweep_csv = open_csv(c.output_dir / ("sweep_" + to_string(c.system) + ".csv"), manifest);
    sweep_csv << "chi,exact_k,mean_k_est,std_error\n";
    for (std::size_t ci = 0; ci < c.chi_values.size(); ++ci) {
        const double chi = c.chi_values[ci];
        const auto report = repeat_trials(make_spec(c, chi, probe), c.trials,
                                          chi_master_seed(c.master_seed, ci), opts.threads);
        manifest.seeds[chi_tag(chi)] = report.trial_seeds;
        sweep_csv << format_double(chi) << ',' << format_double(*report.exact_k) << ','
                  << format_double(report.mean) << ',' << format_double(report.std_error) << "\n";

        const auto base = "report_" + to_string(c.system) + "_" + chi_tag(chi);
        std::ofstream jout(c.output_dir / (base + ".json"));
        if (!jout) throw ConfigError("cannot open report JSON for writing");
        jout << json{{"code_version", kVersion}, {"reports", {report_to_json(report)}}}.dump(2)
             << "\n";
        manifest.files.push_back((c.output_dir / (base + ".json")).string());

        log << to_string(c.system) << " chi=" << format_double(chi)
            << ": exact=" << format_double(*report.exact_k) << " mean=" << format_double(report.mean)
            << " se=" << format_double(report.std_error) << " -> " << to_string(report.verdict)
            << "\n";
    }
    manifest.finish(c, log, opts.verbose);
    return 0;
}

int run_reproduce_fig2(char panel, const RunOptions& opts, std::ostream& log) {
    if (panel != 'a' && panel != 'b') throw ConfigError("reproduce-fig2: panel must be a or b");
    ExperimentConfig c = panel == 'a' ? fig2a_config() : fig2b_config();
    const int sweep_rc = run_sweep(c, opts, log);
    if (sweep_rc != 0) return sweep_rc;
    c = effective_config(c, opts);

    // Side panel: the full K estimate over outcomes at chi = 1.0, from the
    // trial-0 records of that sweep point, next to the exact curve.
    const double chi = 1.0;
    std::size_t ci = 0;
    while (ci < c.chi_values.size() && c.chi_values[ci] != chi) ++ci;
    const std::uint64_t trial_seed = mix_seed(chi_master_seed(c.master_seed, ci), 0);

    ManifestWriter manifest{"surface"};
    auto out = open_csv(c.output_dir / ("surface_" + to_string(c.system) + "_" + chi_tag(chi) +
                                        ".csv"),
                        manifest);
    if (c.system == SystemKind::fock_xp) {
        const auto joint = make_role_record(c, chi, 0, trial_seed);
        const auto sx = make_role_record(c, chi, 1, trial_seed);
        const auto sp = make_role_record(c, chi, 2, trial_seed);
        const auto sxp = make_role_record(c, chi, 3, trial_seed);
        const auto spp = make_role_record(c, chi, 4, trial_seed);
        const Axis line{-3.0, 3.0, 121};
        const Axis point{0.0, 0.0, 1};
        const auto surface = k_surface_xp(joint, sx, sp, sxp, spp, line, point, c.cutoffs);
        out << "x,p,k_est,k_exact\n";
        for (std::size_t i = 0; i < line.n; ++i) {
            const double x = line.node(i);
            out << format_double(x) << ",0," << format_double(surface.at(i, 0)) << ','
                << format_double(exact_k_xp(x, 0.0, chi, c.chi_prime)) << "\n";
        }
    } else {
        const auto joint = make_role_record(c, chi, 0, trial_seed);
        const auto s = make_role_record(c, chi, 1, trial_seed);
        const auto sp = make_role_record(c, chi, 2, trial_seed);
        const Axis line{-2.5, 2.5, 201};
        const auto surface = k_surface_spin(joint, s, sp, line, c.cutoffs);
        out << "sigma1,sigma2,k_est,k_exact\n";
        for (std::size_t i = 0; i < line.n; ++i) {
            const double s1 = line.node(i);
            for (int sigma2 : {-1, 1}) {
                out << format_double(s1) << ',' << sigma2 << ','
                    << format_double(surface.at(i, sigma2 == -1 ? 0 : 1)) << ','
                    << format_double(exact_k_spin(s1, sigma2, chi, c.chi_prime)) << "\n";
            }
        }
    }
    manifest.finish(c, log, opts.verbose);
    return 0;
}

}  // namespace kqpd
