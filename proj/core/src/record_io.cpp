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

#include "kqpd/record_io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kqpd/version.hpp"

namespace kqpd {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double parse_double(const std::string& token, const char* what) {
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ConfigError(std::string("record CSV: bad ") + what + " '" + token + "'");
    }
    return value;
}

std::map<std::string, std::string> parse_provenance(const std::string& line) {
    if (line.rfind("# ", 0) != 0) {
        throw ConfigError("record CSV: missing '# key=value' provenance line");
    }
    std::map<std::string, std::string> kv;
    std::stringstream ss(line.substr(2));
    std::string field;
    while (std::getline(ss, field, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ConfigError("record CSV: malformed provenance field");
        kv[field.substr(0, eq)] = field.substr(eq + 1);
    }
    for (const char* key : {"system", "kind", "chi", "seed", "N"}) {
        if (!kv.count(key)) {
            throw ConfigError(std::string("record CSV: provenance misses '") + key + "'");
        }
    }
    return kv;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_record_csv(const MeasurementRecord& record, std::ostream& out) {
    const bool joint = record.kind == RecordKind::joint;
    out << "# system=" << to_string(record.system) << ",kind=" << to_string(record.kind)
        << ",chi=" << format_double(record.chi) << ",seed=" << record.seed
        << ",N=" << record.size() << "\n";
    out << (joint ? "a1,a2" : "a1") << "\n";
    for (std::size_t i = 0; i < record.size(); ++i) {
        out << format_double(record.a1[i]);
        if (joint) out << ',' << format_double(record.a2[i]);
        out << "\n";
    }
}

void write_record_csv(const MeasurementRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    write_record_csv(record, out);
}

MeasurementRecord read_record_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("record CSV: empty stream");
    const auto kv = parse_provenance(line);

    MeasurementRecord rec;
    rec.system = system_from_string(kv.at("system"));
    rec.kind = kind_from_string(kv.at("kind"));
    rec.chi = parse_double(kv.at("chi"), "chi");
    rec.seed = std::stoull(kv.at("seed"));
    const std::size_t n = std::stoull(kv.at("N"));

    if (!std::getline(in, line)) throw ConfigError("record CSV: missing column header");
    const bool joint = rec.kind == RecordKind::joint;
    if (line != (joint ? "a1,a2" : "a1")) {
        throw ConfigError("record CSV: unexpected column header '" + line + "'");
    }

    rec.a1.reserve(n);
    if (joint) rec.a2.reserve(n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (joint) {
            if (comma == std::string::npos) throw ConfigError("record CSV: missing a2 column");
            rec.a1.push_back(parse_double(line.substr(0, comma), "a1"));
            rec.a2.push_back(parse_double(line.substr(comma + 1), "a2"));
        } else {
            if (comma != std::string::npos) throw ConfigError("record CSV: unexpected a2 column");
            rec.a1.push_back(parse_double(line, "a1"));
        }
    }
    if (rec.size() != n) {
        throw ConfigError("record CSV: row count " + std::to_string(rec.size()) +
                          " does not match N=" + std::to_string(n));
    }
    return rec;
}

MeasurementRecord read_record_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    return read_record_csv(in);
}

void write_record_manifest(const MeasurementRecord& record, const std::filesystem::path& path) {
    nlohmann::json j{
        {"system", to_string(record.system)}, {"kind", to_string(record.kind)},
        {"chi", record.chi},                  {"seed", record.seed},
        {"n", record.size()},                 {"created_utc", utc_timestamp()},
        {"code_version", kVersion},
    };
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
}

}  // namespace kqpd
