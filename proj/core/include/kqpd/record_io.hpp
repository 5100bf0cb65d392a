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

#ifndef KQPD_RECORD_IO_HPP
#define KQPD_RECORD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kqpd/sampling.hpp"

namespace kqpd {

/// Shortest decimal string that round-trips to the same double. All numeric
/// file output goes through this, which is what makes reruns byte-identical.
std::string format_double(double value);

// Record CSV schema:
//   # system=<fock_xp|spin>,kind=<joint|single_1|single_2>,chi=<v>,seed=<u64>,N=<n>
//   a1[,a2]
//   <outcome rows>
void write_record_csv(const MeasurementRecord& record, std::ostream& out);
void write_record_csv(const MeasurementRecord& record, const std::filesystem::path& path);

MeasurementRecord read_record_csv(std::istream& in);
MeasurementRecord read_record_csv(const std::filesystem::path& path);

/// JSON manifest mirroring the CSV provenance fields plus a creation
/// timestamp and the code version string.
void write_record_manifest(const MeasurementRecord& record, const std::filesystem::path& path);

}  // namespace kqpd

#endif
