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

#ifndef KQPD_RNG_HPP
#define KQPD_RNG_HPP

#include <cstdint>
#include <random>

namespace kqpd {

/// Seed derivation for independent sub-streams: the splitmix64 finalizer
/// applied to master + (index + 1) * golden-gamma. Used for per-trial and
/// per-record seeds so parallel and serial runs draw identical streams.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic 64-bit-seeded random stream (mt19937_64 underneath) with
/// fully specified variate recipes, so that records reproduce bit-exactly
/// across standard libraries:
///   uniform():     (next_u64() >> 11) * 2^-53, in [0, 1)
///   normal():      Box-Muller pair from two uniforms, second value cached
///   exponential(): -log(1 - uniform()) / rate
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal();

    double exponential(double rate);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kqpd

#endif
