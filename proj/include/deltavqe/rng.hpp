// Copyright 2026 The delta-vqe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace deltavqe {

/// splitmix64 finalizer; bijective on 64-bit integers.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for an independent RNG stream identified by (seed, stream).
/// Used to give every restart / sweep point its own reproducible stream,
/// so results do not depend on execution order or thread count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

/// Uniform doubles built directly from mt19937_64 output words.
/// std::uniform_real_distribution is implementation-defined; this is not,
/// which keeps seeded runs bit-identical across standard libraries.
class UniformSampler {
  public:
    explicit UniformSampler(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-half_width, half_width).
    double symmetric(double half_width) { return (2.0 * unit() - 1.0) * half_width; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace deltavqe
