// Copyright 2026 The phosmo Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace phosmo {

/// Mixes a key path into a seed (splitmix64 finalizer per component). Distinct
/// key paths give statistically independent substreams.
std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> key);
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> key);

/// Seeded 64-bit stream. Bit-identical output for a given seed on every
/// platform: only the engine (fully specified by the standard) and our own
/// conversions are used, never std:: distributions.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    RandomStream substream(std::initializer_list<std::uint64_t> key) const {
        return RandomStream(derive_seed(seed_, key));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace phosmo
