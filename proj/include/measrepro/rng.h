// Copyright 2026 The measrepro Authors
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

#ifndef MEASREPRO_RNG_H_
#define MEASREPRO_RNG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "measrepro/matrix.h"

namespace measrepro {

/// Seeded random stream. The pair (seed, substream) fully determines the
/// sample sequence; parallel Monte Carlo gives each work chunk its own
/// substream rather than sharing one generator.
///
/// Only the engine (std::mt19937_64 seeded through std::seed_seq, both fully
/// specified by the standard) is taken from the library. Uniform and Gaussian
/// variates are derived here so the sequence is identical across standard
/// library implementations.
class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::uint64_t substream = 0);

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t substream() const noexcept {
        return substream_;
    }

    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n);
    /// Standard normal via Box-Muller.
    double normal();
    /// Real and imaginary parts i.i.d. standard normal.
    cplx complex_normal();
    /// Draws an index according to nonnegative weights summing to ~1.
    std::size_t categorical(std::span<const double> weights);

   private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

}  // namespace measrepro

#endif  // MEASREPRO_RNG_H_
