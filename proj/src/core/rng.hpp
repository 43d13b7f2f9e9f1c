// Copyright 2026  The pemiu-toolkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED.  See the Apache 2 License for the specific
// language governing permissions and limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace pemiu {

// Every randomized operation in the toolkit runs on this generator so that a
// (seed, stream, index) triple replays bit-for-bit on any platform.  The
// engine is std::mt19937_64, whose output sequence the C++ standard pins
// down; the integer and normal transforms below are our own because the
// std::*_distribution classes are implementation defined.
inline constexpr const char* kPrngId = "mt19937_64/reject-int/polar-normal";

// splitmix64 finalizer, used as the mixing step for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Named sub-streams.  Values are part of the reproducibility contract; do not
// renumber.
enum Stream : std::uint64_t {
  kStreamAttributeDirection = 1,
  kStreamIdentity = 2,
  kStreamProtect = 3,
  kStreamChannel = 4,
  kStreamSweepCell = 5,
  kStreamFolds = 6,
  kStreamAttack = 7,
};

// Independent child seed for (stream, index) under a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased integer in [0, bound), bound > 0.  Rejects the short residue
  // class instead of taking a plain modulus.
  std::uint64_t below(std::uint64_t bound);

  // [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method.  The pair's second value
  // is discarded so the call sequence stays stateless.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace pemiu
