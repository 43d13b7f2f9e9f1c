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

#include "core/rng.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace pemiu {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(PEMIU_E_INVALID_ARGUMENT, "Rng::below: bound must be positive");
  // 2^64 mod bound; draws under this value would make low residues too likely.
  std::uint64_t reject = (std::numeric_limits<std::uint64_t>::max() % bound) + 1;
  if (reject == bound) reject = 0;
  std::uint64_t r = next();
  while (r < reject) r = next();
  return r % bound;
}

double Rng::normal() {
  for (;;) {
    double u = 2.0 * unit() - 1.0;
    double v = 2.0 * unit() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

}  // namespace pemiu
