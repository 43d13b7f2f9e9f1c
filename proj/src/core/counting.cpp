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

#include "core/counting.hpp"

#include "core/error.hpp"

namespace pemiu {

BigInt factorial(std::uint32_t n) {
  BigInt result = 1;
  for (std::uint32_t i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt derangements(std::uint32_t n) {
  if (n == 0) return 1;
  if (n == 1) return 0;
  BigInt prev2 = 1;  // D(0)
  BigInt prev1 = 0;  // D(1)
  BigInt current = 0;
  for (std::uint32_t k = 2; k <= n; ++k) {
    current = (k - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = current;
  }
  return current;
}

BigInt count_with_displacement(std::uint32_t n, std::uint32_t p) {
  if (p > n)
    fail(PEMIU_E_INVALID_DISPLACEMENT,
         "count_with_displacement: displacement " + std::to_string(p) +
             " exceeds block count " + std::to_string(n));
  // C(n, p), exact at every step because the running product of j consecutive
  // integers is divisible by j!.
  BigInt binom = 1;
  for (std::uint32_t j = 1; j <= p; ++j) {
    binom *= (n - p + j);
    binom /= j;
  }
  return binom * derangements(p);
}

std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace pemiu
