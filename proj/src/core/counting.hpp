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
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pemiu {

using BigInt = boost::multiprecision::cpp_int;

// n! exactly.  This is the size of the block-permutation space for n blocks
// and overflows 64 bits from n = 21, hence the big integer.
BigInt factorial(std::uint32_t n);

// Derangement number D(n): permutations of n elements with no fixed point.
BigInt derangements(std::uint32_t n);

// Permutations of n elements that move exactly p of them: C(n, p) * D(p).
// p = 1 is a valid query and yields 0.
BigInt count_with_displacement(std::uint32_t n, std::uint32_t p);

std::string to_decimal(const BigInt& v);

}  // namespace pemiu
