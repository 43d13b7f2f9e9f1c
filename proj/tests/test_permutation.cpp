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

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "core/counting.hpp"
#include "core/error.hpp"
#include "core/permutation.hpp"
#include "core/rng.hpp"

using namespace pemiu;

namespace {

using Mapping = std::vector<std::uint32_t>;

std::uint32_t moved_count(const Mapping& m) {
  std::uint32_t moved = 0;
  for (std::uint32_t j = 0; j < m.size(); ++j)
    if (m[j] != j) ++moved;
  return moved;
}

// Independent oracle for the exhaustive order: all N! mappings in plain
// lexicographic order, bucketed by displacement, buckets concatenated with
// ascending displacement.  Lexicographic order survives the bucketing, so
// this is exactly "ascending P, lexicographic within P".
std::vector<Mapping> oracle_order(std::uint32_t n) {
  Mapping m(n);
  std::iota(m.begin(), m.end(), 0u);
  std::map<std::uint32_t, std::vector<Mapping>> buckets;
  do {
    buckets[moved_count(m)].push_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  std::vector<Mapping> out;
  for (auto& [p, list] : buckets)
    for (auto& e : list) out.push_back(std::move(e));
  return out;
}

pemiu::Error catch_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const pemiu::Error& e) {
    return e;
  }
  FAIL("expected a pemiu::Error");
  return pemiu::Error(PEMIU_OK, "unreachable");
}

}  // namespace

TEST_CASE("partition validation") {
  BlockPartition part = make_partition(512, 64);
  CHECK(part.blocks == 8);
  CHECK(make_partition(512, 512).blocks == 1);

  CHECK(catch_error([] { make_partition(512, 96); }).code() ==
        PEMIU_E_INDIVISIBLE_BLOCK_SIZE);
  CHECK(catch_error([] { make_partition(0, 16); }).code() == PEMIU_E_INVALID_ARGUMENT);
  CHECK(catch_error([] { make_partition(512, 0); }).code() == PEMIU_E_INVALID_ARGUMENT);
}

TEST_CASE("mapping must be a bijection") {
  BlockPartition part = make_partition(8, 2);
  CHECK_NOTHROW(BlockPermutation(part, {3, 2, 1, 0}));
  CHECK(catch_error([&] { BlockPermutation(part, {0, 1, 2}); }).code() ==
        PEMIU_E_INVALID_ARGUMENT);
  CHECK(catch_error([&] { BlockPermutation(part, {0, 1, 2, 2}); }).code() ==
        PEMIU_E_INVALID_ARGUMENT);
  CHECK(catch_error([&] { BlockPermutation(part, {0, 1, 2, 4}); }).code() ==
        PEMIU_E_INVALID_ARGUMENT);
}

TEST_CASE("identity and displacement") {
  BlockPartition part = make_partition(8, 2);
  BlockPermutation id = BlockPermutation::identity(part);
  CHECK(id.mapping() == Mapping{0, 1, 2, 3});
  CHECK(id.displacement() == 0);
  CHECK(BlockPermutation(part, {1, 0, 2, 3}).displacement() == 2);
  CHECK(BlockPermutation(part, {1, 2, 0, 3}).displacement() == 3);
  CHECK(BlockPermutation(part, {3, 2, 1, 0}).displacement() == 4);
}

TEST_CASE("protect moves whole blocks, unprotect is the exact inverse") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation perm(part, {2, 0, 1});
  Embedding v{1.f, 2.f, 3.f, 4.f, 5.f, 6.f};

  // Output block j is input block mapping[j].
  CHECK(protect(v, perm) == Embedding{5.f, 6.f, 1.f, 2.f, 3.f, 4.f});
  CHECK(unprotect(protect(v, perm), perm) == v);

  CHECK(catch_error([&] { protect({1.f, 2.f}, perm); }).code() ==
        PEMIU_E_DIMENSION_MISMATCH);
  CHECK(catch_error([&] { unprotect({1.f, 2.f}, perm); }).code() ==
        PEMIU_E_DIMENSION_MISMATCH);
}

TEST_CASE("round trip is bitwise for arbitrary float payloads") {
  BlockPartition part = make_partition(256, 16);
  Rng rng(31);
  Embedding v(part.dim);
  for (float& x : v) {
    // Full-range bit patterns except NaN/inf: protect is pure data movement.
    std::uint32_t bits = static_cast<std::uint32_t>(rng.next());
    if ((bits & 0x7F800000u) == 0x7F800000u) bits &= 0x7F7FFFFFu;
    std::memcpy(&x, &bits, sizeof(bits));
  }
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    BlockPermutation perm = BlockPermutation::sample_uniform(part, seed);
    Embedding cycle = unprotect(protect(v, perm), perm);
    CHECK(std::memcmp(cycle.data(), v.data(), sizeof(float) * v.size()) == 0);
  }
}

TEST_CASE("invert and compose obey the permutation algebra") {
  BlockPartition part = make_partition(40, 5);
  BlockPermutation a = BlockPermutation::sample_uniform(part, 11);
  BlockPermutation b = BlockPermutation::sample_uniform(part, 22);
  BlockPermutation id = BlockPermutation::identity(part);

  CHECK(compose(a, a.inverted()) == id);
  CHECK(compose(a.inverted(), a) == id);

  Embedding v(part.dim);
  std::iota(v.begin(), v.end(), 1.f);
  CHECK(protect(v, compose(a, b)) == protect(protect(v, b), a));
  CHECK(unprotect(v, a) == protect(v, a.inverted()));

  BlockPartition other = make_partition(40, 8);
  BlockPermutation c = BlockPermutation::sample_uniform(other, 1);
  CHECK(catch_error([&] { compose(a, c); }).code() == PEMIU_E_PARTITION_MISMATCH);
}

TEST_CASE("json round trip and frozen layout") {
  BlockPartition part = make_partition(8, 2);
  BlockPermutation perm(part, {1, 0, 2, 3});
  CHECK(perm.to_json().dump() == R"({"S":8,"K":2,"mapping":[1,0,2,3]})");
  CHECK(BlockPermutation::from_json(perm.to_json()) == perm);

  auto code_of = [](const char* text) {
    return catch_error([&] { BlockPermutation::from_json(nlohmann::json::parse(text)); })
        .code();
  };
  CHECK(code_of(R"({"S":8,"K":2})") == PEMIU_E_MALFORMED_FILE);
  CHECK(code_of(R"({"S":8,"K":2,"mapping":[1,1,2,3]})") == PEMIU_E_MALFORMED_FILE);
  CHECK(code_of(R"({"S":8,"K":2,"mapping":[0,1,2]})") == PEMIU_E_MALFORMED_FILE);
  CHECK(code_of(R"({"S":8,"K":-2,"mapping":[0,1,2,3]})") == PEMIU_E_MALFORMED_FILE);
  CHECK(code_of(R"({"S":8,"K":3,"mapping":[0,1]})") == PEMIU_E_INDIVISIBLE_BLOCK_SIZE);
}

TEST_CASE("sample_uniform is deterministic and seed-sensitive") {
  BlockPartition part = make_partition(512, 16);
  CHECK(BlockPermutation::sample_uniform(part, 7) ==
        BlockPermutation::sample_uniform(part, 7));
  CHECK(BlockPermutation::sample_uniform(part, 7) !=
        BlockPermutation::sample_uniform(part, 8));
}

TEST_CASE("sample_uniform covers S_N uniformly") {
  BlockPartition part = make_partition(8, 2);  // N = 4, 24 permutations
  std::map<Mapping, int> freq;
  const int draws = 12000;
  for (int i = 0; i < draws; ++i) {
    std::uint64_t seed = derive_seed(4242, kStreamAttack, static_cast<std::uint64_t>(i));
    freq[BlockPermutation::sample_uniform(part, seed).mapping()]++;
  }
  CHECK(freq.size() == 24);
  for (const auto& [m, c] : freq) {
    // Expected 500, sd ~= 22; the window is a generous 5 sd.
    CHECK(c > 390);
    CHECK(c < 610);
  }
}

TEST_CASE("sample_with_displacement hits exactly P moved blocks") {
  BlockPartition part = make_partition(64, 4);  // N = 16
  for (std::uint32_t p : {0u, 2u, 3u, 7u, 16u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      BlockPermutation perm = BlockPermutation::sample_with_displacement(part, p, seed);
      CHECK(perm.displacement() == p);
    }
  }
  CHECK(catch_error([&] {
          BlockPermutation::sample_with_displacement(part, 1, 0);
        }).code() == PEMIU_E_INVALID_DISPLACEMENT);
  CHECK(catch_error([&] {
          BlockPermutation::sample_with_displacement(part, 17, 0);
        }).code() == PEMIU_E_INVALID_DISPLACEMENT);
}

TEST_CASE("sample_with_displacement is uniform over its support") {
  BlockPartition part = make_partition(10, 2);  // N = 5, C(5,3)*D(3) = 20 targets
  std::map<Mapping, int> freq;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    std::uint64_t seed = derive_seed(99, kStreamAttack, static_cast<std::uint64_t>(i));
    freq[BlockPermutation::sample_with_displacement(part, 3, seed).mapping()]++;
  }
  CHECK(freq.size() == 20);
  for (const auto& [m, c] : freq) {
    CHECK(moved_count(m) == 3);
    // Expected 500, sd ~= 22.
    CHECK(c > 390);
    CHECK(c < 610);
  }
}

TEST_CASE("displacement enumerator matches the brute-force oracle") {
  for (std::uint32_t n = 1; n <= 7; ++n) {
    std::vector<Mapping> expected = oracle_order(n);

    // Whole stream, in order.
    std::vector<Mapping> got;
    ExhaustiveOrderEnumerator full(n);
    Mapping m;
    while (full.next(m)) got.push_back(m);
    REQUIRE(got.size() == expected.size());
    CHECK(got == expected);

    // Per-displacement slices agree with the counting module.
    for (std::uint32_t p = 0; p <= n; ++p) {
      DisplacementEnumerator en(n, p);
      std::uint64_t count = 0;
      Mapping prev;
      while (en.next(m)) {
        CHECK(moved_count(m) == p);
        if (count > 0) CHECK(prev < m);  // strictly increasing lex order
        prev = m;
        ++count;
      }
      CHECK(BigInt(count) == count_with_displacement(n, p));
    }
  }
}

TEST_CASE("displacement enumerator yields nothing for impossible targets") {
  Mapping m;
  DisplacementEnumerator p1(5, 1);
  CHECK_FALSE(p1.next(m));
  DisplacementEnumerator too_big(4, 5);
  CHECK_FALSE(too_big.next(m));
}

TEST_CASE("exhaustive order for N=3 frozen") {
  std::vector<Mapping> expected{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  ExhaustiveOrderEnumerator en(3);
  Mapping m;
  std::vector<Mapping> got;
  while (en.next(m)) got.push_back(m);
  CHECK(got == expected);
}

TEST_CASE("enumerators are independent streams") {
  ExhaustiveOrderEnumerator a(5), b(5);
  Mapping ma, mb;
  // Drain a few from one, then check the other still starts from scratch.
  for (int i = 0; i < 10; ++i) a.next(ma);
  REQUIRE(b.next(mb));
  CHECK(mb == Mapping{0, 1, 2, 3, 4});
}
