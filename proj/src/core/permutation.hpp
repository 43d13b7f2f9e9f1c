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
#include <vector>

#include <json.hpp>

#include "core/embedding.hpp"

namespace pemiu {

// Split of an S-dimensional embedding into N = S/K contiguous blocks of K
// floats.
struct BlockPartition {
  std::uint32_t dim = 0;
  std::uint32_t block_size = 0;
  std::uint32_t blocks = 0;

  bool operator==(const BlockPartition&) const = default;
};

// Throws IndivisibleBlockSize when block_size does not divide dim.
BlockPartition make_partition(std::uint32_t dim, std::uint32_t block_size);

// A permutation of the blocks of a partition.  mapping()[j] names the input
// block that lands in output slot j, so applying the permutation is a pure
// reordering: norms and coefficient multisets are preserved exactly.
class BlockPermutation {
 public:
  BlockPermutation(BlockPartition partition, std::vector<std::uint32_t> mapping);

  static BlockPermutation identity(const BlockPartition& partition);

  // Uniform over all N! block permutations.  Fisher-Yates driven by Rng(seed).
  static BlockPermutation sample_uniform(const BlockPartition& partition,
                                         std::uint64_t seed);

  // Uniform over permutations displacing exactly p blocks (p = 0 or
  // 2 <= p <= N; p = 1 cannot exist).  Chooses the moved subset uniformly,
  // then a uniform derangement of it by restarted Fisher-Yates: any pass that
  // finalizes a fixed point is thrown away whole, which is plain rejection
  // sampling and therefore exactly uniform over derangements.
  static BlockPermutation sample_with_displacement(const BlockPartition& partition,
                                                   std::uint32_t p, std::uint64_t seed);

  static BlockPermutation from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  const BlockPartition& partition() const { return partition_; }
  const std::vector<std::uint32_t>& mapping() const { return mapping_; }

  // Count of blocks not mapped to themselves.
  std::uint32_t displacement() const;

  BlockPermutation inverted() const;

  bool operator==(const BlockPermutation&) const = default;

 private:
  BlockPartition partition_;
  std::vector<std::uint32_t> mapping_;
};

// Output block j is input block mapping[j].  DimensionMismatch when v does
// not match the partition.
Embedding protect(const Embedding& v, const BlockPermutation& perm);

// Inverse of protect: unprotect(protect(v, p), p) == v bitwise.
Embedding unprotect(const Embedding& v, const BlockPermutation& perm);

BlockPermutation invert(const BlockPermutation& perm);

// compose(outer, inner) applies inner first:
//   protect(v, compose(outer, inner)) == protect(protect(v, inner), outer).
// Both factors must share a partition (PartitionMismatch otherwise).
BlockPermutation compose(const BlockPermutation& outer, const BlockPermutation& inner);

// Streams every mapping of {0..n-1} with exactly `displacement` non-fixed
// points in lexicographic order.  The search tree is pruned with an exact
// feasibility rule, so each emitted mapping costs O(n) amortized.
class DisplacementEnumerator {
 public:
  DisplacementEnumerator(std::uint32_t n, std::uint32_t displacement);

  // False once the order is exhausted.
  bool next(std::vector<std::uint32_t>& out);

 private:
  bool descend(std::vector<std::uint32_t>::size_type depth, std::uint32_t from_value);

  std::uint32_t n_;
  std::uint32_t target_;
  bool done_;
  bool started_;
  std::vector<std::uint32_t> mapping_;
  std::vector<char> used_;
  // Bookkeeping at entry of each depth: moved count and the number of still
  // free values v with v >= depth (candidates for fixed points).
  std::vector<std::uint32_t> moved_at_;
  std::vector<std::uint32_t> free_ge_at_;
};

// Streams all n! mappings ordered by ascending displacement, lexicographic
// within each displacement class.  This is the canonical brute-force attack
// order: cheapest-to-break permutations first.
class ExhaustiveOrderEnumerator {
 public:
  explicit ExhaustiveOrderEnumerator(std::uint32_t n);

  bool next(std::vector<std::uint32_t>& out);

 private:
  std::uint32_t n_;
  std::uint32_t current_p_;
  bool done_;
  DisplacementEnumerator inner_;
};

}  // namespace pemiu
