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

#include "core/permutation.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <utility>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace pemiu {

BlockPartition make_partition(std::uint32_t dim, std::uint32_t block_size) {
  if (dim == 0) fail(PEMIU_E_INVALID_ARGUMENT, "partition: dimension must be positive");
  if (block_size == 0)
    fail(PEMIU_E_INVALID_ARGUMENT, "partition: block size must be positive");
  if (dim % block_size != 0)
    fail(PEMIU_E_INDIVISIBLE_BLOCK_SIZE,
         "partition: block size " + std::to_string(block_size) +
             " does not divide dimension " + std::to_string(dim));
  return BlockPartition{dim, block_size, dim / block_size};
}

BlockPermutation::BlockPermutation(BlockPartition partition,
                                   std::vector<std::uint32_t> mapping)
    : partition_(partition), mapping_(std::move(mapping)) {
  if (mapping_.size() != partition_.blocks)
    fail(PEMIU_E_INVALID_ARGUMENT,
         "permutation: mapping has " + std::to_string(mapping_.size()) +
             " entries for " + std::to_string(partition_.blocks) + " blocks");
  std::vector<char> seen(partition_.blocks, 0);
  for (std::uint32_t v : mapping_) {
    if (v >= partition_.blocks || seen[v])
      fail(PEMIU_E_INVALID_ARGUMENT, "permutation: mapping is not a bijection");
    seen[v] = 1;
  }
}

BlockPermutation BlockPermutation::identity(const BlockPartition& partition) {
  std::vector<std::uint32_t> mapping(partition.blocks);
  std::iota(mapping.begin(), mapping.end(), 0u);
  return BlockPermutation(partition, std::move(mapping));
}

BlockPermutation BlockPermutation::sample_uniform(const BlockPartition& partition,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> mapping(partition.blocks);
  std::iota(mapping.begin(), mapping.end(), 0u);
  for (std::uint32_t i = partition.blocks; i > 1; --i) {
    std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
    std::swap(mapping[i - 1], mapping[j]);
  }
  return BlockPermutation(partition, std::move(mapping));
}

BlockPermutation BlockPermutation::sample_with_displacement(
    const BlockPartition& partition, std::uint32_t p, std::uint64_t seed) {
  const std::uint32_t n = partition.blocks;
  if (p == 1 || p > n)
    fail(PEMIU_E_INVALID_DISPLACEMENT,
         "sample_with_displacement: displacement " + std::to_string(p) +
             " is not reachable with " + std::to_string(n) + " blocks");
  if (p == 0) return identity(partition);

  Rng rng(seed);

  // Uniform p-subset of the block indices: the moved set.
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < p; ++i) {
    std::uint32_t j = i + static_cast<std::uint32_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::uint32_t> moved(pool.begin(), pool.begin() + p);
  std::sort(moved.begin(), moved.end());

  // Uniform derangement of [0, p): restart the whole Fisher-Yates pass as
  // soon as a finalized slot keeps its own index.
  std::vector<std::uint32_t> deranged(p);
  for (;;) {
    std::iota(deranged.begin(), deranged.end(), 0u);
    bool restart = false;
    for (std::uint32_t i = p - 1; i > 0; --i) {
      std::uint32_t j = static_cast<std::uint32_t>(rng.below(i + 1));
      std::swap(deranged[i], deranged[j]);
      if (deranged[i] == i) {
        restart = true;
        break;
      }
    }
    if (!restart && deranged[0] != 0) break;
  }

  std::vector<std::uint32_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0u);
  for (std::uint32_t t = 0; t < p; ++t) mapping[moved[t]] = moved[deranged[t]];
  return BlockPermutation(partition, std::move(mapping));
}

BlockPermutation BlockPermutation::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("S") || !j.contains("K") || !j.contains("mapping"))
    fail(PEMIU_E_MALFORMED_FILE, "permutation: expected object with S, K, mapping");
  if (!j["S"].is_number_unsigned() || !j["K"].is_number_unsigned() ||
      !j["mapping"].is_array())
    fail(PEMIU_E_MALFORMED_FILE, "permutation: S/K must be unsigned, mapping an array");
  BlockPartition part =
      make_partition(j["S"].get<std::uint32_t>(), j["K"].get<std::uint32_t>());
  std::vector<std::uint32_t> mapping;
  mapping.reserve(j["mapping"].size());
  for (const auto& e : j["mapping"]) {
    if (!e.is_number_unsigned())
      fail(PEMIU_E_MALFORMED_FILE, "permutation: mapping entries must be unsigned");
    mapping.push_back(e.get<std::uint32_t>());
  }
  try {
    return BlockPermutation(part, std::move(mapping));
  } catch (const Error& e) {
    fail(PEMIU_E_MALFORMED_FILE, e.what());
  }
}

nlohmann::ordered_json BlockPermutation::to_json() const {
  nlohmann::ordered_json j;
  j["S"] = partition_.dim;
  j["K"] = partition_.block_size;
  j["mapping"] = mapping_;
  return j;
}

std::uint32_t BlockPermutation::displacement() const {
  std::uint32_t moved = 0;
  for (std::uint32_t j = 0; j < mapping_.size(); ++j)
    if (mapping_[j] != j) ++moved;
  return moved;
}

BlockPermutation BlockPermutation::inverted() const {
  std::vector<std::uint32_t> inv(mapping_.size());
  for (std::uint32_t j = 0; j < mapping_.size(); ++j) inv[mapping_[j]] = j;
  return BlockPermutation(partition_, std::move(inv));
}

Embedding protect(const Embedding& v, const BlockPermutation& perm) {
  const BlockPartition& part = perm.partition();
  if (v.size() != part.dim)
    fail(PEMIU_E_DIMENSION_MISMATCH,
         "protect: embedding has length " + std::to_string(v.size()) +
             ", partition expects " + std::to_string(part.dim));
  Embedding out(v.size());
  const std::uint32_t k = part.block_size;
  for (std::uint32_t j = 0; j < part.blocks; ++j)
    std::memcpy(out.data() + static_cast<std::size_t>(j) * k,
                v.data() + static_cast<std::size_t>(perm.mapping()[j]) * k,
                sizeof(float) * k);
  return out;
}

Embedding unprotect(const Embedding& v, const BlockPermutation& perm) {
  const BlockPartition& part = perm.partition();
  if (v.size() != part.dim)
    fail(PEMIU_E_DIMENSION_MISMATCH,
         "unprotect: embedding has length " + std::to_string(v.size()) +
             ", partition expects " + std::to_string(part.dim));
  Embedding out(v.size());
  const std::uint32_t k = part.block_size;
  for (std::uint32_t j = 0; j < part.blocks; ++j)
    std::memcpy(out.data() + static_cast<std::size_t>(perm.mapping()[j]) * k,
                v.data() + static_cast<std::size_t>(j) * k, sizeof(float) * k);
  return out;
}

BlockPermutation invert(const BlockPermutation& perm) { return perm.inverted(); }

BlockPermutation compose(const BlockPermutation& outer, const BlockPermutation& inner) {
  if (!(outer.partition() == inner.partition()))
    fail(PEMIU_E_PARTITION_MISMATCH, "compose: permutations use different partitions");
  std::vector<std::uint32_t> mapping(outer.mapping().size());
  for (std::uint32_t j = 0; j < mapping.size(); ++j)
    mapping[j] = inner.mapping()[outer.mapping()[j]];
  return BlockPermutation(outer.partition(), std::move(mapping));
}

namespace {

// Exact completion test for the residual problem: r values onto the last r
// positions, f of the values equal to one of those positions, exactly `need`
// of the placements non-fixed.  Feasible iff r - f <= need <= r, except that
// need == 1 with f == r is impossible (a permutation cannot move exactly one
// element).
bool residual_feasible(std::uint32_t need, std::uint32_t r, std::uint32_t f) {
  if (need > r) return false;
  if (need + f < r) return false;
  if (need == 1 && f == r) return false;
  return true;
}

}  // namespace

DisplacementEnumerator::DisplacementEnumerator(std::uint32_t n, std::uint32_t displacement)
    : n_(n),
      target_(displacement),
      done_(false),
      started_(false),
      mapping_(n),
      used_(n, 0),
      moved_at_(n + 1, 0),
      free_ge_at_(n + 1, 0) {
  moved_at_[0] = 0;
  free_ge_at_[0] = n;
}

bool DisplacementEnumerator::descend(std::vector<std::uint32_t>::size_type depth,
                                     std::uint32_t from_value) {
  while (depth < n_) {
    const std::uint32_t d = moved_at_[depth];
    const std::uint32_t f = free_ge_at_[depth];
    const std::uint32_t r = n_ - static_cast<std::uint32_t>(depth);
    bool found = false;
    for (std::uint32_t v = from_value; v < n_; ++v) {
      if (used_[v]) continue;
      const std::uint32_t moved = d + (v != depth ? 1 : 0);
      if (moved > target_) continue;
      const std::uint32_t child_f = f - (v >= depth ? 1 : 0) -
                                    ((v != depth && !used_[depth]) ? 1 : 0);
      if (!residual_feasible(target_ - moved, r - 1, child_f)) continue;
      mapping_[depth] = v;
      used_[v] = 1;
      moved_at_[depth + 1] = moved;
      free_ge_at_[depth + 1] = child_f;
      found = true;
      break;
    }
    if (!found) return false;
    ++depth;
    from_value = 0;
  }
  return true;
}

bool DisplacementEnumerator::next(std::vector<std::uint32_t>& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (!residual_feasible(target_, n_, n_) || !descend(0, 0)) {
      done_ = true;
      return false;
    }
    out = mapping_;
    return true;
  }
  // Advance: free finalized slots bottom-up until one can take a larger value.
  std::size_t depth = n_;
  while (depth > 0) {
    --depth;
    const std::uint32_t prev = mapping_[depth];
    used_[prev] = 0;
    if (descend(depth, prev + 1)) {
      out = mapping_;
      return true;
    }
  }
  done_ = true;
  return false;
}

ExhaustiveOrderEnumerator::ExhaustiveOrderEnumerator(std::uint32_t n)
    : n_(n), current_p_(0), done_(false), inner_(n, 0) {}

bool ExhaustiveOrderEnumerator::next(std::vector<std::uint32_t>& out) {
  while (!done_) {
    if (inner_.next(out)) return true;
    current_p_ = current_p_ == 0 ? 2 : current_p_ + 1;
    if (current_p_ > n_) {
      done_ = true;
      break;
    }
    inner_ = DisplacementEnumerator(n_, current_p_);
  }
  return false;
}

}  // namespace pemiu
