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

#include "core/protect.hpp"

#include <unordered_map>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/version.hpp"

namespace pemiu {

const char* protect_mode_name(ProtectMode mode) {
  switch (mode) {
    case ProtectMode::PerIdentity:
      return "per-identity";
    case ProtectMode::PerRecord:
      return "per-record";
    case ProtectMode::Fixed:
      return "fixed";
  }
  return "?";
}

ProtectResult protect_dataset(const Dataset& ds, std::uint32_t block_size,
                              ProtectMode mode, std::optional<std::uint32_t> displacement,
                              std::uint64_t seed, int threads) {
  const BlockPartition part = make_partition(ds.dim(), block_size);
  if (displacement && mode != ProtectMode::Fixed)
    fail(PEMIU_E_INVALID_ARGUMENT,
         "protect: a displacement target requires fixed mode");

  // One permutation per record, resolved up front so the log and the
  // application loop agree.
  std::vector<const BlockPermutation*> per_record(ds.size());
  std::unordered_map<std::uint32_t, BlockPermutation> by_identity;
  std::vector<BlockPermutation> owned;

  if (mode == ProtectMode::Fixed) {
    owned.push_back(displacement
                        ? BlockPermutation::sample_with_displacement(
                              part, *displacement, derive_seed(seed, kStreamProtect, 0))
                        : BlockPermutation::sample_uniform(
                              part, derive_seed(seed, kStreamProtect, 0)));
    for (std::size_t i = 0; i < ds.size(); ++i) per_record[i] = &owned.front();
  } else if (mode == ProtectMode::PerIdentity) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::uint32_t identity = ds.record(i).identity;
      auto it = by_identity.find(identity);
      if (it == by_identity.end())
        it = by_identity
                 .emplace(identity, BlockPermutation::sample_uniform(
                                        part, derive_seed(seed, kStreamProtect, identity)))
                 .first;
      per_record[i] = &it->second;
    }
  } else {
    owned.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
      owned.push_back(
          BlockPermutation::sample_uniform(part, derive_seed(seed, kStreamProtect, i)));
    for (std::size_t i = 0; i < ds.size(); ++i) per_record[i] = &owned[i];
  }

  std::vector<DatasetRecord> records(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const DatasetRecord& src = ds.record(i);
      records[i].id = src.id;
      records[i].identity = src.identity;
      records[i].attribute = src.attribute;
      records[i].values = protect(src.values, *per_record[i]);
    }
  });

  nlohmann::ordered_json log;
  log["S"] = part.dim;
  log["K"] = part.block_size;
  log["mode"] = protect_mode_name(mode);
  if (mode == ProtectMode::Fixed)
    log["displacement"] = displacement ? nlohmann::ordered_json(*displacement)
                                       : nlohmann::ordered_json(nullptr);
  log["seed"] = seed;
  log["prng"] = kPrngId;
  log["version"] = kVersion;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    nlohmann::ordered_json e;
    e["id"] = ds.record(i).id;
    e["mapping"] = per_record[i]->mapping();
    entries.push_back(std::move(e));
  }
  log["entries"] = std::move(entries);

  nlohmann::ordered_json provenance;
  provenance["kind"] = "protected";
  provenance["block_size"] = block_size;
  provenance["mode"] = protect_mode_name(mode);
  if (displacement) provenance["displacement"] = *displacement;
  provenance["seed"] = seed;
  if (ds.manifest().contains("provenance")) provenance["source"] = ds.manifest()["provenance"];
  Dataset protected_ds(std::move(records), make_manifest("memory", ds.dim(), ds.unit_norm(),
                                                         ds.size(), std::move(provenance)));
  return ProtectResult{std::move(protected_ds), std::move(log)};
}

BlockPermutation permutation_from_log(const nlohmann::json& log,
                                      const std::string& record_id) {
  if (!log.is_object() || !log.contains("S") || !log.contains("K") ||
      !log.contains("entries") || !log["entries"].is_array())
    fail(PEMIU_E_MALFORMED_FILE, "permutation log: expected object with S, K, entries");
  for (const auto& e : log["entries"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("mapping"))
      fail(PEMIU_E_MALFORMED_FILE, "permutation log: entry without id/mapping");
    if (e["id"] == record_id) {
      nlohmann::json perm;
      perm["S"] = log["S"];
      perm["K"] = log["K"];
      perm["mapping"] = e["mapping"];
      return BlockPermutation::from_json(perm);
    }
  }
  fail(PEMIU_E_UNKNOWN_RECORD,
       "permutation log: no entry for record '" + record_id + "'");
}

}  // namespace pemiu
