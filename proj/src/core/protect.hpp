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
#include <optional>

#include "core/dataset.hpp"
#include "core/permutation.hpp"

namespace pemiu {

enum class ProtectMode { PerIdentity, PerRecord, Fixed };

struct ProtectResult {
  Dataset protected_ds;
  // {"S","K","mode","seed",...,"entries":[{"id","mapping"},...]}; enough to
  // replay or invert the protection of any record.
  nlohmann::ordered_json permutation_log;
};

// Applies a block permutation to every record.  PerIdentity derives one
// permutation per identity label, PerRecord one per record index, Fixed a
// single permutation shared by all records (uniform unless a displacement is
// given).  Deterministic in (seed, mode) and independent of thread count.
ProtectResult protect_dataset(const Dataset& ds, std::uint32_t block_size,
                              ProtectMode mode, std::optional<std::uint32_t> displacement,
                              std::uint64_t seed, int threads);

// Permutation that protected `record_id` according to a permutation log.
BlockPermutation permutation_from_log(const nlohmann::json& log,
                                      const std::string& record_id);

const char* protect_mode_name(ProtectMode mode);

}  // namespace pemiu
