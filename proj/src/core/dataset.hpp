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
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "core/embedding.hpp"

namespace pemiu {

struct DatasetRecord {
  std::string id;
  std::uint32_t identity = 0;
  std::uint8_t attribute = 0;  // binary class label, 0 or 1
  Embedding values;

  bool operator==(const DatasetRecord&) const = default;
};

// Parameters of the synthetic corpus: one centroid per identity drawn
// uniformly on the unit hypersphere, samples scattered around it with
// i.i.d. Gaussian coordinate noise, and a binary attribute written in as
// +-attribute_offset along one fixed seed-derived unit direction.
struct SynthSpec {
  std::uint32_t dim = 512;
  std::uint32_t n_identities = 0;
  std::uint32_t samples_per_identity = 1;
  double intra_sigma = 0.0;
  double attribute_offset = 0.0;
  bool unit_norm = true;
  std::uint64_t seed = 0;
};

class Dataset {
 public:
  Dataset(std::vector<DatasetRecord> records, nlohmann::ordered_json manifest);

  // Deterministic in seed alone; identical output for any thread count.
  static Dataset generate(const SynthSpec& spec, int threads);

  std::size_t size() const { return records_.size(); }
  std::uint32_t dim() const { return dim_; }
  bool unit_norm() const { return unit_norm_; }

  const DatasetRecord& record(std::size_t index) const { return records_[index]; }
  const std::vector<DatasetRecord>& records() const { return records_; }

  bool contains(const std::string& id) const { return by_id_.count(id) != 0; }
  // UnknownRecord when the id is absent.
  std::size_t index_of(const std::string& id) const;

  const nlohmann::ordered_json& manifest() const { return manifest_; }

 private:
  void validate() const;

  std::vector<DatasetRecord> records_;
  nlohmann::ordered_json manifest_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::uint32_t dim_ = 0;
  bool unit_norm_ = false;
};

enum class DatasetFormat { Binary, Csv };

// Writes the records plus a <path>.manifest.json sidecar.  The binary
// container round-trips float payloads bit for bit; CSV uses
// shortest-round-trip decimal so values survive a read back exactly.
void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                   DatasetFormat format);

// Container is detected from the leading bytes, not the file name.  A missing
// sidecar degrades to an import-provenance manifest.
Dataset read_dataset(const std::filesystem::path& path);

nlohmann::ordered_json make_manifest(const std::string& format, std::uint32_t dim,
                                     bool unit_norm, std::size_t records,
                                     nlohmann::ordered_json provenance);

struct PairEntry {
  std::string a;
  std::string b;
  bool mated = false;
};
using Pairing = std::vector<PairEntry>;

// CSV rows id_a,id_b,mated with an optional header line.
Pairing load_pairing(const std::filesystem::path& path);

// Every unordered record pair once, in record order; mated iff the identity
// labels agree.
Pairing all_pairs(const Dataset& ds);

}  // namespace pemiu
