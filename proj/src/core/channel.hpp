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
#include <memory>
#include <string>
#include <unordered_map>

#include "core/embedding.hpp"

namespace pemiu {

class Dataset;

// Stand-in for the attacker's template inverter: maps an unprotected-domain
// embedding to the attacker's reconstruction of it.
//   identity          perfect reconstruction
//   gaussian:<sigma>  additive coordinate noise, seeded per record index,
//                     renormalized when the source data is unit-norm;
//                     sigma = 0 degenerates to identity exactly
//   external:<path>   reconstruction looked up by record id in a dataset
//                     file (ChannelGap when an id is missing)
class ReconstructionChannel {
 public:
  static ReconstructionChannel identity();
  static ReconstructionChannel gaussian(double sigma, std::uint64_t seed,
                                        bool renormalize);
  static ReconstructionChannel external(const Dataset& reconstructions);

  // Spec strings as accepted on the command line ("identity",
  // "gaussian:0.05", "external:recon.pseb").
  static ReconstructionChannel parse(const std::string& spec, std::uint64_t seed,
                                     bool renormalize);

  Embedding apply(const Embedding& v, const std::string& record_id,
                  std::uint64_t record_index) const;

  const std::string& describe() const { return description_; }

 private:
  enum class Kind { Identity, Gaussian, External };

  Kind kind_ = Kind::Identity;
  double sigma_ = 0.0;
  std::uint64_t seed_ = 0;
  bool renormalize_ = false;
  std::shared_ptr<const std::unordered_map<std::string, Embedding>> lookup_;
  std::string description_ = "identity";
};

}  // namespace pemiu
