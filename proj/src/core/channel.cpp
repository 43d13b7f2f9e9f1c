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

#include "core/channel.hpp"

#include <charconv>
#include <cmath>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/textio.hpp"

namespace pemiu {

ReconstructionChannel ReconstructionChannel::identity() { return {}; }

ReconstructionChannel ReconstructionChannel::gaussian(double sigma, std::uint64_t seed,
                                                      bool renormalize) {
  if (!(sigma >= 0.0))
    fail(PEMIU_E_INVALID_ARGUMENT, "channel: gaussian sigma must be >= 0");
  ReconstructionChannel ch;
  ch.kind_ = Kind::Gaussian;
  ch.sigma_ = sigma;
  ch.seed_ = seed;
  ch.renormalize_ = renormalize;
  ch.description_ = "gaussian:" + fmt_double(sigma);
  return ch;
}

ReconstructionChannel ReconstructionChannel::external(const Dataset& reconstructions) {
  auto map = std::make_shared<std::unordered_map<std::string, Embedding>>();
  map->reserve(reconstructions.size());
  for (const DatasetRecord& r : reconstructions.records()) map->emplace(r.id, r.values);
  ReconstructionChannel ch;
  ch.kind_ = Kind::External;
  ch.lookup_ = std::move(map);
  ch.description_ = "external";
  return ch;
}

ReconstructionChannel ReconstructionChannel::parse(const std::string& spec,
                                                   std::uint64_t seed, bool renormalize) {
  if (spec.empty() || spec == "identity") return identity();
  if (spec.rfind("gaussian:", 0) == 0) {
    const std::string arg = spec.substr(9);
    double sigma;
    auto res = std::from_chars(arg.data(), arg.data() + arg.size(), sigma);
    if (res.ec != std::errc() || res.ptr != arg.data() + arg.size())
      fail(PEMIU_E_INVALID_ARGUMENT, "channel: cannot parse sigma in '" + spec + "'");
    return gaussian(sigma, seed, renormalize);
  }
  if (spec.rfind("external:", 0) == 0) {
    ReconstructionChannel ch = external(read_dataset(spec.substr(9)));
    ch.description_ = spec;
    return ch;
  }
  fail(PEMIU_E_INVALID_ARGUMENT,
       "channel: unknown spec '" + spec +
           "', want identity | gaussian:<sigma> | external:<path>");
}

Embedding ReconstructionChannel::apply(const Embedding& v, const std::string& record_id,
                                       std::uint64_t record_index) const {
  switch (kind_) {
    case Kind::Identity:
      return v;
    case Kind::Gaussian: {
      if (sigma_ == 0.0) return v;
      Rng rng(derive_seed(seed_, kStreamChannel, record_index));
      std::vector<double> noisy(v.size());
      for (std::size_t c = 0; c < v.size(); ++c)
        noisy[c] = static_cast<double>(v[c]) + sigma_ * rng.normal();
      if (renormalize_) {
        double sq = 0.0;
        for (double x : noisy) sq += x * x;
        double n = std::sqrt(sq);
        if (n <= 1e-12)
          fail(PEMIU_E_ZERO_VECTOR, "channel: noisy reconstruction collapsed to zero");
        for (double& x : noisy) x /= n;
      }
      Embedding out(v.size());
      for (std::size_t c = 0; c < v.size(); ++c) out[c] = static_cast<float>(noisy[c]);
      return out;
    }
    case Kind::External: {
      auto it = lookup_->find(record_id);
      if (it == lookup_->end())
        fail(PEMIU_E_CHANNEL_GAP,
             "channel: no external reconstruction for record '" + record_id + "'");
      if (it->second.size() != v.size())
        fail(PEMIU_E_DIMENSION_MISMATCH,
             "channel: external reconstruction for '" + record_id +
                 "' has mismatched length");
      return it->second;
    }
  }
  fail(PEMIU_E_INTERNAL, "channel: unreachable kind");
}

}  // namespace pemiu
