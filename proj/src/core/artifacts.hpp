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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/attack.hpp"
#include "core/probe.hpp"
#include "core/scores.hpp"

namespace pemiu {

// Provenance stamped into every artifact: the canonical parameter string of
// the run, its digest, and the seed when the run was randomized.  No
// timestamps, so reruns are byte identical.
struct RunMeta {
  std::string config;
  std::optional<std::uint64_t> seed;
};

// Leading "# ..." comment block for CSV artifacts.
std::string meta_comment(const RunMeta& meta);

nlohmann::ordered_json meta_json(const RunMeta& meta);

void write_json_artifact(const nlohmann::ordered_json& j,
                         const std::filesystem::path& path);

void write_det_csv(const std::vector<DetPoint>& curve, const RunMeta& meta,
                   const std::filesystem::path& path);

// Header: K,P,target_fmr,threshold,rsr,n_attacked,seed
void write_rsr_grid_csv(const RsrGrid& grid, const RunMeta& meta,
                        const std::filesystem::path& path);

nlohmann::ordered_json evaluation_json(const std::string& label, const EerResult& eer,
                                       const std::vector<OperatingPoint>& ops,
                                       const RunMeta& meta);

nlohmann::ordered_json attack_report_json(const AttackReport& report, const RunMeta& meta);

nlohmann::ordered_json probe_report_json(const ProbeReport& report, const ProbeHyper& hyper,
                                         const RunMeta& meta);

}  // namespace pemiu
