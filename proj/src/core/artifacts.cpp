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

#include "core/artifacts.hpp"

#include "core/rng.hpp"
#include "core/textio.hpp"
#include "core/version.hpp"

namespace pemiu {

std::string meta_comment(const RunMeta& meta) {
  std::string out;
  out += "# pemiu ";
  out += kVersion;
  out += "\n# prng: ";
  out += kPrngId;
  out += "\n# seed: ";
  out += meta.seed ? std::to_string(*meta.seed) : "none";
  out += "\n# config: ";
  out += meta.config;
  out += "\n# config_digest: ";
  out += fnv1a64_hex(meta.config);
  out += "\n";
  return out;
}

nlohmann::ordered_json meta_json(const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["prng"] = kPrngId;
  if (meta.seed)
    j["seed"] = *meta.seed;
  else
    j["seed"] = nullptr;
  j["config"] = meta.config;
  j["config_digest"] = fnv1a64_hex(meta.config);
  return j;
}

void write_json_artifact(const nlohmann::ordered_json& j,
                         const std::filesystem::path& path) {
  write_file(path, j.dump(2) + "\n");
}

void write_det_csv(const std::vector<DetPoint>& curve, const RunMeta& meta,
                   const std::filesystem::path& path) {
  std::string out = meta_comment(meta);
  out += "threshold,fmr,fnmr\n";
  for (const DetPoint& p : curve) {
    out += fmt_double(p.threshold);
    out += ',';
    out += fmt_double(p.fmr);
    out += ',';
    out += fmt_double(p.fnmr);
    out += '\n';
  }
  write_file(path, out);
}

void write_rsr_grid_csv(const RsrGrid& grid, const RunMeta& meta,
                        const std::filesystem::path& path) {
  std::string out = meta_comment(meta);
  out += "K,P,target_fmr,threshold,rsr,n_attacked,seed\n";
  for (const RsrRow& row : grid.rows) {
    out += std::to_string(row.k);
    out += ',';
    out += std::to_string(row.p);
    out += ',';
    out += fmt_double(row.target_fmr);
    out += ',';
    out += fmt_double(row.threshold);
    out += ',';
    out += fmt_double(row.rsr);
    out += ',';
    out += std::to_string(row.n_attacked);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  write_file(path, out);
}

nlohmann::ordered_json evaluation_json(const std::string& label, const EerResult& eer,
                                       const std::vector<OperatingPoint>& ops,
                                       const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["eer"] = eer.eer;
  j["eer_threshold"] = eer.threshold;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const OperatingPoint& op : ops) points.push_back(op.to_json());
  j["operating_points"] = std::move(points);
  j["meta"] = meta_json(meta);
  return j;
}

nlohmann::ordered_json attack_report_json(const AttackReport& report, const RunMeta& meta) {
  nlohmann::ordered_json j = report.to_json();
  j["meta"] = meta_json(meta);
  return j;
}

nlohmann::ordered_json probe_report_json(const ProbeReport& report, const ProbeHyper& hyper,
                                         const RunMeta& meta) {
  nlohmann::ordered_json j = report.to_json();
  nlohmann::ordered_json training;
  training["epochs"] = hyper.epochs;
  training["learning_rate"] = hyper.learning_rate;
  training["l2"] = hyper.l2;
  j["training"] = std::move(training);
  j["meta"] = meta_json(meta);
  return j;
}

}  // namespace pemiu
