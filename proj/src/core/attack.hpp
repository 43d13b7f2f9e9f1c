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
#include <string>
#include <vector>

#include "core/channel.hpp"
#include "core/dataset.hpp"
#include "core/permutation.hpp"
#include "core/scores.hpp"

namespace pemiu {

struct RsrResult {
  double rsr = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t attacked = 0;
};

// Reversibility success rate: the share of attacked embeddings whose channel
// reconstruction is accepted against the original record of the same id at
// the operating point.  MissingOriginal when an attacked id has no original.
RsrResult rsr(const Dataset& attacked, const Dataset& originals,
              const ReconstructionChannel& channel, const OperatingPoint& op,
              int threads);

enum class SweepMode { FixedDisplacement, PerIdentity };

struct SweepConfig {
  std::vector<std::uint32_t> k_list{32, 64, 128};
  // Fixed-displacement sweeps only.  Empty optional selects the per-K preset
  // {max(2, N-12) .. N}; explicit values above N are skipped for that K.
  std::optional<std::vector<std::uint32_t>> p_list;
  SweepMode mode = SweepMode::FixedDisplacement;
  std::string channel_spec = "identity";
  std::vector<double> fmr_targets{0.001, 0.01};
  // Recalibrate the threshold on each cell's own protected system instead of
  // the per-K protected baseline.
  bool per_cell_calibration = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct RsrRow {
  std::uint32_t k = 0;
  std::int64_t p = 0;  // -1 when the cell uses per-identity shuffles
  double target_fmr = 0.0;
  double threshold = 0.0;
  double rsr = 0.0;
  std::uint64_t n_attacked = 0;
  std::uint64_t seed = 0;  // replays this cell's permutations
};

struct RsrGrid {
  std::vector<RsrRow> rows;
};

// For every K: protects the corpus with per-identity shuffles, calibrates
// thresholds at the FMR targets on that protected system (all-pairs scores),
// then measures RSR of fixed-displacement protected templates for each P.
// Row order is k_list x ascending P x target order; byte-stable across
// thread counts.
RsrGrid rsr_sweep(const Dataset& ds, const SweepConfig& config);

// Displacements swept for a partition under the default preset.
std::vector<std::uint32_t> default_p_preset(std::uint32_t blocks);

Embedding known_seed_attack(const Embedding& protected_v, const BlockPermutation& perm,
                            const ReconstructionChannel& channel,
                            const std::string& record_id, std::uint64_t record_index);

enum class AttackOrder { Exhaustive, Random };

struct AttackReport {
  std::string mode;
  std::string order;
  bool success = false;
  double best_score = 0.0;
  double threshold = 0.0;
  std::uint64_t candidates_tried = 0;
  std::uint64_t budget = 0;
  std::string search_space_size;  // exact N!, decimal
  std::optional<BlockPermutation> recovered;
  std::optional<std::uint64_t> seed;  // random order only
  std::string record_id;

  nlohmann::ordered_json to_json() const;
};

// Tries candidate permutations until channel(unprotect(protected_v, c))
// reaches the threshold against `reference` or the budget runs out.
// Exhaustive order walks ascending displacement, lexicographic within;
// random order draws i.i.d. uniform permutations from the seed.  Candidates
// are scored in parallel batches but the reported winner is always the one
// with the smallest enumeration index.
AttackReport brute_force_attack(const Embedding& protected_v, const Embedding& reference,
                                const BlockPartition& part, double threshold,
                                std::uint64_t budget, AttackOrder order,
                                std::uint64_t seed, const ReconstructionChannel& channel,
                                const std::string& record_id, int threads);

// Single-record attack reports against a protected dataset; the acceptance
// oracle is the original record with the same id.
AttackReport known_seed_report(const Dataset& protected_ds, const Dataset& originals,
                               const std::string& record_id, const nlohmann::json& log,
                               double threshold, const ReconstructionChannel& channel);

AttackReport brute_force_report(const Dataset& protected_ds, const Dataset& originals,
                                const std::string& record_id, std::uint32_t block_size,
                                double threshold, const ReconstructionChannel& channel,
                                std::uint64_t budget, AttackOrder order, std::uint64_t seed,
                                int threads);

}  // namespace pemiu
