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

#include "core/attack.hpp"

#include <algorithm>

#include "core/counting.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/protect.hpp"
#include "core/rng.hpp"
#include "core/scoring.hpp"

namespace pemiu {

RsrResult rsr(const Dataset& attacked, const Dataset& originals,
              const ReconstructionChannel& channel, const OperatingPoint& op,
              int threads) {
  std::vector<std::size_t> original_index(attacked.size());
  for (std::size_t i = 0; i < attacked.size(); ++i) {
    const std::string& id = attacked.record(i).id;
    if (!originals.contains(id))
      fail(PEMIU_E_MISSING_ORIGINAL,
           "rsr: attacked record '" + id + "' has no original counterpart");
    original_index[i] = originals.index_of(id);
  }

  std::vector<char> accepted(attacked.size(), 0);
  parallel_for(attacked.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Embedding recon = channel.apply(attacked.record(i).values, attacked.record(i).id,
                                      static_cast<std::uint64_t>(i));
      double score =
          cosine_similarity(recon, originals.record(original_index[i]).values);
      accepted[i] = score >= op.threshold ? 1 : 0;
    }
  });

  RsrResult result;
  result.attacked = attacked.size();
  for (char a : accepted) result.accepted += a;
  result.rsr = attacked.size() == 0
                   ? 0.0
                   : static_cast<double>(result.accepted) /
                         static_cast<double>(result.attacked);
  return result;
}

std::vector<std::uint32_t> default_p_preset(std::uint32_t blocks) {
  std::vector<std::uint32_t> preset;
  if (blocks < 2) {
    preset.push_back(0);
    return preset;
  }
  std::uint32_t lo = blocks > 14 ? blocks - 12 : 2;
  for (std::uint32_t p = lo; p <= blocks; ++p) preset.push_back(p);
  return preset;
}

RsrGrid rsr_sweep(const Dataset& ds, const SweepConfig& config) {
  if (config.k_list.empty())
    fail(PEMIU_E_INVALID_ARGUMENT, "rsr_sweep: empty block-size list");
  if (config.fmr_targets.empty())
    fail(PEMIU_E_INVALID_ARGUMENT, "rsr_sweep: empty FMR target list");
  if (config.p_list && config.mode == SweepMode::PerIdentity)
    fail(PEMIU_E_INVALID_ARGUMENT,
         "rsr_sweep: displacement list is meaningless with per-identity shuffles");
  if (config.p_list) {
    for (std::uint32_t p : *config.p_list)
      if (p == 1)
        fail(PEMIU_E_INVALID_DISPLACEMENT,
             "rsr_sweep: displacement 1 is not reachable by any permutation");
  }

  const ReconstructionChannel channel = ReconstructionChannel::parse(
      config.channel_spec, derive_seed(config.seed, kStreamChannel, 0), ds.unit_norm());

  RsrGrid grid;
  for (std::uint32_t k : config.k_list) {
    const BlockPartition part = make_partition(ds.dim(), k);
    const std::uint64_t baseline_seed = derive_seed(config.seed, kStreamSweepCell, k);

    // Protected verification baseline: fresh uniform shuffle per identity,
    // scored against itself over all pairs.
    ProtectResult baseline =
        protect_dataset(ds, k, ProtectMode::PerIdentity, std::nullopt, baseline_seed,
                        config.threads);
    ScoreSet baseline_scores = score_all_pairs(baseline.protected_ds, config.threads);

    std::vector<OperatingPoint> ops;
    ops.reserve(config.fmr_targets.size());
    for (double target : config.fmr_targets)
      ops.push_back(threshold_at_fmr(baseline_scores, target));

    if (config.mode == SweepMode::PerIdentity) {
      for (std::size_t t = 0; t < ops.size(); ++t) {
        RsrResult r = rsr(baseline.protected_ds, ds, channel, ops[t], config.threads);
        grid.rows.push_back(RsrRow{k, -1, config.fmr_targets[t], ops[t].threshold, r.rsr,
                                   r.attacked, baseline_seed});
      }
      continue;
    }

    std::vector<std::uint32_t> p_values =
        config.p_list ? *config.p_list : default_p_preset(part.blocks);
    for (std::uint32_t p : p_values) {
      if (p > part.blocks) continue;  // infeasible for this K, skip the cell
      const std::uint64_t cell_seed = derive_seed(
          config.seed, kStreamSweepCell, (static_cast<std::uint64_t>(k) << 32) | p);
      ProtectResult cell = protect_dataset(ds, k, ProtectMode::Fixed, p, cell_seed,
                                           config.threads);
      std::vector<OperatingPoint> cell_ops = ops;
      if (config.per_cell_calibration) {
        ScoreSet cell_scores = score_all_pairs(cell.protected_ds, config.threads);
        for (std::size_t t = 0; t < config.fmr_targets.size(); ++t)
          cell_ops[t] = threshold_at_fmr(cell_scores, config.fmr_targets[t]);
      }
      for (std::size_t t = 0; t < cell_ops.size(); ++t) {
        RsrResult r = rsr(cell.protected_ds, ds, channel, cell_ops[t], config.threads);
        grid.rows.push_back(RsrRow{k, static_cast<std::int64_t>(p),
                                   config.fmr_targets[t], cell_ops[t].threshold, r.rsr,
                                   r.attacked, cell_seed});
      }
    }
  }
  return grid;
}

Embedding known_seed_attack(const Embedding& protected_v, const BlockPermutation& perm,
                            const ReconstructionChannel& channel,
                            const std::string& record_id, std::uint64_t record_index) {
  return channel.apply(unprotect(protected_v, perm), record_id, record_index);
}

nlohmann::ordered_json AttackReport::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = mode;
  if (!order.empty()) j["order"] = order;
  j["record"] = record_id;
  j["success"] = success;
  j["best_score"] = best_score;
  j["threshold"] = threshold;
  j["candidates_tried"] = candidates_tried;
  j["budget"] = budget;
  j["search_space_size"] = search_space_size;
  j["recovered_permutation"] =
      recovered ? recovered->to_json() : nlohmann::ordered_json(nullptr);
  if (seed) j["seed"] = *seed;
  return j;
}

AttackReport brute_force_attack(const Embedding& protected_v, const Embedding& reference,
                                const BlockPartition& part, double threshold,
                                std::uint64_t budget, AttackOrder order,
                                std::uint64_t seed, const ReconstructionChannel& channel,
                                const std::string& record_id, int threads) {
  if (protected_v.size() != part.dim || reference.size() != part.dim)
    fail(PEMIU_E_DIMENSION_MISMATCH,
         "brute_force_attack: embeddings do not match the partition");
  if (budget == 0)
    fail(PEMIU_E_INVALID_ARGUMENT, "brute_force_attack: budget must be positive");

  AttackReport report;
  report.mode = "brute-force";
  report.order = order == AttackOrder::Exhaustive ? "exhaustive" : "random";
  report.threshold = threshold;
  report.budget = budget;
  report.record_id = record_id;
  report.best_score = -1.0;
  if (order == AttackOrder::Random) report.seed = seed;

  const BigInt space = factorial(part.blocks);
  report.search_space_size = to_decimal(space);

  // Random draws repeat, so trying more candidates than N! is pure waste;
  // the exhaustive order runs dry on its own.
  std::uint64_t effective_budget = budget;
  if (order == AttackOrder::Random && space <= budget)
    effective_budget = space.convert_to<std::uint64_t>();

  const double reference_norm = norm(reference);
  ExhaustiveOrderEnumerator enumerator(part.blocks);

  constexpr std::size_t kBatch = 2048;
  std::vector<std::vector<std::uint32_t>> mappings;
  std::vector<double> batch_scores;
  std::vector<std::uint32_t> scratch;
  std::uint64_t next_index = 0;  // enumeration index of the next candidate

  while (next_index < effective_budget) {
    const std::size_t want = static_cast<std::size_t>(
        std::min<std::uint64_t>(kBatch, effective_budget - next_index));
    mappings.clear();
    if (order == AttackOrder::Exhaustive) {
      while (mappings.size() < want && enumerator.next(scratch)) mappings.push_back(scratch);
      if (mappings.empty()) break;  // search space exhausted below budget
    } else {
      mappings.resize(want);
    }

    const std::size_t got = order == AttackOrder::Exhaustive ? mappings.size() : want;
    batch_scores.assign(got, 0.0);
    parallel_for(got, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t b = begin; b < end; ++b) {
        const std::uint64_t index = next_index + b;
        if (order == AttackOrder::Random)
          mappings[b] = BlockPermutation::sample_uniform(
                            part, derive_seed(seed, kStreamAttack, index))
                            .mapping();
        BlockPermutation candidate(part, mappings[b]);
        Embedding recon = channel.apply(unprotect(protected_v, candidate), record_id, index);
        batch_scores[b] = cosine_from_dot(dot(recon, reference), norm(recon), reference_norm);
      }
    });

    // Sequential reduction: the smallest enumeration index that reaches the
    // threshold wins, whatever the worker schedule did.
    bool found = false;
    for (std::size_t b = 0; b < got; ++b) {
      if (batch_scores[b] > report.best_score) report.best_score = batch_scores[b];
      if (batch_scores[b] >= threshold) {
        report.success = true;
        report.candidates_tried = next_index + b + 1;
        report.recovered = BlockPermutation(part, mappings[b]);
        found = true;
        break;
      }
    }
    if (found) return report;
    next_index += got;
  }

  report.candidates_tried = next_index;
  return report;
}

namespace {

const DatasetRecord& require_record(const Dataset& ds, const std::string& id) {
  return ds.record(ds.index_of(id));
}

const DatasetRecord& require_original(const Dataset& originals, const std::string& id) {
  if (!originals.contains(id))
    fail(PEMIU_E_MISSING_ORIGINAL,
         "attack: record '" + id + "' has no original counterpart");
  return originals.record(originals.index_of(id));
}

}  // namespace

AttackReport known_seed_report(const Dataset& protected_ds, const Dataset& originals,
                               const std::string& record_id, const nlohmann::json& log,
                               double threshold, const ReconstructionChannel& channel) {
  const DatasetRecord& prot = require_record(protected_ds, record_id);
  const DatasetRecord& orig = require_original(originals, record_id);
  BlockPermutation perm = permutation_from_log(log, record_id);
  if (perm.partition().dim != protected_ds.dim())
    fail(PEMIU_E_PARTITION_MISMATCH,
         "attack: permutation log dimension does not match the protected dataset");

  Embedding recon = known_seed_attack(prot.values, perm, channel, record_id, 0);
  double score = cosine_similarity(recon, orig.values);

  AttackReport report;
  report.mode = "known-seed";
  report.record_id = record_id;
  report.threshold = threshold;
  report.best_score = score;
  report.success = score >= threshold;
  report.candidates_tried = 1;
  report.budget = 1;
  report.search_space_size = to_decimal(factorial(perm.partition().blocks));
  report.recovered = std::move(perm);
  return report;
}

AttackReport brute_force_report(const Dataset& protected_ds, const Dataset& originals,
                                const std::string& record_id, std::uint32_t block_size,
                                double threshold, const ReconstructionChannel& channel,
                                std::uint64_t budget, AttackOrder order, std::uint64_t seed,
                                int threads) {
  const DatasetRecord& prot = require_record(protected_ds, record_id);
  const DatasetRecord& orig = require_original(originals, record_id);
  const BlockPartition part = make_partition(protected_ds.dim(), block_size);
  return brute_force_attack(prot.values, orig.values, part, threshold, budget, order, seed,
                            channel, record_id, threads);
}

}  // namespace pemiu
