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

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "core/attack.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/protect.hpp"
#include "core/rng.hpp"
#include "core/scores.hpp"
#include "core/scoring.hpp"

using namespace pemiu;

namespace {

pemiu_status code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return PEMIU_OK;
}

Dataset tiny_dataset(std::vector<DatasetRecord> records, bool unit_norm = false) {
  std::uint32_t dim =
      records.empty() ? 0 : static_cast<std::uint32_t>(records.front().values.size());
  std::size_t count = records.size();
  nlohmann::ordered_json prov;
  prov["kind"] = "test";
  return Dataset(std::move(records), make_manifest("memory", dim, unit_norm, count, prov));
}

SynthSpec small_spec() {
  SynthSpec spec;
  spec.dim = 32;
  spec.n_identities = 12;
  spec.samples_per_identity = 2;
  spec.intra_sigma = 0.05;
  spec.attribute_offset = 0.4;
  spec.seed = 3;
  return spec;
}

// Three pairwise distinguishable K=2 blocks: every wrong block arrangement
// scores at most 0.8 against the original while the right one scores 1.0.
const Embedding kDistinct{1.0f, 0.0f, 0.0f, 1.0f, 0.5f, 0.5f};

OperatingPoint op_at(double threshold) {
  OperatingPoint op;
  op.threshold = threshold;
  return op;
}

}  // namespace

/* ---- rsr ---- */

TEST_CASE("rsr is 1.0 when the attacked set equals the originals") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  RsrResult r = rsr(ds, ds, ReconstructionChannel::identity(), op_at(0.999), 4);
  CHECK(r.attacked == ds.size());
  CHECK(r.accepted == ds.size());
  CHECK(r.rsr == 1.0);
}

TEST_CASE("rsr is 0.0 at a threshold above every cosine") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  double sentinel = std::nextafter(1.0, 2.0);
  RsrResult r = rsr(ds, ds, ReconstructionChannel::identity(), op_at(sentinel), 4);
  CHECK(r.accepted == 0);
  CHECK(r.rsr == 0.0);
}

TEST_CASE("rsr demands an original for every attacked id") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  DatasetRecord stray;
  stray.id = "stray";
  stray.identity = 999;
  stray.attribute = 0;
  stray.values = ds.record(0).values;
  Dataset attacked = tiny_dataset({stray}, true);
  CHECK(code_of([&] {
          rsr(attacked, ds, ReconstructionChannel::identity(), op_at(0.5), 1);
        }) == PEMIU_E_MISSING_ORIGINAL);
}

/* ---- default displacement preset ---- */

TEST_CASE("default displacement preset") {
  CHECK(default_p_preset(0) == std::vector<std::uint32_t>{0});
  CHECK(default_p_preset(1) == std::vector<std::uint32_t>{0});
  CHECK(default_p_preset(2) == std::vector<std::uint32_t>{2});
  CHECK(default_p_preset(4) == std::vector<std::uint32_t>{2, 3, 4});
  CHECK(default_p_preset(8) == std::vector<std::uint32_t>{2, 3, 4, 5, 6, 7, 8});
  CHECK(default_p_preset(14) ==
        std::vector<std::uint32_t>{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
  CHECK(default_p_preset(15) ==
        std::vector<std::uint32_t>{3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  CHECK(default_p_preset(16) ==
        std::vector<std::uint32_t>{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  std::vector<std::uint32_t> expect32;
  for (std::uint32_t p = 20; p <= 32; ++p) expect32.push_back(p);
  CHECK(default_p_preset(32) == expect32);
}

/* ---- rsr_sweep ---- */

TEST_CASE("rsr_sweep emits k x ascending-P x target rows with cell seeds") {
  Dataset ds = Dataset::generate(small_spec(), 4);
  SweepConfig cfg;
  cfg.k_list = {8, 16};  // dim 32: N = 4 and N = 2
  cfg.fmr_targets = {0.05, 0.2};
  cfg.seed = 77;
  cfg.threads = 4;
  RsrGrid grid = rsr_sweep(ds, cfg);

  // Presets: N=4 -> {2,3,4}, N=2 -> {2}; four cells, two targets each.
  REQUIRE(grid.rows.size() == 8);
  const std::uint32_t want_k[] = {8, 8, 8, 8, 8, 8, 16, 16};
  const std::int64_t want_p[] = {2, 2, 3, 3, 4, 4, 2, 2};
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    const RsrRow& row = grid.rows[i];
    CHECK(row.k == want_k[i]);
    CHECK(row.p == want_p[i]);
    CHECK(row.target_fmr == (i % 2 == 0 ? 0.05 : 0.2));
    CHECK(row.n_attacked == ds.size());
    CHECK(row.rsr >= 0.0);
    CHECK(row.rsr <= 1.0);
    std::uint64_t cell = (static_cast<std::uint64_t>(row.k) << 32) |
                         static_cast<std::uint64_t>(row.p);
    CHECK(row.seed == derive_seed(77, kStreamSweepCell, cell));
  }

  // Baseline calibration: one threshold per (K, target) shared by all cells.
  CHECK(grid.rows[0].threshold == grid.rows[2].threshold);
  CHECK(grid.rows[0].threshold == grid.rows[4].threshold);
  CHECK(grid.rows[1].threshold == grid.rows[3].threshold);
  CHECK(grid.rows[1].threshold == grid.rows[5].threshold);
}

TEST_CASE("rsr_sweep with P=0 and the identity channel recovers everything") {
  Dataset ds = Dataset::generate(small_spec(), 4);
  SweepConfig cfg;
  cfg.k_list = {16};
  cfg.p_list = std::vector<std::uint32_t>{0, 2};
  cfg.fmr_targets = {0.05};
  cfg.seed = 9;
  cfg.threads = 4;
  RsrGrid grid = rsr_sweep(ds, cfg);
  REQUIRE(grid.rows.size() == 2);
  CHECK(grid.rows[0].p == 0);
  CHECK(grid.rows[0].rsr == 1.0);
  CHECK(grid.rows[0].n_attacked == ds.size());
  CHECK(grid.rows[1].p == 2);
}

TEST_CASE("rsr_sweep skips explicit displacements above the block count") {
  Dataset ds = Dataset::generate(small_spec(), 4);
  SweepConfig cfg;
  cfg.k_list = {8, 16};
  cfg.p_list = std::vector<std::uint32_t>{2, 5};  // 5 > N for both K
  cfg.fmr_targets = {0.1};
  cfg.seed = 1;
  cfg.threads = 2;
  RsrGrid grid = rsr_sweep(ds, cfg);
  REQUIRE(grid.rows.size() == 2);
  CHECK(grid.rows[0].k == 8);
  CHECK(grid.rows[0].p == 2);
  CHECK(grid.rows[1].k == 16);
  CHECK(grid.rows[1].p == 2);
}

TEST_CASE("rsr_sweep per-identity rows carry P = -1 and the baseline seed") {
  Dataset ds = Dataset::generate(small_spec(), 4);
  SweepConfig cfg;
  cfg.k_list = {8};
  cfg.mode = SweepMode::PerIdentity;
  cfg.fmr_targets = {0.05, 0.2};
  cfg.seed = 21;
  cfg.threads = 4;
  RsrGrid grid = rsr_sweep(ds, cfg);
  REQUIRE(grid.rows.size() == 2);
  for (const RsrRow& row : grid.rows) {
    CHECK(row.k == 8);
    CHECK(row.p == -1);
    CHECK(row.n_attacked == ds.size());
    CHECK(row.seed == derive_seed(21, kStreamSweepCell, 8));
  }
}

TEST_CASE("rsr_sweep rejects bad configurations") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  SweepConfig base;
  base.k_list = {8};
  base.fmr_targets = {0.1};

  SweepConfig no_k = base;
  no_k.k_list.clear();
  CHECK(code_of([&] { rsr_sweep(ds, no_k); }) == PEMIU_E_INVALID_ARGUMENT);

  SweepConfig no_targets = base;
  no_targets.fmr_targets.clear();
  CHECK(code_of([&] { rsr_sweep(ds, no_targets); }) == PEMIU_E_INVALID_ARGUMENT);

  SweepConfig p_one = base;
  p_one.p_list = std::vector<std::uint32_t>{1};
  CHECK(code_of([&] { rsr_sweep(ds, p_one); }) == PEMIU_E_INVALID_DISPLACEMENT);

  SweepConfig per_identity_p = base;
  per_identity_p.mode = SweepMode::PerIdentity;
  per_identity_p.p_list = std::vector<std::uint32_t>{2};
  CHECK(code_of([&] { rsr_sweep(ds, per_identity_p); }) == PEMIU_E_INVALID_ARGUMENT);
}

TEST_CASE("rsr_sweep rows are identical across thread counts") {
  Dataset ds = Dataset::generate(small_spec(), 4);
  SweepConfig cfg;
  cfg.k_list = {8, 16};
  cfg.fmr_targets = {0.05, 0.2};
  cfg.seed = 4242;
  cfg.per_cell_calibration = true;
  cfg.threads = 1;
  RsrGrid one = rsr_sweep(ds, cfg);
  cfg.threads = 8;
  RsrGrid eight = rsr_sweep(ds, cfg);
  REQUIRE(one.rows.size() == eight.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].k == eight.rows[i].k);
    CHECK(one.rows[i].p == eight.rows[i].p);
    CHECK(one.rows[i].target_fmr == eight.rows[i].target_fmr);
    CHECK(one.rows[i].threshold == eight.rows[i].threshold);
    CHECK(one.rows[i].rsr == eight.rows[i].rsr);
    CHECK(one.rows[i].n_attacked == eight.rows[i].n_attacked);
    CHECK(one.rows[i].seed == eight.rows[i].seed);
  }
}

TEST_CASE("per-identity shuffles at K=16 defeat the reference matcher") {
  SynthSpec spec;
  spec.dim = 512;
  spec.n_identities = 500;
  spec.samples_per_identity = 2;
  spec.intra_sigma = 0.1;
  spec.attribute_offset = 0.5;
  spec.seed = 7;
  Dataset ds = Dataset::generate(spec, 8);

  SweepConfig cfg;
  cfg.k_list = {16};
  cfg.mode = SweepMode::PerIdentity;
  cfg.fmr_targets = {0.001};
  cfg.seed = 7;
  cfg.threads = 8;
  RsrGrid grid = rsr_sweep(ds, cfg);
  REQUIRE(grid.rows.size() == 1);
  CHECK(grid.rows[0].p == -1);
  // Protected templates stop matching their originals at the 0.1% FMR point.
  CHECK(grid.rows[0].rsr <= 0.05);
}

/* ---- known-seed attack ---- */

TEST_CASE("known_seed_attack inverts the protection bit for bit") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation perm(part, {1, 2, 0});
  Embedding prot = protect(kDistinct, perm);
  Embedding rec = known_seed_attack(prot, perm, ReconstructionChannel::identity(), "r", 0);
  CHECK(rec == kDistinct);
}

TEST_CASE("known_seed_report recovers the logged permutation in one try") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  ProtectResult res = protect_dataset(ds, 8, ProtectMode::PerIdentity, std::nullopt, 11, 2);
  const std::string id = ds.record(5).id;

  AttackReport rep = known_seed_report(res.protected_ds, ds, id, res.permutation_log,
                                       0.999, ReconstructionChannel::identity());
  CHECK(rep.mode == "known-seed");
  CHECK(rep.order.empty());
  CHECK(rep.record_id == id);
  CHECK(rep.success);
  CHECK(rep.best_score >= 0.999);
  CHECK(rep.threshold == 0.999);
  CHECK(rep.candidates_tried == 1);
  CHECK(rep.budget == 1);
  CHECK(rep.search_space_size == "24");  // 4! block arrangements
  REQUIRE(rep.recovered.has_value());
  CHECK(*rep.recovered == permutation_from_log(res.permutation_log, id));
  CHECK_FALSE(rep.seed.has_value());

  nlohmann::ordered_json j = rep.to_json();
  CHECK_FALSE(j.contains("order"));
  CHECK_FALSE(j.contains("seed"));
  CHECK(j["mode"] == "known-seed");
  CHECK(j["record"] == id);
  CHECK(j["success"] == true);
  CHECK(j["candidates_tried"] == 1);
  CHECK(j["search_space_size"] == "24");
  // Same serialization as the permutation log, so it can be parsed back.
  CHECK(j["recovered_permutation"] == rep.recovered->to_json());
}

TEST_CASE("known_seed_report error paths") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  ProtectResult res = protect_dataset(ds, 8, ProtectMode::PerIdentity, std::nullopt, 11, 2);
  const std::string id = ds.record(0).id;
  ReconstructionChannel ch = ReconstructionChannel::identity();

  CHECK(code_of([&] {
          known_seed_report(res.protected_ds, ds, "no-such-id", res.permutation_log, 0.9, ch);
        }) == PEMIU_E_UNKNOWN_RECORD);

  // Log written for a different partition width.
  SynthSpec other = small_spec();
  other.dim = 64;
  Dataset wide = Dataset::generate(other, 2);
  ProtectResult wide_res =
      protect_dataset(wide, 8, ProtectMode::PerIdentity, std::nullopt, 11, 2);
  CHECK(code_of([&] {
          known_seed_report(res.protected_ds, ds, id, wide_res.permutation_log, 0.9, ch);
        }) == PEMIU_E_PARTITION_MISMATCH);

  // Originals that lack the attacked id.
  std::vector<DatasetRecord> kept;
  for (std::size_t i = 1; i < ds.size(); ++i) kept.push_back(ds.record(i));
  Dataset pruned = tiny_dataset(std::move(kept), true);
  CHECK(code_of([&] {
          known_seed_report(res.protected_ds, pruned, id, res.permutation_log, 0.9, ch);
        }) == PEMIU_E_MISSING_ORIGINAL);
}

/* ---- brute-force attack ---- */

TEST_CASE("exhaustive brute force finds the permutation at its enumeration rank") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation truth(part, {1, 2, 0});  // rank 4 in the frozen order
  Embedding prot = protect(kDistinct, truth);

  AttackReport rep =
      brute_force_attack(prot, kDistinct, part, 0.999, 100, AttackOrder::Exhaustive, 0,
                         ReconstructionChannel::identity(), "rec", 2);
  CHECK(rep.mode == "brute-force");
  CHECK(rep.order == "exhaustive");
  CHECK(rep.success);
  CHECK(rep.best_score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.candidates_tried == 5);
  CHECK(rep.budget == 100);
  CHECK(rep.search_space_size == "6");
  REQUIRE(rep.recovered.has_value());
  CHECK(rep.recovered->mapping() == std::vector<std::uint32_t>{1, 2, 0});
  CHECK_FALSE(rep.seed.has_value());
  CHECK_FALSE(rep.to_json().contains("seed"));
  CHECK(rep.to_json()["order"] == "exhaustive");
}

TEST_CASE("brute force stops at the budget and reports the best miss") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation truth(part, {1, 2, 0});
  Embedding prot = protect(kDistinct, truth);

  AttackReport rep =
      brute_force_attack(prot, kDistinct, part, 0.999, 3, AttackOrder::Exhaustive, 0,
                         ReconstructionChannel::identity(), "rec", 2);
  CHECK_FALSE(rep.success);
  CHECK(rep.candidates_tried == 3);
  // First three candidates score 0.4, 0.2, 0.8 against the original.
  CHECK(rep.best_score == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_FALSE(rep.recovered.has_value());
  CHECK(rep.to_json()["recovered_permutation"].is_null());
}

TEST_CASE("exhaustive brute force that never matches tries the whole space") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation truth(part, {1, 2, 0});
  Embedding prot = protect(kDistinct, truth);
  // Every block arrangement scores 1.5/sqrt(7.5) against this reference.
  Embedding unrelated{1.0f, 0.0f, 1.0f, 0.0f, 1.0f, 0.0f};

  AttackReport rep =
      brute_force_attack(prot, unrelated, part, 0.999, 1000, AttackOrder::Exhaustive, 0,
                         ReconstructionChannel::identity(), "rec", 4);
  CHECK_FALSE(rep.success);
  CHECK(rep.candidates_tried == 6);
  CHECK(rep.best_score == doctest::Approx(1.5 / std::sqrt(7.5)).epsilon(1e-12));
}

TEST_CASE("random-order brute force matches an independent replay of its draws") {
  BlockPartition part = make_partition(6, 2);
  std::vector<std::uint32_t> truth_map{1, 2, 0};
  BlockPermutation truth(part, truth_map);
  Embedding prot = protect(kDistinct, truth);

  for (std::uint64_t seed : {99ULL, 1234ULL, 77777ULL}) {
    AttackReport rep =
        brute_force_attack(prot, kDistinct, part, 0.999, 1000, AttackOrder::Random, seed,
                           ReconstructionChannel::identity(), "rec", 3);
    REQUIRE(rep.seed.has_value());
    CHECK(*rep.seed == seed);
    CHECK(rep.order == "random");
    CHECK(rep.to_json()["seed"] == seed);

    // Budget collapses to the space size; draws are i.i.d. so success only
    // happens when some draw hits the true mapping.
    std::optional<std::uint64_t> hit;
    for (std::uint64_t i = 0; i < 6; ++i) {
      BlockPermutation draw =
          BlockPermutation::sample_uniform(part, derive_seed(seed, kStreamAttack, i));
      if (draw.mapping() == truth_map) {
        hit = i;
        break;
      }
    }
    if (hit) {
      CHECK(rep.success);
      CHECK(rep.candidates_tried == *hit + 1);
      REQUIRE(rep.recovered.has_value());
      CHECK(rep.recovered->mapping() == truth_map);
    } else {
      CHECK_FALSE(rep.success);
      CHECK(rep.candidates_tried == 6);
    }
  }
}

TEST_CASE("random-order brute force respects an explicit budget") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation truth(part, {1, 2, 0});
  Embedding prot = protect(kDistinct, truth);
  AttackReport rep =
      brute_force_attack(prot, kDistinct, part, 0.999, 2, AttackOrder::Random, 5,
                         ReconstructionChannel::identity(), "rec", 1);
  CHECK(rep.candidates_tried <= 2);
  CHECK(rep.budget == 2);
}

TEST_CASE("brute force rejects bad inputs") {
  BlockPartition part = make_partition(6, 2);
  BlockPermutation truth(part, {1, 2, 0});
  Embedding prot = protect(kDistinct, truth);
  ReconstructionChannel ch = ReconstructionChannel::identity();

  Embedding short_ref{1.0f, 0.0f};
  CHECK(code_of([&] {
          brute_force_attack(prot, short_ref, part, 0.9, 10, AttackOrder::Exhaustive, 0, ch,
                             "rec", 1);
        }) == PEMIU_E_DIMENSION_MISMATCH);
  CHECK(code_of([&] {
          brute_force_attack(prot, kDistinct, part, 0.9, 0, AttackOrder::Exhaustive, 0, ch,
                             "rec", 1);
        }) == PEMIU_E_INVALID_ARGUMENT);
}

TEST_CASE("brute-force reports are identical across thread counts") {
  SynthSpec spec = small_spec();
  Dataset ds = Dataset::generate(spec, 2);
  ProtectResult res = protect_dataset(ds, 8, ProtectMode::PerRecord, std::nullopt, 13, 2);
  const std::string id = ds.record(3).id;
  ReconstructionChannel ch = ReconstructionChannel::identity();

  AttackReport one =
      brute_force_report(res.protected_ds, ds, id, 8, 0.999, ch, 1000,
                         AttackOrder::Exhaustive, 0, 1);
  AttackReport four =
      brute_force_report(res.protected_ds, ds, id, 8, 0.999, ch, 1000,
                         AttackOrder::Exhaustive, 0, 4);
  CHECK(one.to_json().dump() == four.to_json().dump());
  CHECK(one.success);
  CHECK(one.search_space_size == "24");
  CHECK(one.record_id == id);

  // Same determinism when nothing in the space reaches the threshold.
  AttackReport miss1 =
      brute_force_report(res.protected_ds, ds, id, 8, std::nextafter(1.0, 2.0), ch, 1000,
                         AttackOrder::Exhaustive, 0, 1);
  AttackReport miss4 =
      brute_force_report(res.protected_ds, ds, id, 8, std::nextafter(1.0, 2.0), ch, 1000,
                         AttackOrder::Exhaustive, 0, 4);
  CHECK(miss1.to_json().dump() == miss4.to_json().dump());
  CHECK_FALSE(miss1.success);
  CHECK(miss1.candidates_tried == 24);
}

TEST_CASE("brute_force_report validates the record and original ids") {
  Dataset ds = Dataset::generate(small_spec(), 2);
  ProtectResult res = protect_dataset(ds, 8, ProtectMode::PerRecord, std::nullopt, 13, 2);
  ReconstructionChannel ch = ReconstructionChannel::identity();
  CHECK(code_of([&] {
          brute_force_report(res.protected_ds, ds, "missing", 8, 0.9, ch, 10,
                             AttackOrder::Exhaustive, 0, 1);
        }) == PEMIU_E_UNKNOWN_RECORD);

  std::vector<DatasetRecord> kept;
  for (std::size_t i = 1; i < ds.size(); ++i) kept.push_back(ds.record(i));
  Dataset pruned = tiny_dataset(std::move(kept), true);
  CHECK(code_of([&] {
          brute_force_report(res.protected_ds, pruned, ds.record(0).id, 8, 0.9, ch, 10,
                             AttackOrder::Exhaustive, 0, 1);
        }) == PEMIU_E_MISSING_ORIGINAL);
}
