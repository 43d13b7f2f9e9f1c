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

// C boundary: opaque handles around the core types, exceptions mapped to
// status codes, strings copied out so the library owns nothing the caller
// sees.

#include "pemiu.h"

#include <cstring>
#include <new>
#include <string>

#include "core/artifacts.hpp"
#include "core/attack.hpp"
#include "core/channel.hpp"
#include "core/counting.hpp"
#include "core/dataset.hpp"
#include "core/embedding.hpp"
#include "core/error.hpp"
#include "core/permutation.hpp"
#include "core/probe.hpp"
#include "core/protect.hpp"
#include "core/rng.hpp"
#include "core/scores.hpp"
#include "core/scoring.hpp"
#include "core/textio.hpp"
#include "core/version.hpp"

struct pemiu_perm_s {
  pemiu::BlockPermutation perm;
};
struct pemiu_dataset_s {
  pemiu::Dataset ds;
};
struct pemiu_scores_s {
  pemiu::ScoreSet scores;
};
struct pemiu_probe_s {
  pemiu::ProbeModel model;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
pemiu_status guarded(F&& fn) noexcept {
  try {
    fn();
    return PEMIU_OK;
  } catch (const pemiu::Error& e) {
    g_last_error = e.what();
    return e.code();
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PEMIU_E_MALFORMED_FILE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PEMIU_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PEMIU_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) pemiu::fail(PEMIU_E_INVALID_ARGUMENT, std::string("null or invalid ") + what);
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

pemiu::Embedding to_embedding(const float* values, size_t len) {
  require(values != nullptr, "embedding pointer");
  pemiu::Embedding v(values, values + len);
  pemiu::validate_finite(v, "embedding");
  return v;
}

pemiu::ReconstructionChannel make_channel(const char* spec, std::uint64_t seed,
                                          bool renormalize) {
  return pemiu::ReconstructionChannel::parse(spec ? spec : "identity",
                                             pemiu::derive_seed(seed, pemiu::kStreamChannel, 0),
                                             renormalize);
}

}  // namespace

extern "C" {

const char* pemiu_version(void) { return pemiu::kVersion; }

const char* pemiu_prng_id(void) { return pemiu::kPrngId; }

const char* pemiu_status_name(pemiu_status status) {
  switch (status) {
    case PEMIU_OK: return "ok";
    case PEMIU_E_INVALID_ARGUMENT: return "invalid argument";
    case PEMIU_E_ZERO_VECTOR: return "zero vector";
    case PEMIU_E_DIMENSION_MISMATCH: return "dimension mismatch";
    case PEMIU_E_INDIVISIBLE_BLOCK_SIZE: return "indivisible block size";
    case PEMIU_E_INVALID_DISPLACEMENT: return "invalid displacement";
    case PEMIU_E_PARTITION_MISMATCH: return "partition mismatch";
    case PEMIU_E_EMPTY_SCORE_LIST: return "empty score list";
    case PEMIU_E_UNKNOWN_RECORD: return "unknown record";
    case PEMIU_E_LABEL_CONTRADICTION: return "label contradiction";
    case PEMIU_E_SINGLE_CLASS: return "single class";
    case PEMIU_E_TOO_FEW_EXAMPLES: return "too few examples";
    case PEMIU_E_MISSING_ORIGINAL: return "missing original";
    case PEMIU_E_CHANNEL_GAP: return "channel gap";
    case PEMIU_E_MALFORMED_FILE: return "malformed file";
    case PEMIU_E_DUPLICATE_RECORD_ID: return "duplicate record id";
    case PEMIU_E_INVALID_SPEC: return "invalid spec";
    case PEMIU_E_IO: return "i/o error";
    case PEMIU_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pemiu_last_error(void) { return g_last_error.c_str(); }

void pemiu_string_free(char* s) { delete[] s; }

/* ---- embeddings ---- */

pemiu_status pemiu_normalize(float* values, size_t len) {
  return guarded([&] {
    require(values != nullptr, "embedding pointer");
    pemiu::Embedding v(values, values + len);
    pemiu::Embedding out = pemiu::normalized(v);
    std::memcpy(values, out.data(), len * sizeof(float));
  });
}

pemiu_status pemiu_cosine_similarity(const float* a, const float* b, size_t len,
                                     double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer");
    *out = pemiu::cosine_similarity(to_embedding(a, len), to_embedding(b, len));
  });
}

pemiu_status pemiu_block_count(uint32_t dim, uint32_t block_size, uint32_t* out_blocks) {
  return guarded([&] {
    require(out_blocks != nullptr, "output pointer");
    *out_blocks = pemiu::make_partition(dim, block_size).blocks;
  });
}

/* ---- block permutations ---- */

pemiu_status pemiu_perm_identity(uint32_t dim, uint32_t block_size, pemiu_perm** out) {
  return guarded([&] {
    require(out != nullptr, "output handle");
    auto part = pemiu::make_partition(dim, block_size);
    *out = new pemiu_perm_s{pemiu::BlockPermutation::identity(part)};
  });
}

pemiu_status pemiu_perm_sample_uniform(uint32_t dim, uint32_t block_size, uint64_t seed,
                                       pemiu_perm** out) {
  return guarded([&] {
    require(out != nullptr, "output handle");
    auto part = pemiu::make_partition(dim, block_size);
    *out = new pemiu_perm_s{pemiu::BlockPermutation::sample_uniform(part, seed)};
  });
}

pemiu_status pemiu_perm_sample_displacement(uint32_t dim, uint32_t block_size,
                                            uint32_t displacement, uint64_t seed,
                                            pemiu_perm** out) {
  return guarded([&] {
    require(out != nullptr, "output handle");
    auto part = pemiu::make_partition(dim, block_size);
    *out = new pemiu_perm_s{
        pemiu::BlockPermutation::sample_with_displacement(part, displacement, seed)};
  });
}

pemiu_status pemiu_perm_from_json(const char* json_text, pemiu_perm** out) {
  return guarded([&] {
    require(json_text != nullptr, "json text");
    require(out != nullptr, "output handle");
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded())
      pemiu::fail(PEMIU_E_MALFORMED_FILE, "permutation: not valid JSON");
    *out = new pemiu_perm_s{pemiu::BlockPermutation::from_json(j)};
  });
}

pemiu_status pemiu_perm_to_json(const pemiu_perm* perm, char** out_json) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out_json != nullptr, "output pointer");
    *out_json = copy_out(perm->perm.to_json().dump());
  });
}

pemiu_status pemiu_perm_invert(const pemiu_perm* perm, pemiu_perm** out) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output handle");
    *out = new pemiu_perm_s{perm->perm.inverted()};
  });
}

pemiu_status pemiu_perm_compose(const pemiu_perm* outer, const pemiu_perm* inner,
                                pemiu_perm** out) {
  return guarded([&] {
    require(outer != nullptr && inner != nullptr, "permutation handle");
    require(out != nullptr, "output handle");
    *out = new pemiu_perm_s{pemiu::compose(outer->perm, inner->perm)};
  });
}

pemiu_status pemiu_perm_block_count(const pemiu_perm* perm, uint32_t* out) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output pointer");
    *out = perm->perm.partition().blocks;
  });
}

pemiu_status pemiu_perm_displacement(const pemiu_perm* perm, uint32_t* out) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output pointer");
    *out = perm->perm.displacement();
  });
}

pemiu_status pemiu_perm_mapping(const pemiu_perm* perm, uint32_t* out, size_t capacity) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output pointer");
    const auto& mapping = perm->perm.mapping();
    if (capacity < mapping.size())
      pemiu::fail(PEMIU_E_INVALID_ARGUMENT,
                  "mapping buffer holds " + std::to_string(capacity) + ", need " +
                      std::to_string(mapping.size()));
    std::memcpy(out, mapping.data(), mapping.size() * sizeof(uint32_t));
  });
}

pemiu_status pemiu_protect(const pemiu_perm* perm, const float* in, size_t len,
                           float* out) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output pointer");
    pemiu::Embedding result = pemiu::protect(to_embedding(in, len), perm->perm);
    std::memcpy(out, result.data(), result.size() * sizeof(float));
  });
}

pemiu_status pemiu_unprotect(const pemiu_perm* perm, const float* in, size_t len,
                             float* out) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out != nullptr, "output pointer");
    pemiu::Embedding result = pemiu::unprotect(to_embedding(in, len), perm->perm);
    std::memcpy(out, result.data(), result.size() * sizeof(float));
  });
}

void pemiu_perm_free(pemiu_perm* perm) { delete perm; }

/* ---- counting ---- */

pemiu_status pemiu_count_with_displacement(uint32_t n_blocks, uint32_t displacement,
                                           char** out_decimal) {
  return guarded([&] {
    require(out_decimal != nullptr, "output pointer");
    *out_decimal =
        copy_out(pemiu::to_decimal(pemiu::count_with_displacement(n_blocks, displacement)));
  });
}

pemiu_status pemiu_permutation_space_size(uint32_t n_blocks, char** out_decimal) {
  return guarded([&] {
    require(out_decimal != nullptr, "output pointer");
    *out_decimal = copy_out(pemiu::to_decimal(pemiu::factorial(n_blocks)));
  });
}

/* ---- datasets ---- */

pemiu_status pemiu_dataset_generate(uint32_t dim, uint32_t n_identities,
                                    uint32_t samples_per_identity, double intra_sigma,
                                    double attribute_offset, int unit_norm, uint64_t seed,
                                    int threads, pemiu_dataset** out) {
  return guarded([&] {
    require(out != nullptr, "output handle");
    pemiu::SynthSpec spec;
    spec.dim = dim;
    spec.n_identities = n_identities;
    spec.samples_per_identity = samples_per_identity;
    spec.intra_sigma = intra_sigma;
    spec.attribute_offset = attribute_offset;
    spec.unit_norm = unit_norm != 0;
    spec.seed = seed;
    *out = new pemiu_dataset_s{pemiu::Dataset::generate(spec, threads)};
  });
}

pemiu_status pemiu_dataset_read(const char* path, pemiu_dataset** out) {
  return guarded([&] {
    require(path != nullptr, "path");
    require(out != nullptr, "output handle");
    *out = new pemiu_dataset_s{pemiu::read_dataset(path)};
  });
}

pemiu_status pemiu_dataset_write(const pemiu_dataset* ds, const char* path,
                                 pemiu_dataset_format format) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(path != nullptr, "path");
    pemiu::write_dataset(ds->ds, path,
                         format == PEMIU_FORMAT_CSV ? pemiu::DatasetFormat::Csv
                                                    : pemiu::DatasetFormat::Binary);
  });
}

pemiu_status pemiu_dataset_dim(const pemiu_dataset* ds, uint32_t* out) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out != nullptr, "output pointer");
    *out = ds->ds.dim();
  });
}

pemiu_status pemiu_dataset_size(const pemiu_dataset* ds, size_t* out) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out != nullptr, "output pointer");
    *out = ds->ds.size();
  });
}

pemiu_status pemiu_dataset_record_id(const pemiu_dataset* ds, size_t index, char** out_id) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out_id != nullptr, "output pointer");
    if (index >= ds->ds.size())
      pemiu::fail(PEMIU_E_INVALID_ARGUMENT, "record index out of range");
    *out_id = copy_out(ds->ds.record(index).id);
  });
}

pemiu_status pemiu_dataset_record_labels(const pemiu_dataset* ds, size_t index,
                                         uint32_t* out_identity, uint8_t* out_attribute) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    if (index >= ds->ds.size())
      pemiu::fail(PEMIU_E_INVALID_ARGUMENT, "record index out of range");
    if (out_identity) *out_identity = ds->ds.record(index).identity;
    if (out_attribute) *out_attribute = ds->ds.record(index).attribute;
  });
}

pemiu_status pemiu_dataset_record_values(const pemiu_dataset* ds, size_t index, float* out,
                                         size_t capacity) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out != nullptr, "output pointer");
    if (index >= ds->ds.size())
      pemiu::fail(PEMIU_E_INVALID_ARGUMENT, "record index out of range");
    const pemiu::Embedding& v = ds->ds.record(index).values;
    if (capacity < v.size())
      pemiu::fail(PEMIU_E_INVALID_ARGUMENT,
                  "value buffer holds " + std::to_string(capacity) + ", need " +
                      std::to_string(v.size()));
    std::memcpy(out, v.data(), v.size() * sizeof(float));
  });
}

pemiu_status pemiu_dataset_protect(const pemiu_dataset* ds, uint32_t block_size,
                                   pemiu_protect_mode mode, int32_t displacement,
                                   uint64_t seed, int threads,
                                   pemiu_dataset** out_protected, char** out_log_json) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out_protected != nullptr, "output handle");
    pemiu::ProtectMode m = mode == PEMIU_PROTECT_PER_IDENTITY ? pemiu::ProtectMode::PerIdentity
                           : mode == PEMIU_PROTECT_PER_RECORD ? pemiu::ProtectMode::PerRecord
                                                              : pemiu::ProtectMode::Fixed;
    std::optional<std::uint32_t> p;
    if (displacement >= 0) p = static_cast<std::uint32_t>(displacement);
    pemiu::ProtectResult result =
        pemiu::protect_dataset(ds->ds, block_size, m, p, seed, threads);
    *out_protected = new pemiu_dataset_s{std::move(result.protected_ds)};
    if (out_log_json) *out_log_json = copy_out(result.permutation_log.dump(2));
  });
}

void pemiu_dataset_free(pemiu_dataset* ds) { delete ds; }

/* ---- scores and metrics ---- */

pemiu_status pemiu_scores_create(const double* mated, size_t n_mated,
                                 const double* non_mated, size_t n_non_mated,
                                 const char* label, pemiu_scores** out) {
  return guarded([&] {
    require(out != nullptr, "output handle");
    require(mated != nullptr || n_mated == 0, "mated scores");
    require(non_mated != nullptr || n_non_mated == 0, "non-mated scores");
    pemiu::ScoreSet s;
    s.mated.assign(mated, mated + n_mated);
    s.non_mated.assign(non_mated, non_mated + n_non_mated);
    s.label = label ? label : "";
    *out = new pemiu_scores_s{std::move(s)};
  });
}

pemiu_status pemiu_score_protocol(const pemiu_dataset* ds, const char* pairing_path,
                                  int threads, pemiu_scores** out) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out != nullptr, "output handle");
    pemiu::ScoreSet s = pairing_path
                            ? pemiu::score_protocol(ds->ds, pemiu::load_pairing(pairing_path),
                                                    threads)
                            : pemiu::score_all_pairs(ds->ds, threads);
    *out = new pemiu_scores_s{std::move(s)};
  });
}

pemiu_status pemiu_scores_counts(const pemiu_scores* s, size_t* out_mated,
                                 size_t* out_non_mated) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    if (out_mated) *out_mated = s->scores.mated.size();
    if (out_non_mated) *out_non_mated = s->scores.non_mated.size();
  });
}

pemiu_status pemiu_fmr_at(const pemiu_scores* s, double threshold, double* out) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    require(out != nullptr, "output pointer");
    *out = pemiu::fmr_at(s->scores, threshold);
  });
}

pemiu_status pemiu_fnmr_at(const pemiu_scores* s, double threshold, double* out) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    require(out != nullptr, "output pointer");
    *out = pemiu::fnmr_at(s->scores, threshold);
  });
}

pemiu_status pemiu_threshold_at_fmr(const pemiu_scores* s, double target_fmr,
                                    double* out_threshold, double* out_fmr,
                                    double* out_fnmr) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    pemiu::OperatingPoint op = pemiu::threshold_at_fmr(s->scores, target_fmr);
    if (out_threshold) *out_threshold = op.threshold;
    if (out_fmr) *out_fmr = op.fmr;
    if (out_fnmr) *out_fnmr = op.fnmr;
  });
}

pemiu_status pemiu_eer(const pemiu_scores* s, double* out_eer, double* out_threshold) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    pemiu::EerResult r = pemiu::eer(s->scores);
    if (out_eer) *out_eer = r.eer;
    if (out_threshold) *out_threshold = r.threshold;
  });
}

pemiu_status pemiu_write_det_csv(const pemiu_scores* s, const char* path) {
  return guarded([&] {
    require(s != nullptr, "scores handle");
    require(path != nullptr, "path");
    pemiu::RunMeta meta;
    meta.config = "det label=" + s->scores.label;
    pemiu::write_det_csv(pemiu::det_curve(s->scores), meta, path);
  });
}

void pemiu_scores_free(pemiu_scores* s) { delete s; }

/* ---- experiments ---- */

pemiu_status pemiu_evaluate(const pemiu_dataset* ds, const char* pairing_path,
                            const double* fmr_targets, size_t n_targets, const char* label,
                            const char* det_csv_path, int threads, char** out_ops_json) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(fmr_targets != nullptr || n_targets == 0, "FMR targets");

    pemiu::ScoreSet scores =
        pairing_path
            ? pemiu::score_protocol(ds->ds, pemiu::load_pairing(pairing_path), threads)
            : pemiu::score_all_pairs(ds->ds, threads);
    const std::string name = label ? label : "dataset";
    scores.label = name;

    pemiu::EerResult e = pemiu::eer(scores);
    std::vector<pemiu::OperatingPoint> ops;
    std::string targets_text;
    for (size_t i = 0; i < n_targets; ++i) {
      ops.push_back(pemiu::threshold_at_fmr(scores, fmr_targets[i]));
      if (i) targets_text += ',';
      targets_text += pemiu::fmt_double(fmr_targets[i]);
    }

    pemiu::RunMeta meta;
    meta.config = "evaluate label=" + name +
                  " pairing=" + (pairing_path ? pairing_path : "all-pairs") +
                  " targets=" + targets_text;
    if (det_csv_path) pemiu::write_det_csv(pemiu::det_curve(scores), meta, det_csv_path);
    if (out_ops_json)
      *out_ops_json = copy_out(pemiu::evaluation_json(name, e, ops, meta).dump(2));
  });
}

pemiu_status pemiu_rsr_sweep(const pemiu_dataset* ds, const uint32_t* k_list, size_t n_k,
                             const uint32_t* p_list, size_t n_p, pemiu_sweep_mode mode,
                             const char* channel_spec, const double* fmr_targets,
                             size_t n_targets, int per_cell_calibration, uint64_t seed,
                             int threads, const char* out_csv_path) {
  return guarded([&] {
    require(ds != nullptr, "dataset handle");
    require(out_csv_path != nullptr, "output path");

    pemiu::SweepConfig config;
    if (k_list && n_k) config.k_list.assign(k_list, k_list + n_k);
    if (p_list && n_p) config.p_list = std::vector<uint32_t>(p_list, p_list + n_p);
    config.mode = mode == PEMIU_SWEEP_PER_IDENTITY ? pemiu::SweepMode::PerIdentity
                                                   : pemiu::SweepMode::FixedDisplacement;
    if (channel_spec) config.channel_spec = channel_spec;
    if (fmr_targets && n_targets)
      config.fmr_targets.assign(fmr_targets, fmr_targets + n_targets);
    config.per_cell_calibration = per_cell_calibration != 0;
    config.seed = seed;
    config.threads = threads;

    pemiu::RsrGrid grid = pemiu::rsr_sweep(ds->ds, config);

    std::string k_text, p_text, t_text;
    for (size_t i = 0; i < config.k_list.size(); ++i)
      k_text += (i ? "," : "") + std::to_string(config.k_list[i]);
    if (config.p_list)
      for (size_t i = 0; i < config.p_list->size(); ++i)
        p_text += (i ? "," : "") + std::to_string((*config.p_list)[i]);
    else
      p_text = "preset";
    for (size_t i = 0; i < config.fmr_targets.size(); ++i)
      t_text += (i ? "," : "") + pemiu::fmt_double(config.fmr_targets[i]);

    pemiu::RunMeta meta;
    meta.seed = seed;
    meta.config =
        "rsr-sweep k=" + k_text + " p=" + p_text +
        " mode=" + (config.mode == pemiu::SweepMode::PerIdentity ? "per-identity" : "fixed") +
        " channel=" + config.channel_spec + " targets=" + t_text +
        " per_cell_calibration=" + (config.per_cell_calibration ? "1" : "0");
    pemiu::write_rsr_grid_csv(grid, meta, out_csv_path);
  });
}

pemiu_status pemiu_known_seed_attack(const pemiu_perm* perm, const float* protected_values,
                                     size_t len, float* out_reconstructed) {
  return guarded([&] {
    require(perm != nullptr, "permutation handle");
    require(out_reconstructed != nullptr, "output pointer");
    pemiu::Embedding result =
        pemiu::unprotect(to_embedding(protected_values, len), perm->perm);
    std::memcpy(out_reconstructed, result.data(), result.size() * sizeof(float));
  });
}

pemiu_status pemiu_brute_force_attack(const float* protected_values, const float* reference,
                                      size_t len, uint32_t block_size, double threshold,
                                      const char* channel_spec, const char* record_id,
                                      uint64_t budget, pemiu_attack_order order,
                                      uint64_t seed, int threads, char** out_report_json) {
  return guarded([&] {
    require(out_report_json != nullptr, "output pointer");
    pemiu::BlockPartition part =
        pemiu::make_partition(static_cast<uint32_t>(len), block_size);
    pemiu::ReconstructionChannel channel = make_channel(channel_spec, seed, false);
    pemiu::AttackReport report = pemiu::brute_force_attack(
        to_embedding(protected_values, len), to_embedding(reference, len), part, threshold,
        budget, order == PEMIU_ORDER_RANDOM ? pemiu::AttackOrder::Random
                                            : pemiu::AttackOrder::Exhaustive,
        seed, channel, record_id ? record_id : "", threads);

    pemiu::RunMeta meta;
    if (order == PEMIU_ORDER_RANDOM) meta.seed = seed;
    meta.config = "brute-force k=" + std::to_string(block_size) +
                  " threshold=" + pemiu::fmt_double(threshold) +
                  " budget=" + std::to_string(budget) + " order=" + report.order +
                  " channel=" + channel.describe();
    *out_report_json = copy_out(pemiu::attack_report_json(report, meta).dump(2));
  });
}

pemiu_status pemiu_attack_seed(const pemiu_dataset* protected_ds,
                               const pemiu_dataset* originals, const char* record_id,
                               pemiu_attack_mode mode, const char* log_json_path,
                               uint32_t block_size, double threshold,
                               const char* channel_spec, uint64_t budget,
                               pemiu_attack_order order, uint64_t seed, int threads,
                               char** out_report_json) {
  return guarded([&] {
    require(protected_ds != nullptr, "protected dataset handle");
    require(originals != nullptr, "originals dataset handle");
    require(record_id != nullptr, "record id");
    require(out_report_json != nullptr, "output pointer");

    pemiu::ReconstructionChannel channel =
        make_channel(channel_spec, seed, originals->ds.unit_norm());
    pemiu::AttackReport report;
    pemiu::RunMeta meta;

    if (mode == PEMIU_ATTACK_KNOWN_SEED) {
      require(log_json_path != nullptr, "permutation log path");
      nlohmann::json log = nlohmann::json::parse(pemiu::read_file(log_json_path), nullptr,
                                                 false);
      if (log.is_discarded())
        pemiu::fail(PEMIU_E_MALFORMED_FILE,
                    std::string("permutation log ") + log_json_path + " is not valid JSON");
      report = pemiu::known_seed_report(protected_ds->ds, originals->ds, record_id, log,
                                        threshold, channel);
      meta.config = std::string("attack mode=known-seed record=") + record_id +
                    " threshold=" + pemiu::fmt_double(threshold) +
                    " channel=" + channel.describe();
    } else {
      report = pemiu::brute_force_report(
          protected_ds->ds, originals->ds, record_id, block_size, threshold, channel, budget,
          order == PEMIU_ORDER_RANDOM ? pemiu::AttackOrder::Random
                                      : pemiu::AttackOrder::Exhaustive,
          seed, threads);
      if (order == PEMIU_ORDER_RANDOM) meta.seed = seed;
      meta.config = std::string("attack mode=brute-force record=") + record_id +
                    " k=" + std::to_string(block_size) +
                    " threshold=" + pemiu::fmt_double(threshold) +
                    " budget=" + std::to_string(budget) + " order=" + report.order +
                    " channel=" + channel.describe();
    }
    *out_report_json = copy_out(pemiu::attack_report_json(report, meta).dump(2));
  });
}

/* ---- probes ---- */

pemiu_status pemiu_probe_train(const pemiu_dataset* train, uint32_t folds, uint64_t seed,
                               const char* label, int threads, pemiu_probe** out,
                               char** out_report_json) {
  return guarded([&] {
    require(train != nullptr, "dataset handle");
    require(out != nullptr, "output handle");
    const std::string name = label ? label : "train";
    pemiu::ProbeTrainResult result =
        pemiu::train_probe(train->ds, folds, pemiu::ProbeHyper{}, seed, name, threads);
    if (out_report_json) {
      pemiu::RunMeta meta;
      meta.seed = seed;
      meta.config = "probe label=" + name + " folds=" + std::to_string(folds);
      *out_report_json = copy_out(
          pemiu::probe_report_json(result.report, result.model.hyper, meta).dump(2));
    }
    *out = new pemiu_probe_s{std::move(result.model)};
  });
}

pemiu_status pemiu_probe_eval(const pemiu_probe* probe, const pemiu_dataset* ds,
                              const char* label, int threads, char** out_report_json) {
  return guarded([&] {
    require(probe != nullptr, "probe handle");
    require(ds != nullptr, "dataset handle");
    require(out_report_json != nullptr, "output pointer");
    const std::string name = label ? label : "eval";
    pemiu::ProbeReport report = pemiu::evaluate_probe(probe->model, ds->ds, name, threads);
    pemiu::RunMeta meta;
    meta.seed = probe->model.seed;
    meta.config =
        "probe-eval label=" + name + " folds=" + std::to_string(probe->model.folds);
    *out_report_json =
        copy_out(pemiu::probe_report_json(report, probe->model.hyper, meta).dump(2));
  });
}

void pemiu_probe_free(pemiu_probe* probe) { delete probe; }

} /* extern "C" */
