/* include/pemiu.h

   Copyright 2026  The pemiu-toolkit authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

   THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
   KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
   WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
   MERCHANTABLITY OR NON-INFRINGEMENT.
   See the Apache 2 License for the specific language governing permissions and
   limitations under the License. */

/* C API of the pemiu toolkit: block-permutation protection of fixed-length
   float embeddings (PE-MIU), verification metrics, reversibility attacks and
   attribute-leakage probes.

   All functions return PEMIU_OK on success.  On failure the returned status
   identifies the error class and pemiu_last_error() gives a human-readable,
   thread-local message.  Objects created through an out-parameter must be
   released with the matching *_free function; strings returned through a
   char** with pemiu_string_free. */

#ifndef PEMIU_H
#define PEMIU_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PEMIU_API __declspec(dllexport)
#else
#define PEMIU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pemiu_status {
  PEMIU_OK = 0,
  PEMIU_E_INVALID_ARGUMENT = 1,
  PEMIU_E_ZERO_VECTOR = 2,
  PEMIU_E_DIMENSION_MISMATCH = 3,
  PEMIU_E_INDIVISIBLE_BLOCK_SIZE = 4,
  PEMIU_E_INVALID_DISPLACEMENT = 5,
  PEMIU_E_PARTITION_MISMATCH = 6,
  PEMIU_E_EMPTY_SCORE_LIST = 7,
  PEMIU_E_UNKNOWN_RECORD = 8,
  PEMIU_E_LABEL_CONTRADICTION = 9,
  PEMIU_E_SINGLE_CLASS = 10,
  PEMIU_E_TOO_FEW_EXAMPLES = 11,
  PEMIU_E_MISSING_ORIGINAL = 12,
  PEMIU_E_CHANNEL_GAP = 13,
  PEMIU_E_MALFORMED_FILE = 14,
  PEMIU_E_DUPLICATE_RECORD_ID = 15,
  PEMIU_E_INVALID_SPEC = 16,
  PEMIU_E_IO = 17,
  PEMIU_E_INTERNAL = 18
} pemiu_status;

typedef enum pemiu_dataset_format {
  PEMIU_FORMAT_BINARY = 0, /* .pseb container, bit-exact round trips */
  PEMIU_FORMAT_CSV = 1     /* id,identity,attribute,v0..v{S-1} */
} pemiu_dataset_format;

typedef enum pemiu_protect_mode {
  PEMIU_PROTECT_PER_IDENTITY = 0, /* one fresh permutation per identity */
  PEMIU_PROTECT_PER_RECORD = 1,   /* one fresh permutation per record */
  PEMIU_PROTECT_FIXED = 2         /* a single permutation for all records */
} pemiu_protect_mode;

typedef enum pemiu_sweep_mode {
  PEMIU_SWEEP_FIXED_DISPLACEMENT = 0, /* same permutation of displacement P for all records */
  PEMIU_SWEEP_PER_IDENTITY = 1        /* per-identity uniform shuffle, no P axis */
} pemiu_sweep_mode;

typedef enum pemiu_attack_order {
  PEMIU_ORDER_EXHAUSTIVE = 0, /* ascending displacement, lexicographic within */
  PEMIU_ORDER_RANDOM = 1      /* seed-deterministic uniform draws */
} pemiu_attack_order;

typedef enum pemiu_attack_mode {
  PEMIU_ATTACK_KNOWN_SEED = 0,
  PEMIU_ATTACK_BRUTE_FORCE = 1
} pemiu_attack_mode;

typedef struct pemiu_perm_s pemiu_perm;
typedef struct pemiu_dataset_s pemiu_dataset;
typedef struct pemiu_scores_s pemiu_scores;
typedef struct pemiu_probe_s pemiu_probe;

/* ---- library info and error handling ---- */

PEMIU_API const char* pemiu_version(void);
/* Identifier of the seedable generator used for every randomized operation.
   Recorded in all output manifests so runs can be replayed bit-for-bit. */
PEMIU_API const char* pemiu_prng_id(void);
PEMIU_API const char* pemiu_status_name(pemiu_status status);
/* Message of the most recent failure on the calling thread ("" if none). */
PEMIU_API const char* pemiu_last_error(void);
PEMIU_API void pemiu_string_free(char* s);

/* ---- embeddings ---- */

/* In-place scaling to unit Euclidean norm.  PEMIU_E_ZERO_VECTOR when the
   norm is <= 1e-12. */
PEMIU_API pemiu_status pemiu_normalize(float* values, size_t len);
PEMIU_API pemiu_status pemiu_cosine_similarity(const float* a, const float* b,
                                               size_t len, double* out);
/* Number of blocks dim/block_size; PEMIU_E_INDIVISIBLE_BLOCK_SIZE when the
   block size does not divide the dimension. */
PEMIU_API pemiu_status pemiu_block_count(uint32_t dim, uint32_t block_size,
                                         uint32_t* out_blocks);

/* ---- block permutations ---- */

PEMIU_API pemiu_status pemiu_perm_identity(uint32_t dim, uint32_t block_size,
                                           pemiu_perm** out);
/* Uniform draw over all N! block permutations, deterministic per seed. */
PEMIU_API pemiu_status pemiu_perm_sample_uniform(uint32_t dim, uint32_t block_size,
                                                 uint64_t seed, pemiu_perm** out);
/* Uniform draw over permutations moving exactly `displacement` blocks
   (displacement 0 or 2..N; 1 is impossible and rejected). */
PEMIU_API pemiu_status pemiu_perm_sample_displacement(uint32_t dim, uint32_t block_size,
                                                      uint32_t displacement, uint64_t seed,
                                                      pemiu_perm** out);
/* JSON form: {"S":..., "K":..., "mapping":[...]} */
PEMIU_API pemiu_status pemiu_perm_from_json(const char* json_text, pemiu_perm** out);
PEMIU_API pemiu_status pemiu_perm_to_json(const pemiu_perm* perm, char** out_json);
PEMIU_API pemiu_status pemiu_perm_invert(const pemiu_perm* perm, pemiu_perm** out);
/* Composition: applying `inner` first, then `outer`. */
PEMIU_API pemiu_status pemiu_perm_compose(const pemiu_perm* outer, const pemiu_perm* inner,
                                          pemiu_perm** out);
PEMIU_API pemiu_status pemiu_perm_block_count(const pemiu_perm* perm, uint32_t* out);
PEMIU_API pemiu_status pemiu_perm_displacement(const pemiu_perm* perm, uint32_t* out);
PEMIU_API pemiu_status pemiu_perm_mapping(const pemiu_perm* perm, uint32_t* out,
                                          size_t capacity);
/* Block shuffle of an embedding (output block j = input block mapping[j]). */
PEMIU_API pemiu_status pemiu_protect(const pemiu_perm* perm, const float* in,
                                     size_t len, float* out);
/* Exact inverse of pemiu_protect for the same permutation. */
PEMIU_API pemiu_status pemiu_unprotect(const pemiu_perm* perm, const float* in,
                                       size_t len, float* out);
PEMIU_API void pemiu_perm_free(pemiu_perm* perm);

/* ---- permutation-space counting (exact, decimal strings) ---- */

/* Number of permutations of n_blocks elements moving exactly `displacement`
   of them: C(N,P) * D(P) with D the derangement numbers. */
PEMIU_API pemiu_status pemiu_count_with_displacement(uint32_t n_blocks, uint32_t displacement,
                                                     char** out_decimal);
/* N! as an exact integer. */
PEMIU_API pemiu_status pemiu_permutation_space_size(uint32_t n_blocks, char** out_decimal);

/* ---- datasets ---- */

/* Synthetic embeddings: identity centroids uniform on the unit hypersphere,
   per-sample Gaussian coordinate noise, a binary attribute encoded as a
   +-offset along a fixed seed-derived direction.  Deterministic per seed and
   independent of `threads`. */
PEMIU_API pemiu_status pemiu_dataset_generate(uint32_t dim, uint32_t n_identities,
                                              uint32_t samples_per_identity,
                                              double intra_sigma, double attribute_offset,
                                              int unit_norm, uint64_t seed, int threads,
                                              pemiu_dataset** out);
PEMIU_API pemiu_status pemiu_dataset_read(const char* path, pemiu_dataset** out);
/* Writes the dataset plus a <path>.manifest.json sidecar. */
PEMIU_API pemiu_status pemiu_dataset_write(const pemiu_dataset* ds, const char* path,
                                           pemiu_dataset_format format);
PEMIU_API pemiu_status pemiu_dataset_dim(const pemiu_dataset* ds, uint32_t* out);
PEMIU_API pemiu_status pemiu_dataset_size(const pemiu_dataset* ds, size_t* out);
PEMIU_API pemiu_status pemiu_dataset_record_id(const pemiu_dataset* ds, size_t index,
                                               char** out_id);
PEMIU_API pemiu_status pemiu_dataset_record_labels(const pemiu_dataset* ds, size_t index,
                                                   uint32_t* out_identity,
                                                   uint8_t* out_attribute);
PEMIU_API pemiu_status pemiu_dataset_record_values(const pemiu_dataset* ds, size_t index,
                                                   float* out, size_t capacity);
/* Block-permutation protection of every record.  `displacement` is only
   meaningful for PEMIU_PROTECT_FIXED; pass -1 for a uniform shuffle.
   out_log_json (optional) receives the permutation log used for replay and
   known-seed attacks. */
PEMIU_API pemiu_status pemiu_dataset_protect(const pemiu_dataset* ds, uint32_t block_size,
                                             pemiu_protect_mode mode, int32_t displacement,
                                             uint64_t seed, int threads,
                                             pemiu_dataset** out_protected,
                                             char** out_log_json);
PEMIU_API void pemiu_dataset_free(pemiu_dataset* ds);

/* ---- verification scores and error metrics ---- */

PEMIU_API pemiu_status pemiu_scores_create(const double* mated, size_t n_mated,
                                           const double* non_mated, size_t n_non_mated,
                                           const char* label, pemiu_scores** out);
/* Cosine scores over a pairing file (CSV id_a,id_b,mated).  NULL pairing_path
   scores every record pair, mated iff the identity labels agree. */
PEMIU_API pemiu_status pemiu_score_protocol(const pemiu_dataset* ds, const char* pairing_path,
                                            int threads, pemiu_scores** out);
PEMIU_API pemiu_status pemiu_scores_counts(const pemiu_scores* s, size_t* out_mated,
                                           size_t* out_non_mated);
/* Share of non-mated scores >= threshold (accept rule is score >= threshold). */
PEMIU_API pemiu_status pemiu_fmr_at(const pemiu_scores* s, double threshold, double* out);
/* Share of mated scores < threshold. */
PEMIU_API pemiu_status pemiu_fnmr_at(const pemiu_scores* s, double threshold, double* out);
/* Smallest observed threshold whose FMR is <= target, with the achieved
   FMR/FNMR at that threshold. */
PEMIU_API pemiu_status pemiu_threshold_at_fmr(const pemiu_scores* s, double target_fmr,
                                              double* out_threshold, double* out_fmr,
                                              double* out_fnmr);
PEMIU_API pemiu_status pemiu_eer(const pemiu_scores* s, double* out_eer,
                                 double* out_threshold);
/* DET curve as CSV `threshold,fmr,fnmr`, one row per candidate threshold. */
PEMIU_API pemiu_status pemiu_write_det_csv(const pemiu_scores* s, const char* path);
PEMIU_API void pemiu_scores_free(pemiu_scores* s);

/* ---- experiments ---- */

/* DET CSV (optional) plus an operating-point report as JSON: EER and the
   calibrated thresholds at each FMR target. */
PEMIU_API pemiu_status pemiu_evaluate(const pemiu_dataset* ds, const char* pairing_path,
                                      const double* fmr_targets, size_t n_targets,
                                      const char* label, const char* det_csv_path,
                                      int threads, char** out_ops_json);

/* Reversibility-success-rate grid over block sizes and displacements,
   written as CSV `K,P,target_fmr,threshold,rsr,n_attacked,seed`.
   channel_spec: "identity" | "gaussian:<sigma>" | "external:<dataset path>".
   p_list NULL selects the per-K default displacement preset. */
PEMIU_API pemiu_status pemiu_rsr_sweep(const pemiu_dataset* ds, const uint32_t* k_list,
                                       size_t n_k, const uint32_t* p_list, size_t n_p,
                                       pemiu_sweep_mode mode, const char* channel_spec,
                                       const double* fmr_targets, size_t n_targets,
                                       int per_cell_calibration, uint64_t seed, int threads,
                                       const char* out_csv_path);

/* Undo the protection of a single embedding with a known permutation. */
PEMIU_API pemiu_status pemiu_known_seed_attack(const pemiu_perm* perm,
                                               const float* protected_values, size_t len,
                                               float* out_reconstructed);

/* Search the permutation space for one that makes the reconstructed embedding
   match `reference` at `threshold`.  Report is JSON with exact effort counts
   and the N! search-space size as a decimal string. */
PEMIU_API pemiu_status pemiu_brute_force_attack(const float* protected_values,
                                                const float* reference, size_t len,
                                                uint32_t block_size, double threshold,
                                                const char* channel_spec,
                                                const char* record_id, uint64_t budget,
                                                pemiu_attack_order order, uint64_t seed,
                                                int threads, char** out_report_json);

/* Single-record attack against a protected dataset: known-seed replay from a
   permutation log (log_json_path) or brute-force search (block_size, budget,
   order).  The acceptance oracle compares against the mated record of the
   same id in `originals`. */
PEMIU_API pemiu_status pemiu_attack_seed(const pemiu_dataset* protected_ds,
                                         const pemiu_dataset* originals,
                                         const char* record_id, pemiu_attack_mode mode,
                                         const char* log_json_path, uint32_t block_size,
                                         double threshold, const char* channel_spec,
                                         uint64_t budget, pemiu_attack_order order,
                                         uint64_t seed, int threads,
                                         char** out_report_json);

/* ---- attribute-leakage probes ---- */

/* Trains one logistic probe per stratified fold on the binary attribute and
   reports held-out accuracy as JSON {"folds":[...],"mean":...,"std":...,
   "n_folds":...,"seed":...}. */
PEMIU_API pemiu_status pemiu_probe_train(const pemiu_dataset* train, uint32_t folds,
                                         uint64_t seed, const char* label, int threads,
                                         pemiu_probe** out, char** out_report_json);
/* Evaluates the trained per-fold probes on another dataset (matched by record
   id against each fold's held-out split). */
PEMIU_API pemiu_status pemiu_probe_eval(const pemiu_probe* probe, const pemiu_dataset* ds,
                                        const char* label, int threads,
                                        char** out_report_json);
PEMIU_API void pemiu_probe_free(pemiu_probe* probe);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PEMIU_H */
