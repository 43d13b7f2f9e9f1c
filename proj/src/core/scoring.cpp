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

#include "core/scoring.hpp"

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace pemiu {

namespace {

struct ResolvedPair {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t slot = 0;
  bool mated = false;
};

std::vector<double> record_norms(const Dataset& ds, int threads) {
  std::vector<double> norms(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) norms[i] = norm(ds.record(i).values);
  });
  return norms;
}

// Scores land in per-pair slots, so the lists are identical for any thread
// count.
ScoreSet score_resolved(const Dataset& ds, const std::vector<ResolvedPair>& pairs,
                        std::size_t n_mated, std::size_t n_non_mated, int threads) {
  std::vector<double> norms = record_norms(ds, threads);
  ScoreSet scores;
  scores.mated.resize(n_mated);
  scores.non_mated.resize(n_non_mated);
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const ResolvedPair& pair = pairs[p];
      double d = dot(ds.record(pair.a).values, ds.record(pair.b).values);
      double score = cosine_from_dot(d, norms[pair.a], norms[pair.b]);
      (pair.mated ? scores.mated : scores.non_mated)[pair.slot] = score;
    }
  });
  return scores;
}

}  // namespace

ScoreSet score_protocol(const Dataset& ds, const Pairing& pairing, int threads) {
  std::vector<ResolvedPair> pairs;
  pairs.reserve(pairing.size());
  std::size_t n_mated = 0, n_non_mated = 0;
  for (const PairEntry& e : pairing) {
    ResolvedPair rp;
    rp.a = ds.index_of(e.a);
    rp.b = ds.index_of(e.b);
    rp.mated = e.mated;
    const bool same_identity = ds.record(rp.a).identity == ds.record(rp.b).identity;
    if (same_identity != e.mated)
      fail(PEMIU_E_LABEL_CONTRADICTION,
           "pair ('" + e.a + "', '" + e.b + "') is flagged " +
               (e.mated ? "mated" : "non-mated") + " but the identity labels say otherwise");
    rp.slot = e.mated ? n_mated++ : n_non_mated++;
    pairs.push_back(rp);
  }
  ScoreSet scores = score_resolved(ds, pairs, n_mated, n_non_mated, threads);
  scores.label = "pairing";
  return scores;
}

ScoreSet score_all_pairs(const Dataset& ds, int threads) {
  const std::size_t n = ds.size();
  std::vector<ResolvedPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  std::size_t n_mated = 0, n_non_mated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ResolvedPair rp;
      rp.a = i;
      rp.b = j;
      rp.mated = ds.record(i).identity == ds.record(j).identity;
      rp.slot = rp.mated ? n_mated++ : n_non_mated++;
      pairs.push_back(rp);
    }
  }
  ScoreSet scores = score_resolved(ds, pairs, n_mated, n_non_mated, threads);
  scores.label = "all-pairs";
  return scores;
}

}  // namespace pemiu
