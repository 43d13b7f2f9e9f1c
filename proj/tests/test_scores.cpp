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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include <doctest.h>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/scores.hpp"
#include "core/scoring.hpp"

using namespace pemiu;

namespace {

const ScoreSet kWorked{{0.9, 0.8, 0.4}, {0.5, 0.3, 0.2}, "worked"};

// Plain re-implementation used as the oracle: direct counting per candidate,
// candidates collected through a std::set, identical tie-break (first lowest
// threshold wins on equal gap).
struct OracleResult {
  double eer, threshold;
};

double oracle_fmr(const std::vector<double>& nm, double t) {
  std::size_t c = 0;
  for (double s : nm)
    if (s >= t) ++c;
  return static_cast<double>(c) / static_cast<double>(nm.size());
}

double oracle_fnmr(const std::vector<double>& m, double t) {
  std::size_t c = 0;
  for (double s : m)
    if (s < t) ++c;
  return static_cast<double>(c) / static_cast<double>(m.size());
}

OracleResult oracle_eer(const ScoreSet& s) {
  std::set<double> cands(s.mated.begin(), s.mated.end());
  cands.insert(s.non_mated.begin(), s.non_mated.end());
  OracleResult best{0.0, 0.0};
  double best_gap = std::numeric_limits<double>::infinity();
  for (double t : cands) {
    double fmr = oracle_fmr(s.non_mated, t);
    double fnmr = oracle_fnmr(s.mated, t);
    if (std::fabs(fmr - fnmr) < best_gap) {
      best_gap = std::fabs(fmr - fnmr);
      best = {(fmr + fnmr) / 2.0, t};
    }
  }
  return best;
}

OracleResult oracle_threshold_at(const ScoreSet& s, double target) {
  std::set<double> cands(s.non_mated.begin(), s.non_mated.end());
  cands.insert(std::nextafter(1.0, 2.0));
  for (double t : cands) {
    if (oracle_fmr(s.non_mated, t) <= target) return {oracle_fmr(s.non_mated, t), t};
  }
  return {-1.0, -1.0};
}

ScoreSet random_scores(std::uint64_t seed) {
  Rng rng(seed);
  ScoreSet s;
  std::size_t n_m = 20 + rng.below(60);
  std::size_t n_nm = 20 + rng.below(60);
  for (std::size_t i = 0; i < n_m; ++i) s.mated.push_back(2.0 * rng.unit() - 1.0);
  for (std::size_t i = 0; i < n_nm; ++i) s.non_mated.push_back(2.0 * rng.unit() - 1.0);
  // Force score collisions so the tie-break rule actually fires.
  for (std::size_t i = 0; i + 1 < s.mated.size(); i += 3) s.mated[i + 1] = s.mated[i];
  for (std::size_t i = 0; i + 1 < s.non_mated.size(); i += 4)
    s.non_mated[i + 1] = s.non_mated[i];
  return s;
}

}  // namespace

TEST_CASE("worked example: error rates at given thresholds") {
  CHECK(fmr_at(kWorked, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(fmr_at(kWorked, 0.51) == 0.0);
  CHECK(fmr_at(kWorked, 0.2) == 1.0);
  CHECK(fnmr_at(kWorked, 0.4) == 0.0);
  CHECK(fnmr_at(kWorked, 0.41) == doctest::Approx(1.0 / 3.0));
  CHECK(fnmr_at(kWorked, 0.95) == 1.0);
}

TEST_CASE("worked example: EER is 1/3 at threshold 0.5") {
  EerResult r = eer(kWorked);
  CHECK(r.eer == doctest::Approx(1.0 / 3.0));
  CHECK(r.threshold == 0.5);
  CHECK(r.fmr == doctest::Approx(1.0 / 3.0));
  CHECK(r.fnmr == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("worked example: calibrated thresholds") {
  OperatingPoint op = threshold_at_fmr(kWorked, 1.0);
  CHECK(op.threshold == 0.2);
  CHECK(op.fmr == 1.0);
  CHECK(op.fnmr == 0.0);

  op = threshold_at_fmr(kWorked, 0.5);
  CHECK(op.threshold == 0.5);
  CHECK(op.fmr == doctest::Approx(1.0 / 3.0));
  CHECK(op.fnmr == doctest::Approx(1.0 / 3.0));

  op = threshold_at_fmr(kWorked, 1.0 / 3.0);
  CHECK(op.threshold == 0.5);

  // No observed threshold reaches 20%; the sentinel above the score range
  // accepts nothing.
  op = threshold_at_fmr(kWorked, 0.2);
  CHECK(op.threshold > 1.0);
  CHECK(op.fmr == 0.0);
  CHECK(op.fnmr == 1.0);
  CHECK(op.target_fmr == 0.2);
}

TEST_CASE("degenerate distributions") {
  ScoreSet separated{{0.8, 0.9}, {0.1, 0.2}, ""};
  EerResult r = eer(separated);
  CHECK(r.eer == 0.0);
  CHECK(r.threshold == 0.8);

  ScoreSet identical{{0.3, 0.6}, {0.3, 0.6}, ""};
  r = eer(identical);
  CHECK(r.eer == 0.5);
  CHECK(r.threshold == 0.6);
}

TEST_CASE("validation of inputs") {
  auto code_of = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return PEMIU_OK;
  };
  ScoreSet empty_m{{}, {0.1}, ""};
  ScoreSet empty_nm{{0.1}, {}, ""};
  CHECK(code_of([&] { eer(empty_m); }) == PEMIU_E_EMPTY_SCORE_LIST);
  CHECK(code_of([&] { eer(empty_nm); }) == PEMIU_E_EMPTY_SCORE_LIST);

  ScoreSet nan_scores{{std::nan("")}, {0.1}, ""};
  ScoreSet out_of_range{{1.5}, {0.1}, ""};
  ScoreSet below_range{{0.5}, {-1.0000001}, ""};
  CHECK(code_of([&] { eer(nan_scores); }) == PEMIU_E_INVALID_ARGUMENT);
  CHECK(code_of([&] { eer(out_of_range); }) == PEMIU_E_INVALID_ARGUMENT);
  CHECK(code_of([&] { eer(below_range); }) == PEMIU_E_INVALID_ARGUMENT);

  CHECK(code_of([&] { threshold_at_fmr(kWorked, 0.0); }) == PEMIU_E_INVALID_ARGUMENT);
  CHECK(code_of([&] { threshold_at_fmr(kWorked, 1.1); }) == PEMIU_E_INVALID_ARGUMENT);
  CHECK_NOTHROW(threshold_at_fmr(kWorked, 1.0));

  // Boundary scores -1 and 1 are legal.
  ScoreSet edges{{1.0}, {-1.0}, ""};
  CHECK_NOTHROW(eer(edges));
}

TEST_CASE("randomized agreement with the independent oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    ScoreSet s = random_scores(seed);
    EerResult got = eer(s);
    OracleResult want = oracle_eer(s);
    CHECK(got.eer == want.eer);
    CHECK(got.threshold == want.threshold);

    for (double target : {1.0, 0.5, 0.25, 0.1, 0.03}) {
      OperatingPoint op = threshold_at_fmr(s, target);
      OracleResult ow = oracle_threshold_at(s, target);
      CHECK(op.threshold == ow.threshold);
      CHECK(op.fmr == ow.eer);
      CHECK(op.fmr <= target);
    }
  }
}

TEST_CASE("det curve brackets the full trade-off and is monotone") {
  ScoreSet s = random_scores(77);
  std::vector<DetPoint> curve = det_curve(s);
  REQUIRE(curve.size() >= 3);

  CHECK(curve.front().fmr == 1.0);
  CHECK(curve.front().fnmr == 0.0);
  CHECK(curve.back().threshold > 1.0);
  CHECK(curve.back().fmr == 0.0);
  CHECK(curve.back().fnmr == 1.0);

  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].threshold > curve[i - 1].threshold);
    CHECK(curve[i].fmr <= curve[i - 1].fmr);
    CHECK(curve[i].fnmr >= curve[i - 1].fnmr);
  }

  // Every point matches the direct definitions.
  for (const DetPoint& p : curve) {
    CHECK(p.fmr == oracle_fmr(s.non_mated, p.threshold));
    CHECK(p.fnmr == oracle_fnmr(s.mated, p.threshold));
  }
}

TEST_CASE("reference corpus equal error rate is pinned") {
  SynthSpec spec;
  spec.dim = 512;
  spec.n_identities = 500;
  spec.samples_per_identity = 2;
  spec.intra_sigma = 0.1;
  spec.attribute_offset = 0.5;
  spec.seed = 7;
  Dataset ds = Dataset::generate(spec, 8);

  ScoreSet s = score_all_pairs(ds, 8);
  REQUIRE(s.mated.size() == 500);
  REQUIRE(s.non_mated.size() == 499000);

  EerResult r = eer(s);
  CHECK(r.eer == doctest::Approx(0.028).epsilon(1e-12));
  // Crossing gap is bounded by one step of the smaller list.
  CHECK(std::abs(fmr_at(s, r.threshold) - fnmr_at(s, r.threshold)) <= 1.0 / 500 + 1e-15);
}
