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

#include <json.hpp>

namespace pemiu {

// Comparison scores of a verification experiment.  Accept rule everywhere:
// score >= threshold.
struct ScoreSet {
  std::vector<double> mated;
  std::vector<double> non_mated;
  std::string label;
};

struct OperatingPoint {
  double threshold = 0.0;
  double fmr = 0.0;
  double fnmr = 0.0;
  std::optional<double> target_fmr;

  nlohmann::ordered_json to_json() const;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  double fmr = 0.0;
  double fnmr = 0.0;
};

struct DetPoint {
  double threshold = 0.0;
  double fmr = 0.0;
  double fnmr = 0.0;
};

// Share of non-mated scores accepted at the threshold.  EmptyScoreList when
// the non-mated list is empty.
double fmr_at(const ScoreSet& scores, double threshold);

// Share of mated scores rejected at the threshold.
double fnmr_at(const ScoreSet& scores, double threshold);

// Smallest candidate threshold whose FMR is <= target_fmr, scanning the
// observed non-mated scores plus an accept-nothing sentinel just above the
// top of the score range.  target_fmr must lie in (0, 1].
OperatingPoint threshold_at_fmr(const ScoreSet& scores, double target_fmr);

// Exhaustive scan over every observed score as candidate threshold; picks the
// minimizer of |FMR - FNMR|, ties toward the lower threshold, and returns the
// mean of the two rates there.
EerResult eer(const ScoreSet& scores);

// One point per candidate threshold, ascending; FMR weakly decreasing, FNMR
// weakly increasing along the curve.
std::vector<DetPoint> det_curve(const ScoreSet& scores);

}  // namespace pemiu
