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

#include "core/scores.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace pemiu {

namespace {

// Accept-nothing threshold: strictly above the top of the cosine range, so
// no valid score can reach it.
const double kSentinel = std::nextafter(1.0, std::numeric_limits<double>::infinity());

void require_list(const std::vector<double>& scores, const char* which) {
  if (scores.empty())
    fail(PEMIU_E_EMPTY_SCORE_LIST, std::string("metrics: ") + which + " score list is empty");
  for (double s : scores) {
    if (!std::isfinite(s) || s < -1.0 || s > 1.0)
      fail(PEMIU_E_INVALID_ARGUMENT,
           std::string("metrics: ") + which + " scores must be finite and within [-1, 1]");
  }
}

std::size_t count_ge(const std::vector<double>& sorted, double threshold) {
  return static_cast<std::size_t>(
      sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), threshold));
}

std::size_t count_lt(const std::vector<double>& sorted, double threshold) {
  return static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), threshold) - sorted.begin());
}

}  // namespace

nlohmann::ordered_json OperatingPoint::to_json() const {
  nlohmann::ordered_json j;
  j["threshold"] = threshold;
  j["fmr"] = fmr;
  j["fnmr"] = fnmr;
  if (target_fmr) j["target_fmr"] = *target_fmr;
  return j;
}

double fmr_at(const ScoreSet& scores, double threshold) {
  require_list(scores.non_mated, "non-mated");
  std::size_t accepted = 0;
  for (double s : scores.non_mated)
    if (s >= threshold) ++accepted;
  return static_cast<double>(accepted) / static_cast<double>(scores.non_mated.size());
}

double fnmr_at(const ScoreSet& scores, double threshold) {
  require_list(scores.mated, "mated");
  std::size_t rejected = 0;
  for (double s : scores.mated)
    if (s < threshold) ++rejected;
  return static_cast<double>(rejected) / static_cast<double>(scores.mated.size());
}

OperatingPoint threshold_at_fmr(const ScoreSet& scores, double target_fmr) {
  if (!(target_fmr > 0.0) || target_fmr > 1.0)
    fail(PEMIU_E_INVALID_ARGUMENT, "threshold_at_fmr: target must lie in (0, 1]");
  require_list(scores.mated, "mated");
  require_list(scores.non_mated, "non-mated");

  std::vector<double> mated = scores.mated;
  std::vector<double> non_mated = scores.non_mated;
  std::sort(mated.begin(), mated.end());
  std::sort(non_mated.begin(), non_mated.end());

  std::vector<double> candidates = non_mated;
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  candidates.push_back(kSentinel);

  const double n_nm = static_cast<double>(non_mated.size());
  const double n_m = static_cast<double>(mated.size());
  for (double t : candidates) {
    double fmr = static_cast<double>(count_ge(non_mated, t)) / n_nm;
    if (fmr <= target_fmr) {
      OperatingPoint op;
      op.threshold = t;
      op.fmr = fmr;
      op.fnmr = static_cast<double>(count_lt(mated, t)) / n_m;
      op.target_fmr = target_fmr;
      return op;
    }
  }
  fail(PEMIU_E_INTERNAL, "threshold_at_fmr: sentinel threshold did not satisfy target");
}

EerResult eer(const ScoreSet& scores) {
  require_list(scores.mated, "mated");
  require_list(scores.non_mated, "non-mated");

  std::vector<double> mated = scores.mated;
  std::vector<double> non_mated = scores.non_mated;
  std::sort(mated.begin(), mated.end());
  std::sort(non_mated.begin(), non_mated.end());

  // Candidate thresholds are every observed score.
  std::vector<double> candidates;
  candidates.reserve(mated.size() + non_mated.size());
  std::merge(mated.begin(), mated.end(), non_mated.begin(), non_mated.end(),
             std::back_inserter(candidates));
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const double n_nm = static_cast<double>(non_mated.size());
  const double n_m = static_cast<double>(mated.size());
  EerResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    double fmr = static_cast<double>(count_ge(non_mated, t)) / n_nm;
    double fnmr = static_cast<double>(count_lt(mated, t)) / n_m;
    double gap = std::fabs(fmr - fnmr);
    if (gap < best_gap) {
      best_gap = gap;
      best.threshold = t;
      best.fmr = fmr;
      best.fnmr = fnmr;
    }
  }
  best.eer = (best.fmr + best.fnmr) / 2.0;
  return best;
}

std::vector<DetPoint> det_curve(const ScoreSet& scores) {
  require_list(scores.mated, "mated");
  require_list(scores.non_mated, "non-mated");

  std::vector<double> mated = scores.mated;
  std::vector<double> non_mated = scores.non_mated;
  std::sort(mated.begin(), mated.end());
  std::sort(non_mated.begin(), non_mated.end());

  std::vector<double> candidates;
  candidates.reserve(mated.size() + non_mated.size() + 1);
  std::merge(mated.begin(), mated.end(), non_mated.begin(), non_mated.end(),
             std::back_inserter(candidates));
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  candidates.push_back(kSentinel);

  const double n_nm = static_cast<double>(non_mated.size());
  const double n_m = static_cast<double>(mated.size());
  std::vector<DetPoint> curve;
  curve.reserve(candidates.size());
  for (double t : candidates) {
    DetPoint p;
    p.threshold = t;
    p.fmr = static_cast<double>(count_ge(non_mated, t)) / n_nm;
    p.fnmr = static_cast<double>(count_lt(mated, t)) / n_m;
    curve.push_back(p);
  }
  return curve;
}

}  // namespace pemiu
