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
#include <string>
#include <vector>

#include <json.hpp>

#include "core/dataset.hpp"

namespace pemiu {

// Full-batch logistic regression, fixed schedule.  Deterministic: gradients
// accumulate in sample order, no stochastic minibatching.
struct ProbeHyper {
  std::uint32_t epochs = 200;
  double learning_rate = 0.1;
  double l2 = 1e-4;
};

struct LinearProbe {
  std::vector<double> weights;
  double bias = 0.0;
};

struct ProbeReport {
  std::string label;
  std::vector<double> fold_accuracies;
  double mean = 0.0;
  double stddev = 0.0;  // population std over the folds
  std::uint32_t n_folds = 0;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

struct ProbeModel {
  std::vector<LinearProbe> fold_probes;
  std::vector<std::vector<std::string>> heldout_ids;  // per fold, held-out record ids
  ProbeHyper hyper;
  std::uint32_t folds = 0;
  std::uint64_t seed = 0;
  std::uint32_t dim = 0;
};

struct ProbeTrainResult {
  ProbeModel model;
  ProbeReport report;
};

// Stratified cross-validation of a linear probe for the binary attribute.
// Inputs are unit-normalized before training so the probe only sees
// direction, not scale.  Errors: SingleClass when one class is absent,
// TooFewExamples when a class has fewer members than there are folds or
// fewer than 2; folds must be >= 2.
ProbeTrainResult train_probe(const Dataset& ds, std::uint32_t folds, ProbeHyper hyper,
                             std::uint64_t seed, const std::string& label, int threads);

// Applies each fold's probe to the records of `ds` matching that fold's
// held-out ids (UnknownRecord when absent), e.g. the protected rendition of
// the training corpus.
ProbeReport evaluate_probe(const ProbeModel& model, const Dataset& ds,
                           const std::string& label, int threads);

}  // namespace pemiu
