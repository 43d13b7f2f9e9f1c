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

#include "core/probe.hpp"

#include <cmath>

#include "core/embedding.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace pemiu {

namespace {

// Direction-only features: each embedding scaled to unit norm, in doubles.
std::vector<double> normalized_features(const Dataset& ds, int threads) {
  const std::size_t dim = ds.dim();
  std::vector<double> features(ds.size() * dim);
  parallel_for(ds.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Embedding& v = ds.record(i).values;
      double sq = 0.0;
      for (float x : v) sq += static_cast<double>(x) * static_cast<double>(x);
      double n = std::sqrt(sq);
      if (n <= 1e-12)
        fail(PEMIU_E_ZERO_VECTOR,
             "probe: record '" + ds.record(i).id + "' is the zero vector");
      double* row = features.data() + i * dim;
      for (std::size_t c = 0; c < dim; ++c) row[c] = static_cast<double>(v[c]) / n;
    }
  });
  return features;
}

LinearProbe fit_logistic(const std::vector<double>& features, std::size_t dim,
                         const std::vector<std::size_t>& train_idx,
                         const std::vector<std::uint8_t>& labels, ProbeHyper hyper) {
  LinearProbe probe;
  probe.weights.assign(dim, 0.0);
  std::vector<double> grad(dim);
  const double n = static_cast<double>(train_idx.size());
  for (std::uint32_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i : train_idx) {
      const double* row = features.data() + i * dim;
      double z = probe.bias;
      for (std::size_t c = 0; c < dim; ++c) z += probe.weights[c] * row[c];
      double p = 1.0 / (1.0 + std::exp(-z));
      double g = p - static_cast<double>(labels[i]);
      for (std::size_t c = 0; c < dim; ++c) grad[c] += g * row[c];
      grad_bias += g;
    }
    for (std::size_t c = 0; c < dim; ++c)
      probe.weights[c] -= hyper.learning_rate * (grad[c] / n + hyper.l2 * probe.weights[c]);
    probe.bias -= hyper.learning_rate * (grad_bias / n);
  }
  return probe;
}

int predict(const LinearProbe& probe, const double* row, std::size_t dim) {
  double z = probe.bias;
  for (std::size_t c = 0; c < dim; ++c) z += probe.weights[c] * row[c];
  return z >= 0.0 ? 1 : 0;
}

// Mean and population std exactly as documented: plain sequential sums over
// the fold list, so a reader can recompute them from the report.
void finish_report(ProbeReport& report) {
  double sum = 0.0;
  for (double a : report.fold_accuracies) sum += a;
  report.mean = sum / static_cast<double>(report.fold_accuracies.size());
  double sq = 0.0;
  for (double a : report.fold_accuracies) sq += (a - report.mean) * (a - report.mean);
  report.stddev = std::sqrt(sq / static_cast<double>(report.fold_accuracies.size()));
  report.n_folds = static_cast<std::uint32_t>(report.fold_accuracies.size());
}

}  // namespace

nlohmann::ordered_json ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["folds"] = fold_accuracies;
  j["mean"] = mean;
  j["std"] = stddev;
  j["n_folds"] = n_folds;
  j["seed"] = seed;
  return j;
}

ProbeTrainResult train_probe(const Dataset& ds, std::uint32_t folds, ProbeHyper hyper,
                             std::uint64_t seed, const std::string& label, int threads) {
  if (folds < 2) fail(PEMIU_E_INVALID_ARGUMENT, "probe: need at least 2 folds");
  if (ds.size() == 0) fail(PEMIU_E_TOO_FEW_EXAMPLES, "probe: empty dataset");

  std::vector<std::uint8_t> labels(ds.size());
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    labels[i] = ds.record(i).attribute;
    by_class[labels[i]].push_back(i);
  }
  if (by_class[0].empty() || by_class[1].empty())
    fail(PEMIU_E_SINGLE_CLASS, "probe: the attribute has a single class, nothing to learn");
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2 || by_class[c].size() < folds)
      fail(PEMIU_E_TOO_FEW_EXAMPLES,
           "probe: class " + std::to_string(c) + " has " +
               std::to_string(by_class[c].size()) + " examples, need at least " +
               std::to_string(std::max<std::size_t>(2, folds)));
  }

  // Stratified assignment: shuffle each class once, deal round robin.
  std::vector<std::uint32_t> fold_of(ds.size());
  for (int c = 0; c < 2; ++c) {
    Rng rng(derive_seed(seed, kStreamFolds, static_cast<std::uint64_t>(c)));
    std::vector<std::size_t>& idx = by_class[c];
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.below(i)]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      fold_of[idx[i]] = static_cast<std::uint32_t>(i % folds);
  }

  const std::size_t dim = ds.dim();
  std::vector<double> features = normalized_features(ds, threads);

  ProbeTrainResult result;
  result.model.fold_probes.resize(folds);
  result.model.heldout_ids.resize(folds);
  result.model.hyper = hyper;
  result.model.folds = folds;
  result.model.seed = seed;
  result.model.dim = static_cast<std::uint32_t>(dim);
  result.report.label = label;
  result.report.seed = seed;
  result.report.fold_accuracies.resize(folds);

  std::vector<std::vector<std::size_t>> train_sets(folds), heldout_sets(folds);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::uint32_t f = 0; f < folds; ++f)
      (fold_of[i] == f ? heldout_sets[f] : train_sets[f]).push_back(i);
  }
  for (std::uint32_t f = 0; f < folds; ++f) {
    result.model.heldout_ids[f].reserve(heldout_sets[f].size());
    for (std::size_t i : heldout_sets[f])
      result.model.heldout_ids[f].push_back(ds.record(i).id);
  }

  parallel_for(folds, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      LinearProbe probe = fit_logistic(features, dim, train_sets[f], labels, hyper);
      std::size_t correct = 0;
      for (std::size_t i : heldout_sets[f])
        if (predict(probe, features.data() + i * dim, dim) == labels[i]) ++correct;
      result.report.fold_accuracies[f] =
          static_cast<double>(correct) / static_cast<double>(heldout_sets[f].size());
      result.model.fold_probes[f] = std::move(probe);
    }
  });

  finish_report(result.report);
  return result;
}

ProbeReport evaluate_probe(const ProbeModel& model, const Dataset& ds,
                           const std::string& label, int threads) {
  if (ds.dim() != model.dim)
    fail(PEMIU_E_DIMENSION_MISMATCH,
         "probe: evaluation dataset dimension " + std::to_string(ds.dim()) +
             " does not match the trained dimension " + std::to_string(model.dim));

  const std::size_t dim = model.dim;
  std::vector<double> features = normalized_features(ds, threads);

  ProbeReport report;
  report.label = label;
  report.seed = model.seed;
  report.fold_accuracies.resize(model.folds);

  // Resolve ids up front; evaluation itself is embarrassingly parallel.
  std::vector<std::vector<std::size_t>> eval_sets(model.folds);
  for (std::uint32_t f = 0; f < model.folds; ++f) {
    eval_sets[f].reserve(model.heldout_ids[f].size());
    for (const std::string& id : model.heldout_ids[f])
      eval_sets[f].push_back(ds.index_of(id));
  }

  parallel_for(model.folds, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      std::size_t correct = 0;
      for (std::size_t i : eval_sets[f]) {
        int want = ds.record(i).attribute;
        if (predict(model.fold_probes[f], features.data() + i * dim, dim) == want)
          ++correct;
      }
      report.fold_accuracies[f] =
          static_cast<double>(correct) / static_cast<double>(eval_sets[f].size());
    }
  });

  finish_report(report);
  return report;
}

}  // namespace pemiu
