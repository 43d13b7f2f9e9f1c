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

#include "core/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace pemiu {

namespace {
constexpr double kZeroNormTolerance = 1e-12;
}

double norm(const Embedding& v) {
  std::vector<double> squares(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double x = static_cast<double>(v[i]);
    squares[i] = x * x;
  }
  std::sort(squares.begin(), squares.end());
  double sum = 0.0;
  for (double s : squares) sum += s;
  return std::sqrt(sum);
}

double dot(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size())
    fail(PEMIU_E_DIMENSION_MISMATCH,
         "dot: embeddings have lengths " + std::to_string(a.size()) + " and " +
             std::to_string(b.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return sum;
}

Embedding normalized(const Embedding& v) {
  double n = norm(v);
  if (n <= kZeroNormTolerance)
    fail(PEMIU_E_ZERO_VECTOR, "normalized: vector norm is " + std::to_string(n));
  Embedding out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<float>(static_cast<double>(v[i]) / n);
  return out;
}

double cosine_from_dot(double dot_ab, double norm_a, double norm_b) {
  if (norm_a <= kZeroNormTolerance || norm_b <= kZeroNormTolerance)
    fail(PEMIU_E_ZERO_VECTOR, "cosine: zero-norm operand");
  double c = dot_ab / (norm_a * norm_b);
  return std::clamp(c, -1.0, 1.0);
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
  return cosine_from_dot(dot(a, b), norm(a), norm(b));
}

void validate_finite(const Embedding& v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]))
      fail(PEMIU_E_INVALID_ARGUMENT,
           what + ": non-finite value at component " + std::to_string(i));
  }
}

}  // namespace pemiu
