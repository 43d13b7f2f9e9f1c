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

#include <string>
#include <vector>

namespace pemiu {

// Fixed-length float32 template.  All arithmetic accumulates in double.
using Embedding = std::vector<float>;

// Euclidean norm with the squared terms summed in ascending order, so any
// block reordering of v yields the bit-identical norm.
double norm(const Embedding& v);

double dot(const Embedding& a, const Embedding& b);

// Unit-norm copy.  ZeroVector when the norm is <= 1e-12.
Embedding normalized(const Embedding& v);

double cosine_from_dot(double dot_ab, double norm_a, double norm_b);

// Cosine similarity clamped to [-1, 1]; both inputs must be nonzero and of
// equal length.
double cosine_similarity(const Embedding& a, const Embedding& b);

// InvalidArgument on NaN or infinity.  `what` names the offender in messages.
void validate_finite(const Embedding& v, const std::string& what);

}  // namespace pemiu
