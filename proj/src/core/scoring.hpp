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

#include "core/dataset.hpp"
#include "core/scores.hpp"

namespace pemiu {

// Cosine scores over an explicit pairing.  Scores keep pairing order within
// the mated and non-mated lists regardless of thread count.  Errors:
// UnknownRecord for unresolvable ids, LabelContradiction when a pair's mated
// flag disagrees with the identity labels.
ScoreSet score_protocol(const Dataset& ds, const Pairing& pairing, int threads);

// Equivalent to score_protocol over all_pairs(ds) but without materializing
// the id strings.
ScoreSet score_all_pairs(const Dataset& ds, int threads);

}  // namespace pemiu
