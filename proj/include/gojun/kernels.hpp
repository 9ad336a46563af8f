// Copyright 2026 The gojun Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch scoring kernels. The serial functions are the reference; the
// OpenMP versions must return bit-identical results for built-in models.

#ifndef GOJUN_KERNELS_HPP_
#define GOJUN_KERNELS_HPP_

#include <span>
#include <string>
#include <vector>

#include "gojun/scorer.hpp"
#include "gojun/transform.hpp"

namespace gojun {

struct ScorePair {
  double forward = 0.0;
  double backward = 0.0;

  bool operator==(const ScorePair&) const = default;
};

std::vector<ScorePair> score_texts_serial(const BidirectionalScorer& scorer,
                                          std::span<const std::string> texts);
// One text per loop iteration across `workers` OpenMP threads.
std::vector<ScorePair> score_texts_parallel(const BidirectionalScorer& scorer,
                                            std::span<const std::string> texts, int workers);
// Parallel when workers > 1 and both directions are concurrent, otherwise
// one batch per direction.
std::vector<ScorePair> score_texts(const BidirectionalScorer& scorer,
                                   std::span<const std::string> texts, int workers);

// compare() over many sets, with all texts scored in one fan-out.
std::vector<ComparisonResult> compare_many(const BidirectionalScorer& scorer,
                                           std::span<const VariantSet> sets, double tie_epsilon,
                                           int workers);

int available_workers();

}  // namespace gojun

#endif  // GOJUN_KERNELS_HPP_
