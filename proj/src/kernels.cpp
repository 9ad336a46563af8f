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

#include "gojun/kernels.hpp"

#include <omp.h>

#include <exception>

#include "gojun/error.hpp"

namespace gojun {

std::vector<ScorePair> score_texts_serial(const BidirectionalScorer& scorer,
                                          std::span<const std::string> texts) {
  const auto fwd = scorer.forward->logprob_batch(texts);
  const auto bwd = scorer.backward->logprob_batch(texts);
  std::vector<ScorePair> out(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) out[i] = {fwd[i], bwd[i]};
  return out;
}

std::vector<ScorePair> score_texts_parallel(const BidirectionalScorer& scorer,
                                            std::span<const std::string> texts, int workers) {
  if (workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
  std::vector<ScorePair> out(texts.size());
  std::exception_ptr failure;
  const SequenceScorer& fwd = *scorer.forward;
  const SequenceScorer& bwd = *scorer.backward;
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = {fwd.logprob(texts[i]), bwd.logprob(texts[i])};
    } catch (...) {
#pragma omp critical(gojun_score_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<ScorePair> score_texts(const BidirectionalScorer& scorer,
                                   std::span<const std::string> texts, int workers) {
  if (workers > 1 && scorer.forward->concurrent() && scorer.backward->concurrent())
    return score_texts_parallel(scorer, texts, workers);
  return score_texts_serial(scorer, texts);
}

std::vector<ComparisonResult> compare_many(const BidirectionalScorer& scorer,
                                           std::span<const VariantSet> sets, double tie_epsilon,
                                           int workers) {
  std::vector<std::string> texts;
  std::vector<std::size_t> offsets;
  offsets.reserve(sets.size() + 1);
  for (const auto& set : sets) {
    if (set.variants.size() < 2)
      throw Error(ErrorCode::kInvalidArgument, "comparison needs at least two variants");
    offsets.push_back(texts.size());
    for (const auto& v : set.variants) texts.push_back(scorer.render(v.sentence));
  }
  offsets.push_back(texts.size());
  const auto scores = score_texts(scorer, texts, workers);
  std::vector<ComparisonResult> results;
  results.reserve(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<ScoredVariant> scored;
    scored.reserve(sets[s].variants.size());
    for (std::size_t i = offsets[s]; i < offsets[s + 1]; ++i)
      scored.push_back({sets[s].variants[i - offsets[s]].label, std::move(texts[i]),
                        scores[i].forward, scores[i].backward});
    results.push_back(rank_scored(std::move(scored), tie_epsilon));
  }
  return results;
}

int available_workers() { return omp_get_max_threads(); }

}  // namespace gojun
