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

#include "gojun/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gojun/error.hpp"

namespace gojun {

std::vector<double> SequenceScorer::logprob_batch(std::span<const std::string> texts) const {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(logprob(t));
  return out;
}

NGramScorer::NGramScorer(std::shared_ptr<const NGramModel> model) : model_(std::move(model)) {
  if (!model_) throw Error(ErrorCode::kInvalidArgument, "null n-gram model");
}

double NGramScorer::logprob(std::string_view text) const { return gojun::logprob(*model_, text); }

ExternalDirectionScorer::ExternalDirectionScorer(std::shared_ptr<ExternalScorerClient> client,
                                                 Direction direction)
    : client_(std::move(client)), direction_(direction) {
  if (!client_) throw Error(ErrorCode::kInvalidArgument, "null external scorer client");
}

double ExternalDirectionScorer::logprob(std::string_view text) const {
  const std::string one(text);
  return client_->score(std::span(&one, 1), direction_).front();
}

std::vector<double> ExternalDirectionScorer::logprob_batch(
    std::span<const std::string> texts) const {
  return client_->score(texts, direction_);
}

BidirectionalScorer BidirectionalScorer::from_models(NGramModel forward, NGramModel backward) {
  if (forward.direction() != Direction::kForward)
    throw Error(ErrorCode::kInvalidArgument, "forward model was trained as backward");
  if (backward.direction() != Direction::kBackward)
    throw Error(ErrorCode::kInvalidArgument, "backward model was trained as forward");
  if (forward.config().unit != backward.config().unit)
    throw Error(ErrorCode::kInvalidArgument, "forward and backward models use different units");
  BidirectionalScorer s;
  s.forward = std::make_shared<NGramScorer>(std::make_shared<const NGramModel>(std::move(forward)));
  s.backward =
      std::make_shared<NGramScorer>(std::make_shared<const NGramModel>(std::move(backward)));
  return s;
}

BidirectionalScorer BidirectionalScorer::from_external(
    std::shared_ptr<ExternalScorerClient> client) {
  BidirectionalScorer s;
  s.forward = std::make_shared<ExternalDirectionScorer>(client, Direction::kForward);
  s.backward = std::make_shared<ExternalDirectionScorer>(client, Direction::kBackward);
  return s;
}

bool BidirectionalScorer::pretokenized() const { return forward && forward->pretokenized(); }

std::string BidirectionalScorer::render(const Sentence& sentence) const {
  return pretokenized() ? render_units(sentence) : render_text(sentence);
}

ScoredVariant score(const BidirectionalScorer& scorer, std::string_view text) {
  ScoredVariant v;
  v.text = std::string(text);
  v.forward_logp = scorer.forward->logprob(text);
  v.backward_logp = scorer.backward->logprob(text);
  return v;
}

ComparisonResult rank_scored(std::vector<ScoredVariant> variants, double tie_epsilon) {
  if (variants.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "comparison needs at least two variants");
  if (!(tie_epsilon >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "tie epsilon must be non-negative");
  std::stable_sort(variants.begin(), variants.end(),
                   [](const ScoredVariant& a, const ScoredVariant& b) {
                     const double x = a.combined_logp(), y = b.combined_logp();
                     if (x != y) return x > y;
                     return a.label < b.label;
                   });
  ComparisonResult r;
  r.tie_epsilon = tie_epsilon;
  const double gap = variants[0].combined_logp() - variants[1].combined_logp();
  // Two -inf scores give NaN; they are indistinguishable, hence a tie.
  r.winner = (std::isnan(gap) || gap <= tie_epsilon) ? std::string(kTieLabel) : variants[0].label;
  r.variants = std::move(variants);
  return r;
}

ComparisonResult compare(const BidirectionalScorer& scorer, const VariantSet& set,
                         double tie_epsilon) {
  if (set.variants.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "comparison needs at least two variants");
  std::vector<std::string> texts;
  texts.reserve(set.variants.size());
  for (const auto& v : set.variants) texts.push_back(scorer.render(v.sentence));
  const auto fwd = scorer.forward->logprob_batch(texts);
  const auto bwd = scorer.backward->logprob_batch(texts);
  std::vector<ScoredVariant> scored(set.variants.size());
  for (std::size_t i = 0; i < scored.size(); ++i)
    scored[i] = {set.variants[i].label, std::move(texts[i]), fwd[i], bwd[i]};
  return rank_scored(std::move(scored), tie_epsilon);
}

}  // namespace gojun
