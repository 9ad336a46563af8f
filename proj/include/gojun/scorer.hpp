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

// Bidirectional sentence scoring. A sentence's score is the sum of a
// left-to-right and a right-to-left log-probability, i.e. the log of the
// product of the two generation probabilities.

#ifndef GOJUN_SCORER_HPP_
#define GOJUN_SCORER_HPP_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gojun/corpus.hpp"
#include "gojun/external.hpp"
#include "gojun/ngram.hpp"
#include "gojun/transform.hpp"

namespace gojun {

// One direction of a bidirectional scorer.
class SequenceScorer {
 public:
  virtual ~SequenceScorer() = default;

  virtual Direction direction() const = 0;
  virtual double logprob(std::string_view text) const = 0;
  // Defaults to one logprob() call per text.
  virtual std::vector<double> logprob_batch(std::span<const std::string> texts) const;
  // True if logprob() may be called from several threads at once.
  virtual bool concurrent() const { return true; }
  // True if the scorer expects space-separated units instead of raw text.
  virtual bool pretokenized() const { return false; }
};

class NGramScorer final : public SequenceScorer {
 public:
  explicit NGramScorer(std::shared_ptr<const NGramModel> model);

  Direction direction() const override { return model_->direction(); }
  double logprob(std::string_view text) const override;
  bool pretokenized() const override { return model_->config().unit == Unit::kPretokenized; }
  const NGramModel& model() const { return *model_; }

 private:
  std::shared_ptr<const NGramModel> model_;
};

// Sends every request of a batch down one external-scorer connection.
class ExternalDirectionScorer final : public SequenceScorer {
 public:
  ExternalDirectionScorer(std::shared_ptr<ExternalScorerClient> client, Direction direction);

  Direction direction() const override { return direction_; }
  double logprob(std::string_view text) const override;
  std::vector<double> logprob_batch(std::span<const std::string> texts) const override;
  bool concurrent() const override { return false; }

 private:
  std::shared_ptr<ExternalScorerClient> client_;
  Direction direction_;
};

struct BidirectionalScorer {
  std::shared_ptr<const SequenceScorer> forward;
  std::shared_ptr<const SequenceScorer> backward;

  // Throws INVALID_ARGUMENT unless the models are FORWARD and BACKWARD.
  static BidirectionalScorer from_models(NGramModel forward, NGramModel backward);
  static BidirectionalScorer from_external(std::shared_ptr<ExternalScorerClient> client);

  bool pretokenized() const;
  // The string handed to both directions for a sentence.
  std::string render(const Sentence& sentence) const;
};

struct ScoredVariant {
  std::string label;
  std::string text;
  double forward_logp = 0.0;
  double backward_logp = 0.0;

  double combined_logp() const { return forward_logp + backward_logp; }
};

inline constexpr std::string_view kTieLabel = "TIE";
inline constexpr double kDefaultTieEpsilon = 1e-9;

struct ComparisonResult {
  // Descending by combined_logp; equal scores ordered by label.
  std::vector<ScoredVariant> variants;
  // Label of the best variant, or "TIE".
  std::string winner;
  double tie_epsilon = kDefaultTieEpsilon;

  bool is_tie() const { return winner == kTieLabel; }
};

ScoredVariant score(const BidirectionalScorer& scorer, std::string_view text);

// Sorts and picks the winner. Throws INVALID_ARGUMENT for fewer than two
// variants or a negative epsilon.
ComparisonResult rank_scored(std::vector<ScoredVariant> variants, double tie_epsilon);

ComparisonResult compare(const BidirectionalScorer& scorer, const VariantSet& set,
                         double tie_epsilon = kDefaultTieEpsilon);

}  // namespace gojun

#endif  // GOJUN_SCORER_HPP_
