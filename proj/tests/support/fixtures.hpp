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

// Sentence builders shared by the unit and acceptance tests.

#ifndef GOJUN_TESTS_FIXTURES_HPP_
#define GOJUN_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gojun/corpus.hpp"
#include "gojun/ngram.hpp"
#include "gojun/scorer.hpp"

namespace gojun::testing {

inline constexpr int kAttachToPredicate = -2;

struct ChunkSpec {
  std::string stem;
  std::string particle;  // empty: no particle token
  CaseRole role = CaseRole::kOther;
  int head = kAttachToPredicate;
  std::string pos = "noun";
  std::optional<AdverbType> adverb_type = std::nullopt;
  std::set<std::string> sem = {};
};

// Argument chunks in order followed by a final predicate chunk holding
// `verb`. Chunks with kAttachToPredicate depend on the predicate.
Sentence make_sentence(const std::string& id, const std::vector<ChunkSpec>& args,
                       const std::string& verb);

// 先生が 生徒に 本を あげた
Sentence teacher_gave_book();

// Random verb-final projective tree. The predicate governs 2..max_children
// arguments with distinct roles drawn from TIM, LOC, NOM, DAT, ACC; each
// argument may carry nested の-modifiers. Chunk surfaces are unique.
Sentence random_tree_sentence(std::uint64_t seed, int max_children = 5);

// Forward and backward character models trained on `lines`.
BidirectionalScorer train_pair(const std::vector<std::string>& lines, int order,
                               double discount = 0.75);

// Forward direction scores text with `f`; backward scores 0 for all text.
BidirectionalScorer function_scorer(std::function<double(const std::string&)> f);

// Number of out-of-order role pairs in a rendered synthetic sentence,
// judged by the per-role stem alphabets of GrammarSpec::standard.
int canonical_inversions(const std::string& text);

// Rendered text of every sentence.
std::vector<std::string> render_all(const std::vector<Sentence>& corpus);

}  // namespace gojun::testing

#endif  // GOJUN_TESTS_FIXTURES_HPP_
