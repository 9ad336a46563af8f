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

#include "fixtures.hpp"

#include "gojun/random.hpp"
#include "gojun/text.hpp"

namespace gojun::testing {

namespace {

const std::vector<std::string>& kana() {
  static const std::vector<std::string> k =
      utf8_chars("あいうえおかきくけこさしすせそたちつてとなぬねのはひふへほまみむめもやゆよらりるれろ");
  return k;
}

struct TreeBuilder {
  Sentence& s;
  Rng& rng;
  std::set<std::string> used;

  std::string fresh_stem() {
    for (;;) {
      std::string stem;
      const std::size_t len = 1 + rng.uniform_index(3);
      for (std::size_t i = 0; i < len; ++i) stem += kana()[rng.uniform_index(kana().size())];
      if (used.insert(stem).second) return stem;
    }
  }

  // Appends the subtree and returns the index of its head chunk.
  int emit(int depth, CaseRole role, const std::string& particle) {
    std::vector<int> kids;
    const std::size_t n_kids = depth > 0 ? rng.uniform_index(3) : 0;
    for (std::size_t i = 0; i < n_kids; ++i) kids.push_back(emit(depth - 1, CaseRole::kOther, "の"));
    Chunk c;
    c.tokens.push_back(Token{fresh_stem(), "noun", std::nullopt, {}});
    c.tokens.push_back(Token{particle, "particle", particle, {}});
    c.case_role = role;
    s.chunks.push_back(std::move(c));
    const int me = static_cast<int>(s.chunks.size()) - 1;
    for (int k : kids) s.chunks[k].head = me;
    return me;
  }
};

}  // namespace

Sentence random_tree_sentence(std::uint64_t seed, int max_children) {
  Rng rng(seed);
  Sentence s;
  s.id = "tree-" + std::to_string(seed);
  std::vector<std::pair<CaseRole, std::string>> roles{{CaseRole::kTim, "に"},
                                                      {CaseRole::kLoc, "で"},
                                                      {CaseRole::kNom, "が"},
                                                      {CaseRole::kDat, "に"},
                                                      {CaseRole::kAcc, "を"}};
  rng.shuffle(roles);
  const int cap = std::min<int>(max_children, static_cast<int>(roles.size()));
  const int k = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cap - 1)));
  TreeBuilder b{s, rng, {}};
  std::vector<int> args;
  for (int i = 0; i < k; ++i) args.push_back(b.emit(2, roles[i].first, roles[i].second));
  Chunk p;
  p.tokens.push_back(Token{b.fresh_stem() + "る", "verb", std::nullopt, {}});
  p.case_role = CaseRole::kPredicate;
  s.chunks.push_back(std::move(p));
  const int root = static_cast<int>(s.chunks.size()) - 1;
  for (int a : args) s.chunks[a].head = root;
  s.verb_lemma = s.chunks.back().tokens.front().surface;
  return s;
}

Sentence make_sentence(const std::string& id, const std::vector<ChunkSpec>& args,
                       const std::string& verb) {
  Sentence s;
  s.id = id;
  const int predicate = static_cast<int>(args.size());
  for (const ChunkSpec& a : args) {
    Chunk c;
    Token stem{a.stem, a.pos, std::nullopt, a.sem};
    c.tokens.push_back(stem);
    if (!a.particle.empty()) c.tokens.push_back(Token{a.particle, "particle", a.particle, {}});
    c.head = a.head == kAttachToPredicate ? predicate : a.head;
    c.case_role = a.role;
    c.adverb_type = a.adverb_type;
    s.chunks.push_back(std::move(c));
  }
  Chunk p;
  p.tokens.push_back(Token{verb, "verb", std::nullopt, {}});
  p.case_role = CaseRole::kPredicate;
  s.chunks.push_back(std::move(p));
  s.verb_lemma = verb;
  return s;
}

Sentence teacher_gave_book() {
  return make_sentence("ex8",
                       {{"先生", "が", CaseRole::kNom, kAttachToPredicate, "noun", std::nullopt,
                         {"animate"}},
                        {"生徒", "に", CaseRole::kDat, kAttachToPredicate, "noun", std::nullopt,
                         {"animate"}},
                        {"本", "を", CaseRole::kAcc, kAttachToPredicate, "noun", std::nullopt,
                         {"inanimate"}}},
                       "あげた");
}

BidirectionalScorer train_pair(const std::vector<std::string>& lines, int order,
                               double discount) {
  NGramConfig config;
  config.order = order;
  config.discount = discount;
  NGramModel fwd = train_ngram(lines, config);
  config.direction = Direction::kBackward;
  NGramModel bwd = train_ngram(lines, config);
  return BidirectionalScorer::from_models(std::move(fwd), std::move(bwd));
}

namespace {

class FunctionScorer final : public SequenceScorer {
 public:
  FunctionScorer(Direction dir, std::function<double(const std::string&)> f)
      : dir_(dir), f_(std::move(f)) {}
  Direction direction() const override { return dir_; }
  double logprob(std::string_view text) const override { return f_(std::string(text)); }

 private:
  Direction dir_;
  std::function<double(const std::string&)> f_;
};

}  // namespace

BidirectionalScorer function_scorer(std::function<double(const std::string&)> f) {
  return {std::make_shared<FunctionScorer>(Direction::kForward, std::move(f)),
          std::make_shared<FunctionScorer>(Direction::kBackward,
                                           [](const std::string&) { return 0.0; })};
}

int canonical_inversions(const std::string& text) {
  static const std::vector<std::string> pools = {"あいうえお", "かきくけこ", "さしすせそ",
                                                 "たちつてと", "まみむめも"};
  std::vector<int> ranks;
  for (const auto& ch : utf8_chars(text))
    for (std::size_t r = 0; r < pools.size(); ++r)
      if (pools[r].find(ch) != std::string::npos) {
        if (ranks.empty() || ranks.back() != static_cast<int>(r)) ranks.push_back(static_cast<int>(r));
        break;
      }
  int inversions = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (std::size_t j = i + 1; j < ranks.size(); ++j)
      if (ranks[i] > ranks[j]) ++inversions;
  return inversions;
}

std::vector<std::string> render_all(const std::vector<Sentence>& corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.size());
  for (const Sentence& s : corpus) out.push_back(render_text(s));
  return out;
}

}  // namespace gojun::testing
