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

#include <algorithm>
#include <set>

#include "doctest.h"

#include "fixtures.hpp"
#include "gojun/error.hpp"
#include "gojun/transform.hpp"

using namespace gojun;
using gojun::testing::ChunkSpec;
using gojun::testing::make_sentence;
using gojun::testing::random_tree_sentence;
using gojun::testing::teacher_gave_book;

namespace {

std::multiset<std::string> surfaces(const Sentence& s) {
  std::multiset<std::string> out;
  for (const Chunk& c : s.chunks) out.insert(c.surface());
  return out;
}

bool verb_final(const Sentence& s) {
  return !s.chunks.empty() && s.chunks.back().is_root() &&
         s.chunks.back().case_role == CaseRole::kPredicate;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gojun::Error");
  return ErrorCode::kInvariant;
}

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST_CASE("particle rule table") {
  const auto rules = ParticleRules::standard();
  CHECK(apply_rule(rules.rule_for("が", "は")) == "は");
  CHECK(apply_rule(rules.rule_for("を", "は")) == "は");
  CHECK(apply_rule(rules.rule_for("に", "は")) == "には");
  CHECK(apply_rule(rules.rule_for("で", "は")) == "では");
  CHECK(apply_rule(rules.rule_for("を", "も")) == "も");
  CHECK(apply_rule(rules.rule_for("に", "こそ")) == "にこそ");
  CHECK_FALSE(rules.supports("の"));
  CHECK(code_of([&] { rules.rule_for("の", "は"); }) == ErrorCode::kUnsupportedParticle);
  CHECK(code_of([&] { rules.rule_for("が", ""); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("subtree and reorder") {
  const Sentence s = random_tree_sentence(11);
  const std::size_t root = s.root_index();
  CHECK(subtree(s, root).size() == s.chunks.size());
  for (std::size_t i = 0; i < s.chunks.size(); ++i) {
    const auto st = subtree(s, i);
    CHECK(std::find(st.begin(), st.end(), i) != st.end());
    CHECK(std::is_sorted(st.begin(), st.end()));
  }
  std::vector<std::size_t> identity(s.chunks.size());
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(reorder(s, identity) == s);
}

TEST_CASE("swap_cases exchanges the DAT and ACC blocks") {
  const Sentence s = teacher_gave_book();
  const Sentence t = swap_cases(s, CaseRole::kDat, CaseRole::kAcc);
  CHECK(render_text(t, " ") == "先生が 本を 生徒に あげた");
  CHECK(t.chunks[1].case_role == CaseRole::kAcc);
  CHECK(t.chunks[1].head == 3);
  CHECK(swap_cases(t, CaseRole::kDat, CaseRole::kAcc) == s);
  CHECK(code_of([&] { swap_cases(s, CaseRole::kDat, CaseRole::kTim); }) ==
        ErrorCode::kRoleNotUnique);
}

TEST_CASE("enumerate_orders lists k! distinct orders with the identity first") {
  const Sentence s = teacher_gave_book();
  const VariantSet set = enumerate_orders(s, s.root_index());
  CHECK(set.variants.size() == 6);
  CHECK(set.variants.front().label == "123");
  CHECK(set.variants.front().sentence == s);
  std::set<std::string> texts;
  for (const auto& v : set.variants) texts.insert(render_text(v.sentence));
  CHECK(texts.size() == 6);
  CHECK_NOTHROW(validate(set));
}

TEST_CASE("order cap") {
  CHECK_NOTHROW(check_order_cap(7));
  try {
    check_order_cap(8);
    FAIL("expected TOO_MANY_ORDERS");
  } catch (const TooManyOrders& e) {
    CHECK(e.children() == 8);
  }
  const Sentence s = teacher_gave_book();
  CHECK(code_of([&] { enumerate_orders(s, s.root_index(), 5); }) == ErrorCode::kTooManyOrders);
  CHECK(code_of([&] { enumerate_orders(s, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("scramble never returns the original and is seed-deterministic") {
  const Sentence s = teacher_gave_book();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Sentence t = scramble(s, seed);
    CHECK(t != s);
    CHECK(t == scramble(s, seed));
    CHECK(surfaces(t) == surfaces(s));
  }
  const Sentence lone = make_sentence("x", {{"本", "を", CaseRole::kAcc}}, "読む");
  CHECK(code_of([&] { scramble(lone, 1); }) == ErrorCode::kNoScrambleSite);
}

TEST_CASE("topicalization follows the particle table") {
  const Sentence s = teacher_gave_book();
  CHECK(render_text(topicalize(s, CaseRole::kAcc)) == "本は先生が生徒にあげた");
  CHECK(render_text(topicalize(s, CaseRole::kNom)) == "先生は生徒に本をあげた");
  CHECK(render_text(topicalize(s, CaseRole::kDat)) == "生徒には先生が本をあげた");
  const Sentence t = topicalize(s, CaseRole::kAcc);
  CHECK(t.chunks.front().case_role == CaseRole::kTop);
  CHECK(t.chunks.front().particle() == std::optional<std::string>("は"));
  CHECK(verb_final(t));

  const Sentence loc = make_sentence(
      "loc", {{"公園", "で", CaseRole::kLoc}, {"子供", "が", CaseRole::kNom}}, "遊んだ");
  CHECK(render_text(topicalize(loc, CaseRole::kLoc)) == "公園では子供が遊んだ");

  const Sentence conj = make_sentence(
      "c", {{"しかし", "", CaseRole::kOther, -2, "conj"}, {"本", "を", CaseRole::kAcc}}, "読んだ");
  CHECK(code_of([&] { topicalize(conj, CaseRole::kAcc); }) == ErrorCode::kConjunctionInitial);
}

TEST_CASE("adverbial particle substitution, moved and in place") {
  const Sentence s = make_sentence(
      "ex13", {{"生徒", "に", CaseRole::kDat}, {"本", "を", CaseRole::kAcc}}, "あげた");
  CHECK(render_text(substitute_adverbial_particle(s, CaseRole::kAcc, "も", false)) ==
        "生徒に本もあげた");
  CHECK(render_text(substitute_adverbial_particle(s, CaseRole::kAcc, "も", true)) ==
        "本も生徒にあげた");
  CHECK(render_text(substitute_adverbial_particle(s, CaseRole::kDat, "だけ", false)) ==
        "生徒にだけ本をあげた");
  CHECK(code_of([&] { substitute_adverbial_particle(s, CaseRole::kAcc, "さえ", true); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("fused particle tokens are rewritten in place") {
  Sentence s = make_sentence("f", {{"先生が", "", CaseRole::kNom}, {"本", "を", CaseRole::kAcc}},
                             "読んだ");
  s.chunks[0].tokens[0].particle = "が";
  CHECK(render_text(topicalize(s, CaseRole::kNom)) == "先生は本を読んだ");
}

TEST_CASE("move_to_front keeps subtrees together") {
  // の-modifier 赤い depends on 本を.
  const Sentence s = make_sentence("m",
                                   {{"先生", "が", CaseRole::kNom},
                                    {"赤い", "", CaseRole::kOther, 2},
                                    {"本", "を", CaseRole::kAcc}},
                                   "読んだ");
  const Sentence t = move_to_front(s, 2);
  CHECK(render_text(t, " ") == "赤い 本を 先生が 読んだ");
  CHECK(t.chunks[0].head == 1);
  CHECK(move_to_front(s, 0) == s);
  CHECK(code_of([&] { move_to_front(s, 3); }) == ErrorCode::kNotMovable);
}

TEST_CASE("transform invariants on random trees") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Sentence s = random_tree_sentence(seed);
    REQUIRE_NOTHROW(validate(s));
    REQUIRE(descendants_contiguous(s));
    const auto base = surfaces(s);

    const Sentence sc = scramble(s, seed);
    CHECK(surfaces(sc) == base);
    CHECK(verb_final(sc));
    CHECK(descendants_contiguous(sc));
    CHECK_NOTHROW(validate(sc));

    const auto set = enumerate_orders(s, s.root_index());
    const std::size_t k = s.children(s.root_index()).size();
    CHECK(set.variants.size() == factorial(k));
    std::set<std::string> distinct;
    for (const auto& v : set.variants) {
      distinct.insert(render_text(v.sentence));
      CHECK(surfaces(v.sentence) == base);
      CHECK(verb_final(v.sentence));
      CHECK(descendants_contiguous(v.sentence));
    }
    CHECK(distinct.size() == factorial(k));

    for (CaseRole r : {CaseRole::kTim, CaseRole::kLoc, CaseRole::kNom, CaseRole::kDat,
                       CaseRole::kAcc}) {
      if (s.find_role(r).size() != 1) continue;
      const std::size_t i = s.find_role(r).front();
      const std::string particle =
          apply_rule(ParticleRules::standard().rule_for(*s.chunks[i].particle(), "は"));
      const Sentence t = topicalize(s, r);
      auto expected = base;
      expected.erase(expected.find(s.chunks[i].surface()));
      expected.insert(s.chunks[i].stem() + particle);
      CHECK(surfaces(t) == expected);
      CHECK(verb_final(t));
      CHECK(descendants_contiguous(t));
      const std::size_t moved = subtree(s, i).size() - 1;
      CHECK(t.chunks[moved].case_role == CaseRole::kTop);
      CHECK(t.chunks[moved].particle() == std::optional<std::string>(particle));
    }
  }
}
