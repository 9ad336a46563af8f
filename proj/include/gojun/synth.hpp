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

// Synthetic case-marked corpora with a known canonical argument order.

#ifndef GOJUN_SYNTH_HPP_
#define GOJUN_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "gojun/corpus.hpp"

namespace gojun {

struct SynthNoun {
  std::string stem;
  std::set<std::string> semantic_tags;
  // Required for ADVERB entries.
  std::optional<AdverbType> adverb_type;

  bool operator==(const SynthNoun&) const = default;
};

struct GrammarSpec {
  // The true canonical order.
  std::vector<CaseRole> roles;
  std::map<CaseRole, std::vector<SynthNoun>> vocab;
  // Every role except ADVERB needs a particle.
  std::map<CaseRole, std::string> particles;
  std::vector<std::string> verbs;
  double order_adherence = 1.0;
  std::map<CaseRole, double> omission_prob;
  std::uint64_t seed = 0;

  // Throws INVALID_ARGUMENT naming the offending field.
  void validate() const;

  // JSON form:
  //   {"roles": ["NOM", "ACC"], "vocab": {"NOM": ["ka", {"stem": "ki",
  //    "sem": ["animate"]}]}, "particles": {"NOM": "が"}, "verbs": ["ta"],
  //    "order_adherence": 0.9, "omission_prob": {"ACC": 0.1}, "seed": 7}
  static GrammarSpec from_json(const nlohmann::json& value);
  nlohmann::json to_json() const;
  static GrammarSpec load(const std::filesystem::path& path);

  // Five roles TIM, LOC, NOM, DAT, ACC with disjoint per-role stem alphabets
  // and the usual particles (TIM and DAT share に).
  static GrammarSpec standard(double order_adherence, std::uint64_t seed);
};

// Each sentence draws a verb and a role subset (at least two roles), keeps
// the canonical order with probability order_adherence and otherwise swaps
// one random adjacent pair. Arguments attach to the final predicate.
// Sentence i depends only on (spec, i).
std::vector<Sentence> generate_corpus(const GrammarSpec& spec, std::size_t n);

// True if the argument roles of `s` appear in the order of spec.roles.
bool is_canonical(const Sentence& s, const GrammarSpec& spec);

}  // namespace gojun

#endif  // GOJUN_SYNTH_HPP_
