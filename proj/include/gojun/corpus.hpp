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

// Annotated-sentence data model: chunks (bunsetsu) with chunk-level
// dependency heads and case roles, plus the JSONL / CoNLL-U readers and the
// sentence filter used before scrambling.

#ifndef GOJUN_CORPUS_HPP_
#define GOJUN_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gojun {

enum class CaseRole { kTop, kTim, kLoc, kNom, kDat, kAcc, kAdverb, kPredicate, kOther };
enum class AdverbType { kModal, kTime, kManner, kResultive };

std::string_view to_string(CaseRole role);
std::string_view to_string(AdverbType type);
std::optional<CaseRole> parse_case_role(std::string_view text);
std::optional<AdverbType> parse_adverb_type(std::string_view text);

inline constexpr int kRootHead = -1;

// Allowed semantic tags. A token carries at most one of animate/inanimate.
inline constexpr std::string_view kSemTime = "time";
inline constexpr std::string_view kSemLocation = "location";
inline constexpr std::string_view kSemAnimate = "animate";
inline constexpr std::string_view kSemInanimate = "inanimate";

struct Token {
  std::string surface;
  std::string pos;
  // Set on the token that realizes the chunk's postpositional particle. The
  // surface either equals the particle (standalone token) or ends with it.
  std::optional<std::string> particle;
  std::set<std::string> semantic_tags;

  bool operator==(const Token&) const = default;
};

struct Chunk {
  std::vector<Token> tokens;
  int head = kRootHead;
  CaseRole case_role = CaseRole::kOther;
  std::optional<AdverbType> adverb_type;

  bool operator==(const Chunk&) const = default;

  bool is_root() const { return head == kRootHead; }
  std::string surface() const;
  // Particle of the final token, if any.
  const std::optional<std::string>& particle() const;
  // Surface with the final particle removed; the head noun for co-occurrence.
  std::string stem() const;
  bool has_tag(std::string_view tag) const;
};

struct Sentence {
  std::string id;
  std::vector<Chunk> chunks;
  std::optional<std::string> verb_lemma;

  bool operator==(const Sentence&) const = default;

  // Index of the ROOT chunk. Assumes a validated sentence.
  std::size_t root_index() const;
  // Direct dependents of chunk `index`, in left-to-right order.
  std::vector<std::size_t> children(std::size_t index) const;
  // Chunk indices with the given role, in order.
  std::vector<std::size_t> find_role(CaseRole role) const;
};

// Throws Error(kInvariant) naming the violated invariant and the sentence id.
void validate(const Sentence& sentence);

// True if every chunk's subtree occupies a contiguous span of positions.
bool descendants_contiguous(const Sentence& sentence);

Sentence sentence_from_json(const nlohmann::json& value);
nlohmann::json to_json(const Sentence& sentence);

std::vector<Sentence> read_jsonl(std::istream& in, std::string_view source_name);
std::vector<Sentence> load_jsonl(const std::filesystem::path& path);
void write_jsonl(std::ostream& out, std::span<const Sentence> sentences);
void save_jsonl(const std::filesystem::path& path, std::span<const Sentence> sentences);

// CoNLL-U with chunk annotation in MISC: Chunk=<int>|Role=<ROLE>|Sem=<t,...>.
// Optional MISC keys: AdvType=<TYPE>, Particle=<str>. Tokens with UPOS ADP
// are treated as particles unless Particle= says otherwise.
std::vector<Sentence> read_conllu(std::istream& in, std::string_view source_name);
std::vector<Sentence> import_conllu(const std::filesystem::path& path);

struct FilterCriteria {
  int max_clauses = 5;
  bool require_single_predicate = true;
  bool require_sibling_chunks_with_particle_or_adverb = true;
  std::vector<std::string> forbid_symbols = default_forbidden_symbols();
  bool forbid_backward_dependency = true;
  // ROOT must be the last chunk and carry PREDICATE.
  bool require_final_predicate_root = true;

  static std::vector<std::string> default_forbidden_symbols();
};

// Number of chunks that head a clause (PREDICATE role or verb POS).
int count_clauses(const Sentence& sentence);
bool satisfies(const Sentence& sentence, const FilterCriteria& criteria);
std::vector<Sentence> filter_sentences(std::span<const Sentence> sentences,
                                       const FilterCriteria& criteria = {});

std::string render_text(const Sentence& sentence, std::string_view separator = "");
// Every token surface joined by one space, for pre-tokenized (subword) models.
std::string render_units(const Sentence& sentence);

bool is_verb_pos(std::string_view pos);
bool is_adverb_pos(std::string_view pos);
bool is_conjunction_pos(std::string_view pos);

enum class PreferenceLabel { kPrefer1, kPrefer2, kBroken };

std::string_view to_string(PreferenceLabel label);
std::optional<PreferenceLabel> parse_preference_label(std::string_view text);

struct PreferencePair {
  std::string id;
  Sentence order1;
  Sentence order2;
  std::vector<PreferenceLabel> worker_labels;
  std::optional<PreferenceLabel> gold;
};

// Majority label when no label is BROKEN and at least ceil(0.9 n) agree.
std::optional<PreferenceLabel> gold_label(std::span<const PreferenceLabel> labels);

std::vector<PreferencePair> read_preference_pairs(std::istream& in, std::string_view source_name);
std::vector<PreferencePair> load_preference_pairs(const std::filesystem::path& path);
nlohmann::json to_json(const PreferencePair& pair);

}  // namespace gojun

#endif  // GOJUN_CORPUS_HPP_
