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

#include "gojun/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "gojun/error.hpp"
#include "gojun/text.hpp"

namespace gojun {

namespace {

constexpr std::array<std::pair<CaseRole, std::string_view>, 9> kRoleNames{{
    {CaseRole::kTop, "TOP"},
    {CaseRole::kTim, "TIM"},
    {CaseRole::kLoc, "LOC"},
    {CaseRole::kNom, "NOM"},
    {CaseRole::kDat, "DAT"},
    {CaseRole::kAcc, "ACC"},
    {CaseRole::kAdverb, "ADVERB"},
    {CaseRole::kPredicate, "PREDICATE"},
    {CaseRole::kOther, "OTHER"},
}};

constexpr std::array<std::pair<AdverbType, std::string_view>, 4> kAdverbNames{{
    {AdverbType::kModal, "MODAL"},
    {AdverbType::kTime, "TIME"},
    {AdverbType::kManner, "MANNER"},
    {AdverbType::kResultive, "RESULTIVE"},
}};

[[noreturn]] void invariant_failure(const Sentence& s, const std::string& what) {
  throw Error(ErrorCode::kInvariant, "sentence '" + s.id + "': " + what);
}

bool is_allowed_tag(std::string_view tag) {
  return tag == kSemTime || tag == kSemLocation || tag == kSemAnimate || tag == kSemInanimate;
}

bool pos_in(std::string_view pos, std::initializer_list<std::string_view> names) {
  std::string lowered = ascii_lower(pos);
  return std::any_of(names.begin(), names.end(),
                     [&](std::string_view n) { return lowered == n; });
}

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(CaseRole role) {
  for (const auto& [r, name] : kRoleNames)
    if (r == role) return name;
  return "OTHER";
}

std::string_view to_string(AdverbType type) {
  for (const auto& [t, name] : kAdverbNames)
    if (t == type) return name;
  return "MODAL";
}

std::optional<CaseRole> parse_case_role(std::string_view text) {
  for (const auto& [r, name] : kRoleNames)
    if (name == text) return r;
  return std::nullopt;
}

std::optional<AdverbType> parse_adverb_type(std::string_view text) {
  for (const auto& [t, name] : kAdverbNames)
    if (name == text) return t;
  return std::nullopt;
}

std::string Chunk::surface() const {
  std::string out;
  for (const auto& t : tokens) out += t.surface;
  return out;
}

const std::optional<std::string>& Chunk::particle() const {
  static const std::optional<std::string> none;
  return tokens.empty() ? none : tokens.back().particle;
}

std::string Chunk::stem() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (i + 1 == tokens.size() && t.particle) {
      if (t.surface == *t.particle) break;
      if (ends_with(t.surface, *t.particle)) {
        out += t.surface.substr(0, t.surface.size() - t.particle->size());
        break;
      }
    }
    out += t.surface;
  }
  return out;
}

bool Chunk::has_tag(std::string_view tag) const {
  return std::any_of(tokens.begin(), tokens.end(), [&](const Token& t) {
    return t.semantic_tags.count(std::string(tag)) > 0;
  });
}

std::size_t Sentence::root_index() const {
  for (std::size_t i = 0; i < chunks.size(); ++i)
    if (chunks[i].is_root()) return i;
  throw Error(ErrorCode::kInvariant, "sentence '" + id + "': no ROOT chunk");
}

std::vector<std::size_t> Sentence::children(std::size_t index) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chunks.size(); ++i)
    if (chunks[i].head == static_cast<int>(index)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Sentence::find_role(CaseRole role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chunks.size(); ++i)
    if (chunks[i].case_role == role) out.push_back(i);
  return out;
}

void validate(const Sentence& s) {
  const int n = static_cast<int>(s.chunks.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Chunk& c = s.chunks[i];
    const std::string where = "chunk " + std::to_string(i) + ": ";
    if (c.tokens.empty()) invariant_failure(s, where + "chunk tokens must be non-empty");
    for (const Token& t : c.tokens) {
      if (t.surface.empty()) invariant_failure(s, where + "token surface must be non-empty");
      for (const auto& tag : t.semantic_tags)
        if (!is_allowed_tag(tag)) invariant_failure(s, where + "unknown semantic tag '" + tag + "'");
      if (t.semantic_tags.count(std::string(kSemAnimate)) &&
          t.semantic_tags.count(std::string(kSemInanimate)))
        invariant_failure(s, where + "token is both animate and inanimate");
    }
    if (c.adverb_type && c.case_role != CaseRole::kAdverb)
      invariant_failure(s, where + "adverb_type present on a non-ADVERB chunk");
    if (c.head == i) invariant_failure(s, where + "head equals own index");
    if (c.head < kRootHead || c.head >= n)
      invariant_failure(s, where + "head index " + std::to_string(c.head) + " out of range");
    if (c.is_root()) ++roots;
  }
  if (roots != 1)
    invariant_failure(s, "exactly one ROOT chunk required, found " + std::to_string(roots));
  // Every chain of heads must reach ROOT within n steps.
  for (int i = 0; i < n; ++i) {
    int cur = i;
    for (int steps = 0; cur != kRootHead; ++steps) {
      if (steps > n) invariant_failure(s, "dependency cycle through chunk " + std::to_string(i));
      cur = s.chunks[cur].head;
    }
  }
}

bool descendants_contiguous(const Sentence& s) {
  const std::size_t n = s.chunks.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i, hi = i, size = 0;
    for (std::size_t j = 0; j < n; ++j) {
      // j is in the subtree of i if i is on j's head chain.
      int cur = static_cast<int>(j);
      bool inside = false;
      for (std::size_t steps = 0; cur != kRootHead && steps <= n; ++steps) {
        if (cur == static_cast<int>(i)) {
          inside = true;
          break;
        }
        cur = s.chunks[cur].head;
      }
      if (!inside) continue;
      ++size;
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
    if (hi - lo + 1 != size) return false;
  }
  return true;
}

Sentence sentence_from_json(const nlohmann::json& v) {
  if (!v.is_object()) throw Error(ErrorCode::kParse, "sentence record must be a JSON object");
  Sentence s;
  try {
    s.id = v.at("id").get<std::string>();
    s.verb_lemma = optional_string(v, "verb_lemma");
    for (const auto& jc : v.at("chunks")) {
      Chunk c;
      c.head = jc.at("head").get<int>();
      const auto role_name = jc.at("role").get<std::string>();
      auto role = parse_case_role(role_name);
      if (!role) throw Error(ErrorCode::kParse, "unknown role '" + role_name + "'");
      c.case_role = *role;
      if (auto adv = optional_string(jc, "adverb_type")) {
        auto type = parse_adverb_type(*adv);
        if (!type) throw Error(ErrorCode::kParse, "unknown adverb_type '" + *adv + "'");
        c.adverb_type = type;
      }
      for (const auto& jt : jc.at("tokens")) {
        Token t;
        t.surface = jt.at("surface").get<std::string>();
        t.pos = jt.value("pos", std::string());
        t.particle = optional_string(jt, "particle");
        if (auto it = jt.find("sem"); it != jt.end() && !it->is_null())
          for (const auto& tag : *it) t.semantic_tags.insert(tag.get<std::string>());
        c.tokens.push_back(std::move(t));
      }
      s.chunks.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return s;
}

nlohmann::json to_json(const Sentence& s) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const Chunk& c : s.chunks) {
    nlohmann::json tokens = nlohmann::json::array();
    for (const Token& t : c.tokens) {
      tokens.push_back({{"surface", t.surface},
                        {"pos", t.pos},
                        {"particle", t.particle ? nlohmann::json(*t.particle) : nlohmann::json()},
                        {"sem", t.semantic_tags}});
    }
    chunks.push_back(
        {{"head", c.head},
         {"role", to_string(c.case_role)},
         {"adverb_type",
          c.adverb_type ? nlohmann::json(to_string(*c.adverb_type)) : nlohmann::json()},
         {"tokens", std::move(tokens)}});
  }
  nlohmann::json out;
  out["id"] = s.id;
  out["verb_lemma"] = s.verb_lemma ? nlohmann::json(*s.verb_lemma) : nlohmann::json();
  out["chunks"] = std::move(chunks);
  return out;
}

std::vector<Sentence> read_jsonl(std::istream& in, std::string_view source_name) {
  std::vector<Sentence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(lineno) + ": ";
    Sentence s;
    try {
      s = sentence_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
    try {
      validate(s);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvariant, where + e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return read_jsonl(in, path.string());
}

void write_jsonl(std::ostream& out, std::span<const Sentence> sentences) {
  for (const Sentence& s : sentences) out << to_json(s).dump() << '\n';
}

void save_jsonl(const std::filesystem::path& path, std::span<const Sentence> sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  write_jsonl(out, sentences);
}

// --- CoNLL-U ---------------------------------------------------------------

namespace {

struct ConlluToken {
  int id = 0;
  std::string form;
  std::string upos;
  int head = 0;
  std::map<std::string, std::string> misc;
};

std::map<std::string, std::string> parse_misc(std::string_view field) {
  std::map<std::string, std::string> out;
  if (field == "_") return out;
  for (const auto& item : split(field, '|')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

Sentence build_conllu_sentence(const std::vector<ConlluToken>& toks, std::string id,
                               std::optional<std::string> verb_lemma, const std::string& where) {
  Sentence s;
  s.id = std::move(id);
  s.verb_lemma = std::move(verb_lemma);

  // Group contiguous tokens by their Chunk= label.
  std::vector<int> chunk_of(toks.size() + 1, -1);  // by CoNLL-U token id
  std::map<std::string, int> seen;
  std::vector<bool> role_seen;
  std::string prev_label;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& t = toks[i];
    auto it = t.misc.find("Chunk");
    if (it == t.misc.end())
      throw Error(ErrorCode::kParse, where + "token " + std::to_string(t.id) + " has no Chunk item");
    const std::string& label = it->second;
    if (i == 0 || label != prev_label) {
      if (seen.count(label))
        throw Error(ErrorCode::kParse,
                    where + "tokens of chunk " + label + " are not contiguous");
      seen[label] = static_cast<int>(s.chunks.size());
      s.chunks.emplace_back();
      role_seen.push_back(false);
    }
    prev_label = label;
    const int ci = seen[label];
    chunk_of[t.id] = ci;

    Chunk& chunk = s.chunks[ci];
    Token tok;
    tok.surface = t.form;
    tok.pos = t.upos;
    if (auto p = t.misc.find("Particle"); p != t.misc.end()) {
      if (p->second != "_") tok.particle = p->second;
    } else if (t.upos == "ADP") {
      tok.particle = t.form;
    }
    if (auto sem = t.misc.find("Sem"); sem != t.misc.end())
      for (const auto& tag : split(sem->second, ','))
        if (!tag.empty()) tok.semantic_tags.insert(tag);
    if (auto r = t.misc.find("Role"); r != t.misc.end() && !role_seen[ci]) {
      auto role = parse_case_role(r->second);
      if (!role) throw Error(ErrorCode::kParse, where + "unknown Role '" + r->second + "'");
      chunk.case_role = *role;
      role_seen[ci] = true;
    }
    if (auto a = t.misc.find("AdvType"); a != t.misc.end()) {
      auto type = parse_adverb_type(a->second);
      if (!type) throw Error(ErrorCode::kParse, where + "unknown AdvType '" + a->second + "'");
      chunk.adverb_type = type;
    }
    chunk.tokens.push_back(std::move(tok));
  }

  // Chunk head: the chunk of the head of the (last) token that points
  // outside its own chunk. No such token means ROOT.
  for (auto& c : s.chunks) c.head = kRootHead;
  for (const auto& t : toks) {
    const int ci = chunk_of[t.id];
    if (t.head == 0) {
      s.chunks[ci].head = kRootHead;
      continue;
    }
    if (t.head < 1 || t.head >= static_cast<int>(chunk_of.size()) || chunk_of[t.head] < 0)
      throw Error(ErrorCode::kParse, where + "token " + std::to_string(t.id) + " head out of range");
    const int hc = chunk_of[t.head];
    if (hc != ci) s.chunks[ci].head = hc;
  }
  return s;
}

}  // namespace

std::vector<Sentence> read_conllu(std::istream& in, std::string_view source_name) {
  std::vector<Sentence> out;
  std::vector<ConlluToken> toks;
  std::string id;
  std::optional<std::string> verb_lemma;
  std::size_t lineno = 0, start_line = 1;

  auto flush = [&]() {
    if (toks.empty()) {
      id.clear();
      verb_lemma.reset();
      return;
    }
    const std::string where =
        std::string(source_name) + ":" + std::to_string(start_line) + ": ";
    if (id.empty()) id = "conllu-" + std::to_string(out.size() + 1);
    Sentence s = build_conllu_sentence(toks, id, verb_lemma, where);
    try {
      validate(s);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvariant, where + e.what());
    }
    out.push_back(std::move(s));
    toks.clear();
    id.clear();
    verb_lemma.reset();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush();
      start_line = lineno + 1;
      continue;
    }
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(line.substr(1, eq - 1));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "sent_id") id = value;
      if (key == "verb_lemma") verb_lemma = value;
      continue;
    }
    const auto cols = split(line, '\t');
    const std::string where = std::string(source_name) + ":" + std::to_string(lineno) + ": ";
    if (cols.size() != 10)
      throw Error(ErrorCode::kParse, where + "expected 10 tab-separated columns, got " +
                                         std::to_string(cols.size()));
    // Multiword ranges (1-2) and empty nodes (1.1) carry no chunk structure.
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    ConlluToken t;
    try {
      t.id = std::stoi(cols[0]);
      t.head = cols[6] == "_" ? 0 : std::stoi(cols[6]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, where + "non-numeric ID or HEAD");
    }
    if (t.id != static_cast<int>(toks.size()) + 1)
      throw Error(ErrorCode::kParse, where + "token ids must be consecutive from 1");
    t.form = cols[1];
    t.upos = cols[3];
    t.misc = parse_misc(cols[9]);
    toks.push_back(std::move(t));
  }
  flush();
  return out;
}

std::vector<Sentence> import_conllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return read_conllu(in, path.string());
}

// --- filtering ---------------------------------------------------------------

std::vector<std::string> FilterCriteria::default_forbidden_symbols() {
  return {"(", ")", "（", "）", "[", "]", "［", "］", "{", "}", "｛", "｝",
          "【", "】", "〔", "〕", "〈", "〉", "《", "》", "「", "」", "『", "』"};
}

bool is_verb_pos(std::string_view pos) { return pos_in(pos, {"verb", "動詞"}); }

bool is_adverb_pos(std::string_view pos) { return pos_in(pos, {"adv", "adverb", "副詞"}); }

bool is_conjunction_pos(std::string_view pos) {
  return pos_in(pos, {"conj", "cconj", "sconj", "conjunction", "接続詞"});
}

int count_clauses(const Sentence& s) {
  int clauses = 0;
  for (const Chunk& c : s.chunks) {
    const bool verbal = std::any_of(c.tokens.begin(), c.tokens.end(),
                                    [](const Token& t) { return is_verb_pos(t.pos); });
    if (c.case_role == CaseRole::kPredicate || verbal) ++clauses;
  }
  return clauses;
}

bool satisfies(const Sentence& s, const FilterCriteria& criteria) {
  if (s.chunks.empty()) return false;
  if (count_clauses(s) > criteria.max_clauses) return false;
  if (criteria.require_single_predicate && s.find_role(CaseRole::kPredicate).size() != 1)
    return false;
  if (criteria.require_sibling_chunks_with_particle_or_adverb) {
    bool found = false;
    for (std::size_t i = 0; i < s.chunks.size() && !found; ++i) {
      int marked = 0;
      for (std::size_t k : s.children(i)) {
        const Chunk& c = s.chunks[k];
        const bool adverb =
            c.case_role == CaseRole::kAdverb ||
            std::any_of(c.tokens.begin(), c.tokens.end(),
                        [](const Token& t) { return is_adverb_pos(t.pos); });
        if (c.particle() || adverb) ++marked;
      }
      found = marked >= 2;
    }
    if (!found) return false;
  }
  if (!criteria.forbid_symbols.empty()) {
    const std::string text = render_text(s);
    for (const auto& sym : criteria.forbid_symbols)
      if (!sym.empty() && text.find(sym) != std::string::npos) return false;
  }
  if (criteria.forbid_backward_dependency) {
    for (std::size_t i = 0; i < s.chunks.size(); ++i)
      if (!s.chunks[i].is_root() && s.chunks[i].head < static_cast<int>(i)) return false;
  }
  if (criteria.require_final_predicate_root) {
    const Chunk& last = s.chunks.back();
    if (!last.is_root() || last.case_role != CaseRole::kPredicate) return false;
  }
  return true;
}

std::vector<Sentence> filter_sentences(std::span<const Sentence> sentences,
                                       const FilterCriteria& criteria) {
  std::vector<Sentence> out;
  for (const Sentence& s : sentences)
    if (satisfies(s, criteria)) out.push_back(s);
  return out;
}

std::string render_text(const Sentence& s, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < s.chunks.size(); ++i) {
    if (i) out += separator;
    out += s.chunks[i].surface();
  }
  return out;
}

std::string render_units(const Sentence& s) {
  std::string out;
  for (const Chunk& c : s.chunks)
    for (const Token& t : c.tokens) {
      if (!out.empty()) out += ' ';
      out += t.surface;
    }
  return out;
}

// --- preference pairs --------------------------------------------------------

std::string_view to_string(PreferenceLabel label) {
  switch (label) {
    case PreferenceLabel::kPrefer1: return "PREFER1";
    case PreferenceLabel::kPrefer2: return "PREFER2";
    case PreferenceLabel::kBroken: return "BROKEN";
  }
  return "BROKEN";
}

std::optional<PreferenceLabel> parse_preference_label(std::string_view text) {
  if (text == "PREFER1") return PreferenceLabel::kPrefer1;
  if (text == "PREFER2") return PreferenceLabel::kPrefer2;
  if (text == "BROKEN") return PreferenceLabel::kBroken;
  return std::nullopt;
}

std::optional<PreferenceLabel> gold_label(std::span<const PreferenceLabel> labels) {
  if (labels.empty()) return std::nullopt;
  std::size_t first = 0, second = 0;
  for (auto l : labels) {
    if (l == PreferenceLabel::kBroken) return std::nullopt;
    (l == PreferenceLabel::kPrefer1 ? first : second) += 1;
  }
  const std::size_t needed = (9 * labels.size() + 9) / 10;  // ceil(0.9 n)
  if (first >= needed) return PreferenceLabel::kPrefer1;
  if (second >= needed) return PreferenceLabel::kPrefer2;
  return std::nullopt;
}

namespace {

std::multiset<std::string> chunk_surfaces(const Sentence& s) {
  std::multiset<std::string> out;
  for (const auto& c : s.chunks) out.insert(c.surface());
  return out;
}

}  // namespace

std::vector<PreferencePair> read_preference_pairs(std::istream& in, std::string_view source_name) {
  std::vector<PreferencePair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(lineno) + ": ";
    PreferencePair p;
    try {
      const auto v = nlohmann::json::parse(line);
      p.id = v.at("id").get<std::string>();
      p.order1 = sentence_from_json(v.at("order1"));
      p.order2 = sentence_from_json(v.at("order2"));
      for (const auto& l : v.at("labels")) {
        const auto name = l.get<std::string>();
        auto label = parse_preference_label(name);
        if (!label) throw Error(ErrorCode::kParse, "unknown label '" + name + "'");
        p.worker_labels.push_back(*label);
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
    try {
      validate(p.order1);
      validate(p.order2);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvariant, where + e.what());
    }
    if (chunk_surfaces(p.order1) != chunk_surfaces(p.order2))
      throw Error(ErrorCode::kInvariant,
                  where + "pair '" + p.id + "': order1 and order2 differ in chunk multiset");
    p.gold = gold_label(p.worker_labels);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PreferencePair> load_preference_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return read_preference_pairs(in, path.string());
}

nlohmann::json to_json(const PreferencePair& p) {
  nlohmann::json labels = nlohmann::json::array();
  for (auto l : p.worker_labels) labels.push_back(to_string(l));
  return {{"id", p.id}, {"order1", to_json(p.order1)}, {"order2", to_json(p.order2)},
          {"labels", std::move(labels)}};
}

}  // namespace gojun
