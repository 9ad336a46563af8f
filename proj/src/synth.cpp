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

#include "gojun/synth.hpp"

#include <algorithm>
#include <fstream>

#include "gojun/error.hpp"
#include "gojun/random.hpp"

namespace gojun {

namespace {

[[noreturn]] void bad_spec(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "grammar spec: " + what);
}

CaseRole role_key(const std::string& text) {
  auto r = parse_case_role(text);
  if (!r) bad_spec("unknown role " + text);
  return *r;
}

}  // namespace

void GrammarSpec::validate() const {
  if (roles.size() < 2) bad_spec("needs at least two roles");
  std::set<CaseRole> seen;
  for (CaseRole r : roles) {
    if (r == CaseRole::kPredicate || r == CaseRole::kOther)
      bad_spec("role " + std::string(to_string(r)) + " cannot be an argument");
    if (!seen.insert(r).second) bad_spec("duplicate role " + std::string(to_string(r)));
    auto v = vocab.find(r);
    if (v == vocab.end() || v->second.empty())
      bad_spec("empty vocabulary for " + std::string(to_string(r)));
    for (const SynthNoun& n : v->second) {
      if (n.stem.empty()) bad_spec("empty stem for " + std::string(to_string(r)));
      if (r == CaseRole::kAdverb && !n.adverb_type)
        bad_spec("adverb " + n.stem + " lacks adverb_type");
      if (r != CaseRole::kAdverb && n.adverb_type)
        bad_spec("adverb_type on non-adverb " + n.stem);
    }
    if (r != CaseRole::kAdverb) {
      auto p = particles.find(r);
      if (p == particles.end() || p->second.empty())
        bad_spec("no particle for " + std::string(to_string(r)));
    }
  }
  if (verbs.empty()) bad_spec("no verbs");
  for (const auto& v : verbs)
    if (v.empty()) bad_spec("empty verb lemma");
  if (!(order_adherence >= 0.5 && order_adherence <= 1.0))
    bad_spec("order_adherence must lie in [0.5, 1]");
  int present = 0;
  for (CaseRole r : roles) {
    auto it = omission_prob.find(r);
    const double p = it == omission_prob.end() ? 0.0 : it->second;
    if (!(p >= 0.0 && p <= 1.0)) bad_spec("omission_prob must lie in [0, 1]");
    if (p < 1.0) ++present;
  }
  for (const auto& [r, p] : omission_prob)
    if (!seen.count(r)) bad_spec("omission_prob for unlisted role " + std::string(to_string(r)));
  if (present < 2) bad_spec("at least two roles must have omission_prob < 1");
}

GrammarSpec GrammarSpec::from_json(const nlohmann::json& j) {
  GrammarSpec spec;
  try {
    if (!j.is_object()) bad_spec("not a JSON object");
    for (const auto& r : j.at("roles")) spec.roles.push_back(role_key(r.get<std::string>()));
    for (const auto& [key, list] : j.at("vocab").items()) {
      auto& out = spec.vocab[role_key(key)];
      for (const auto& e : list) {
        SynthNoun n;
        if (e.is_string()) {
          n.stem = e.get<std::string>();
        } else {
          n.stem = e.at("stem").get<std::string>();
          if (e.contains("sem"))
            for (const auto& t : e["sem"]) n.semantic_tags.insert(t.get<std::string>());
          if (e.contains("adverb_type")) {
            const auto text = e["adverb_type"].get<std::string>();
            n.adverb_type = parse_adverb_type(text);
            if (!n.adverb_type) bad_spec("unknown adverb_type " + text);
          }
        }
        out.push_back(std::move(n));
      }
    }
    if (j.contains("particles"))
      for (const auto& [key, p] : j["particles"].items())
        spec.particles[role_key(key)] = p.get<std::string>();
    spec.verbs = j.at("verbs").get<std::vector<std::string>>();
    spec.order_adherence = j.value("order_adherence", 1.0);
    if (j.contains("omission_prob"))
      for (const auto& [key, p] : j["omission_prob"].items())
        spec.omission_prob[role_key(key)] = p.get<double>();
    spec.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    bad_spec(e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json GrammarSpec::to_json() const {
  nlohmann::json j;
  j["roles"] = nlohmann::json::array();
  for (CaseRole r : roles) j["roles"].push_back(to_string(r));
  j["vocab"] = nlohmann::json::object();
  for (const auto& [r, list] : vocab) {
    auto& out = j["vocab"][std::string(to_string(r))];
    out = nlohmann::json::array();
    for (const auto& n : list) {
      if (n.semantic_tags.empty() && !n.adverb_type) {
        out.push_back(n.stem);
        continue;
      }
      nlohmann::json e{{"stem", n.stem}};
      if (!n.semantic_tags.empty()) e["sem"] = n.semantic_tags;
      if (n.adverb_type) e["adverb_type"] = to_string(*n.adverb_type);
      out.push_back(e);
    }
  }
  j["particles"] = nlohmann::json::object();
  for (const auto& [r, p] : particles) j["particles"][std::string(to_string(r))] = p;
  j["verbs"] = verbs;
  j["order_adherence"] = order_adherence;
  j["omission_prob"] = nlohmann::json::object();
  for (const auto& [r, p] : omission_prob) j["omission_prob"][std::string(to_string(r))] = p;
  j["seed"] = seed;
  return j;
}

GrammarSpec GrammarSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return from_json(j);
}

GrammarSpec GrammarSpec::standard(double order_adherence, std::uint64_t seed) {
  GrammarSpec spec;
  spec.roles = {CaseRole::kTim, CaseRole::kLoc, CaseRole::kNom, CaseRole::kDat, CaseRole::kAcc};
  const std::map<CaseRole, std::vector<std::string>> stems = {
      {CaseRole::kTim, {"あい", "うえ", "おあ", "いう", "えお", "あお"}},
      {CaseRole::kLoc, {"かき", "くけ", "こか", "きく", "けこ", "かこ"}},
      {CaseRole::kNom, {"さし", "すせ", "そさ", "しす", "せそ", "さそ"}},
      {CaseRole::kDat, {"たち", "つて", "とた", "ちつ", "てと", "たと"}},
      {CaseRole::kAcc, {"まみ", "むめ", "もま", "みむ", "めも", "まも"}},
  };
  for (const auto& [r, list] : stems)
    for (const auto& s : list) spec.vocab[r].push_back({s, {}, std::nullopt});
  spec.particles = {{CaseRole::kTim, "に"},
                    {CaseRole::kLoc, "で"},
                    {CaseRole::kNom, "が"},
                    {CaseRole::kDat, "に"},
                    {CaseRole::kAcc, "を"}};
  spec.verbs = {"らる", "りる", "れる", "ろる"};
  spec.order_adherence = order_adherence;
  spec.seed = seed;
  return spec;
}

namespace {

Chunk argument_chunk(CaseRole role, const SynthNoun& noun, const GrammarSpec& spec, int head) {
  Chunk c;
  c.head = head;
  c.case_role = role;
  Token stem;
  stem.surface = noun.stem;
  stem.pos = role == CaseRole::kAdverb ? "adverb" : "noun";
  stem.semantic_tags = noun.semantic_tags;
  c.tokens.push_back(std::move(stem));
  auto p = spec.particles.find(role);
  if (p != spec.particles.end() && !p->second.empty()) {
    Token particle;
    particle.surface = p->second;
    particle.pos = "particle";
    particle.particle = p->second;
    c.tokens.push_back(std::move(particle));
  }
  c.adverb_type = noun.adverb_type;
  return c;
}

}  // namespace

std::vector<Sentence> generate_corpus(const GrammarSpec& spec, std::size_t n) {
  spec.validate();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "generate_corpus: n must be >= 1");
  std::vector<Sentence> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(spec.seed, i));
    const std::string& verb = spec.verbs[rng.uniform_index(spec.verbs.size())];
    std::vector<CaseRole> present;
    do {
      present.clear();
      for (CaseRole r : spec.roles) {
        auto it = spec.omission_prob.find(r);
        const double p = it == spec.omission_prob.end() ? 0.0 : it->second;
        if (!rng.bernoulli(p)) present.push_back(r);
      }
    } while (present.size() < 2);
    if (!rng.bernoulli(spec.order_adherence)) {
      const std::size_t j = rng.uniform_index(present.size() - 1);
      std::swap(present[j], present[j + 1]);
    }
    Sentence s;
    s.id = "synth-" + std::to_string(spec.seed) + "-" + std::to_string(i);
    s.verb_lemma = verb;
    const int predicate = static_cast<int>(present.size());
    for (CaseRole r : present) {
      const auto& words = spec.vocab.at(r);
      s.chunks.push_back(argument_chunk(r, words[rng.uniform_index(words.size())], spec, predicate));
    }
    Chunk pred;
    pred.case_role = CaseRole::kPredicate;
    pred.tokens.push_back({verb, "verb", std::nullopt, {}});
    s.chunks.push_back(std::move(pred));
    out.push_back(std::move(s));
  }
  return out;
}

bool is_canonical(const Sentence& s, const GrammarSpec& spec) {
  std::size_t cursor = 0;
  for (const Chunk& c : s.chunks) {
    if (c.case_role == CaseRole::kPredicate) continue;
    auto it = std::find(spec.roles.begin() + static_cast<std::ptrdiff_t>(cursor), spec.roles.end(),
                        c.case_role);
    if (it == spec.roles.end()) return false;
    cursor = static_cast<std::size_t>(it - spec.roles.begin()) + 1;
  }
  return true;
}

}  // namespace gojun
