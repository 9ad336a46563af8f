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

#include "gojun/transform.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gojun/error.hpp"
#include "gojun/random.hpp"
#include "gojun/text.hpp"

namespace gojun {

ParticleRules ParticleRules::standard() {
  ParticleRules rules;
  rules.add("が", RewriteAction::kDeleteThenAppend);
  rules.add("を", RewriteAction::kDeleteThenAppend);
  rules.add("に", RewriteAction::kKeepThenAppend);
  rules.add("で", RewriteAction::kKeepThenAppend);
  return rules;
}

void ParticleRules::add(std::string original, RewriteAction action) {
  for (auto& e : entries_)
    if (e.first == original) {
      e.second = action;
      return;
    }
  entries_.emplace_back(std::move(original), action);
}

bool ParticleRules::supports(std::string_view original) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == original; });
}

ParticleRewriteRule ParticleRules::rule_for(std::string_view original,
                                            std::string_view appended) const {
  if (appended.empty())
    throw Error(ErrorCode::kInvalidArgument, "appended particle must be non-empty");
  for (const auto& [orig, action] : entries_)
    if (orig == original) return {orig, action, std::string(appended)};
  throw Error(ErrorCode::kUnsupportedParticle,
              "no rewrite rule for particle '" + std::string(original) + "'");
}

std::string apply_rule(const ParticleRewriteRule& rule) {
  return rule.action == RewriteAction::kDeleteThenAppend
             ? rule.appended_particle
             : rule.original_particle + rule.appended_particle;
}

std::vector<std::string> default_adverbial_particles() { return {"は", "こそ", "も", "だけ"}; }

void validate(const VariantSet& set) {
  std::set<std::string> labels;
  for (const auto& v : set.variants)
    if (!labels.insert(v.label).second)
      throw Error(ErrorCode::kInvariant, "duplicate variant label '" + v.label + "'");
}

std::vector<std::size_t> subtree(const Sentence& s, std::size_t index) {
  std::vector<std::size_t> out;
  const std::size_t n = s.chunks.size();
  for (std::size_t j = 0; j < n; ++j) {
    int cur = static_cast<int>(j);
    for (std::size_t steps = 0; cur != kRootHead && steps <= n; ++steps) {
      if (cur == static_cast<int>(index)) {
        out.push_back(j);
        break;
      }
      cur = s.chunks[cur].head;
    }
  }
  return out;
}

Sentence reorder(const Sentence& s, std::span<const std::size_t> order) {
  const std::size_t n = s.chunks.size();
  if (order.size() != n)
    throw Error(ErrorCode::kInvalidArgument, "reorder: order length differs from chunk count");
  std::vector<int> new_pos(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    if (order[p] >= n || new_pos[order[p]] != -1)
      throw Error(ErrorCode::kInvalidArgument, "reorder: not a permutation");
    new_pos[order[p]] = static_cast<int>(p);
  }
  Sentence out;
  out.id = s.id;
  out.verb_lemma = s.verb_lemma;
  out.chunks.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    Chunk c = s.chunks[order[p]];
    if (!c.is_root()) c.head = new_pos[c.head];
    out.chunks.push_back(std::move(c));
  }
  return out;
}

namespace {

bool is_contiguous(const std::vector<std::size_t>& block) {
  return !block.empty() && block.back() - block.front() + 1 == block.size();
}

}  // namespace

Sentence permute_children(const Sentence& s, std::size_t site,
                          std::span<const std::size_t> perm) {
  const auto kids = s.children(site);
  if (perm.size() != kids.size())
    throw Error(ErrorCode::kInvalidArgument, "permutation size differs from child count");
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<int> block_at(s.chunks.size(), -1);  // block index starting at position
  std::vector<bool> in_block(s.chunks.size(), false);
  for (std::size_t j = 0; j < kids.size(); ++j) {
    auto block = subtree(s, kids[j]);
    if (!is_contiguous(block))
      throw Error(ErrorCode::kNotMovable, "sentence '" + s.id + "': subtree of chunk " +
                                              std::to_string(kids[j]) + " is not contiguous");
    block_at[block.front()] = static_cast<int>(j);
    for (auto p : block) in_block[p] = true;
    blocks.push_back(std::move(block));
  }
  // Walk the sentence treating each child block as one slot; slot j is filled
  // with the block of child perm[j].
  std::vector<std::size_t> order;
  order.reserve(s.chunks.size());
  std::size_t slot = 0;
  for (std::size_t p = 0; p < s.chunks.size(); ++p) {
    if (block_at[p] >= 0) {
      const auto& chosen = blocks.at(perm[slot++]);
      order.insert(order.end(), chosen.begin(), chosen.end());
    } else if (!in_block[p]) {
      order.push_back(p);
    }
  }
  return reorder(s, order);
}

Sentence scramble(const Sentence& s, std::uint64_t seed) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < s.chunks.size(); ++i) {
    const auto kids = s.children(i);
    if (kids.size() < 2) continue;
    const bool movable = std::all_of(kids.begin(), kids.end(), [&](std::size_t k) {
      return is_contiguous(subtree(s, k));
    });
    if (movable) sites.push_back(i);
  }
  if (sites.empty())
    throw Error(ErrorCode::kNoScrambleSite, "sentence '" + s.id + "' has no chunk with >= 2 children");
  Rng rng(seed);
  const std::size_t site = sites[rng.uniform_index(sites.size())];
  std::vector<std::size_t> perm(s.children(site).size());
  std::iota(perm.begin(), perm.end(), 0);
  const auto identity = perm;
  // Rejection keeps the draw uniform over the k! - 1 non-identity orders.
  do {
    rng.shuffle(perm);
  } while (perm == identity);
  return permute_children(s, site, perm);
}

std::string permutation_label(std::span<const std::size_t> perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm.size() > 9 && i) out += ',';
    out += std::to_string(perm[i] + 1);
  }
  return out;
}

void check_order_cap(std::size_t children, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::uint64_t i = 2; i <= children; ++i) {
    if (count > cap / i) {
      count = cap + 1;
      break;
    }
    count *= i;
  }
  if (count > cap)
    throw TooManyOrders(static_cast<int>(children),
                        "site with " + std::to_string(children) + " children exceeds cap " +
                            std::to_string(cap));
}

VariantSet enumerate_orders(const Sentence& s, std::size_t site, std::uint64_t cap) {
  if (site >= s.chunks.size())
    throw Error(ErrorCode::kInvalidArgument, "site index out of range");
  const auto kids = s.children(site);
  const std::size_t k = kids.size();
  if (k < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "site " + std::to_string(site) + " has fewer than 2 children");
  check_order_cap(k, cap);
  VariantSet set;
  set.base = s;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    set.variants.push_back({permutation_label(perm), permute_children(s, site, perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return set;
}

std::size_t unique_role(const Sentence& s, CaseRole role) {
  const auto found = s.find_role(role);
  if (found.size() != 1)
    throw Error(ErrorCode::kRoleNotUnique, "sentence '" + s.id + "' has " +
                                               std::to_string(found.size()) + " " +
                                               std::string(to_string(role)) + " chunks");
  return found.front();
}

Sentence swap_cases(const Sentence& s, CaseRole role_a, CaseRole role_b) {
  const std::size_t a = unique_role(s, role_a);
  const std::size_t b = unique_role(s, role_b);
  if (s.chunks[a].head != s.chunks[b].head || s.chunks[a].is_root())
    throw Error(ErrorCode::kRoleNotUnique, "sentence '" + s.id + "': " +
                                               std::string(to_string(role_a)) + " and " +
                                               std::string(to_string(role_b)) +
                                               " are not siblings");
  const auto kids = s.children(static_cast<std::size_t>(s.chunks[a].head));
  std::vector<std::size_t> perm(kids.size());
  std::iota(perm.begin(), perm.end(), 0);
  const auto ia = std::find(kids.begin(), kids.end(), a) - kids.begin();
  const auto ib = std::find(kids.begin(), kids.end(), b) - kids.begin();
  std::swap(perm[ia], perm[ib]);
  return permute_children(s, static_cast<std::size_t>(s.chunks[a].head), perm);
}

Sentence move_to_front(const Sentence& s, std::size_t index) {
  if (index >= s.chunks.size() || s.chunks[index].is_root())
    throw Error(ErrorCode::kNotMovable, "sentence '" + s.id + "': cannot move chunk " +
                                            std::to_string(index));
  const auto block = subtree(s, index);
  if (!is_contiguous(block))
    throw Error(ErrorCode::kNotMovable, "sentence '" + s.id + "': subtree of chunk " +
                                            std::to_string(index) + " is not contiguous");
  if (block.front() == 0) return s;
  std::vector<std::size_t> order(block);
  for (std::size_t p = 0; p < s.chunks.size(); ++p)
    if (p < block.front() || p > block.back()) order.push_back(p);
  Sentence out = reorder(s, order);
  if (descendants_contiguous(s) && !descendants_contiguous(out))
    throw Error(ErrorCode::kNotMovable, "sentence '" + s.id + "': fronting chunk " +
                                            std::to_string(index) + " splits an ancestor's span");
  return out;
}

Sentence rewrite_particle(const Sentence& s, std::size_t index, std::string_view appended,
                          const ParticleRules& rules) {
  Sentence out = s;
  Token& last = out.chunks.at(index).tokens.back();
  if (!last.particle)
    throw Error(ErrorCode::kUnsupportedParticle,
                "sentence '" + s.id + "': chunk " + std::to_string(index) + " has no particle");
  const auto rule = rules.rule_for(*last.particle, appended);
  const std::string replacement = apply_rule(rule);
  if (last.surface == *last.particle) {
    last.surface = replacement;
  } else if (ends_with(last.surface, *last.particle)) {
    last.surface = last.surface.substr(0, last.surface.size() - last.particle->size()) + replacement;
  } else {
    throw Error(ErrorCode::kUnsupportedParticle,
                "sentence '" + s.id + "': particle '" + *last.particle +
                    "' is not a suffix of token '" + last.surface + "'");
  }
  last.particle = replacement;
  return out;
}

namespace {

void check_no_initial_conjunction(const Sentence& s) {
  if (s.chunks.empty()) return;
  const auto& first = s.chunks.front().tokens;
  if (!first.empty() && is_conjunction_pos(first.front().pos))
    throw Error(ErrorCode::kConjunctionInitial, "sentence '" + s.id + "' begins with a conjunction");
}

}  // namespace

Sentence topicalize(const Sentence& s, CaseRole role, const ParticleRules& rules) {
  const std::size_t index = unique_role(s, role);
  check_no_initial_conjunction(s);
  Sentence out = rewrite_particle(s, index, kTopicParticle, rules);
  out.chunks[index].case_role = CaseRole::kTop;
  return move_to_front(out, index);
}

Sentence substitute_adverbial_particle(const Sentence& s, CaseRole role,
                                       std::string_view particle, bool moved,
                                       const ParticleRules& rules,
                                       std::span<const std::string> allowed) {
  const auto defaults = default_adverbial_particles();
  if (allowed.empty()) allowed = defaults;
  if (std::find(allowed.begin(), allowed.end(), particle) == allowed.end())
    throw Error(ErrorCode::kInvalidArgument,
                "particle '" + std::string(particle) + "' is not a configured adverbial particle");
  const std::size_t index = unique_role(s, role);
  check_no_initial_conjunction(s);
  Sentence out = rewrite_particle(s, index, particle, rules);
  return moved ? move_to_front(out, index) : out;
}

}  // namespace gojun
